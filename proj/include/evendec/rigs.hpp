#pragma once

// Parity rigs, planted instances, and the lemma replay suites.
//
// A rig realizes a prescribed degree-parity signature on its core vertices by
// attaching pendant vertices; pendants live in the window but are never
// touched by the operation under test, which lets the suites quantify over
// the ambient parities exactly as the absorption lemmas do. All randomized
// constructions are counter-seeded and reproducible.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "evendec/engine.hpp"
#include "evendec/graph.hpp"
#include "evendec/patterns.hpp"
#include "evendec/randgraph.hpp"

namespace evendec {

namespace detail {

struct RigBuilder {
    int core_n;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> pendant_anchor;

    explicit RigBuilder(int n) : core_n(n) {}
    void edge(int u, int v) { edges.emplace_back(u, v); }
    // Flip the eventual degree parity of a core vertex.
    void pendant(int v) { pendant_anchor.push_back(v); }

    int core_degree(int v) const {
        int d = 0;
        for (auto [x, y] : edges) d += (x == v) + (y == v);
        return d;
    }
    // One pendant per core vertex whose current parity disagrees with the
    // requested one.
    void tune_parity(int v, int odd) {
        if ((core_degree(v) & 1) != odd) pendant(v);
    }
    Graph build() const {
        int n = core_n + static_cast<int>(pendant_anchor.size());
        Graph g(n);
        for (auto [u, v] : edges) g.add_edge(u, v);
        for (std::size_t i = 0; i < pendant_anchor.size(); ++i)
            g.add_edge(pendant_anchor[i], core_n + static_cast<int>(i));
        return g;
    }
};

struct RandStream {
    std::uint64_t seed;
    std::uint32_t stream;
    std::uint64_t ctr = 0;
    std::uint32_t next() { return counter_rand_u32(seed, stream, 0xB1D50000u, ctr++); }
    std::uint32_t below(std::uint32_t k) { return next() % k; }
    bool coin() { return next() >> 31; }
};

inline std::vector<int> random_permutation(int n, RandStream& rs) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(perm[static_cast<std::size_t>(i)], perm[rs.below(static_cast<std::uint32_t>(i + 1))]);
    return perm;
}

} // namespace detail

// ---- rigs for the P3 absorption stages ----

struct P3Rig {
    Graph g;
    VertexSet r; // path a-b-c-d on labels 0..3
    VertexSet c; // clique on labels 4..4+m-1
};

// sig: parity bits of (a,b,c,d), a high; every clique vertex is made odd.
inline P3Rig build_p3_rig(std::uint8_t sig, int m, bool complete_to_c) {
    detail::RigBuilder rb(4 + m);
    rb.edge(0, 1);
    rb.edge(1, 2);
    rb.edge(2, 3);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) rb.edge(4 + i, 4 + j);
    if (complete_to_c)
        for (int u = 0; u < 4; ++u)
            for (int i = 0; i < m; ++i) rb.edge(u, 4 + i);
    for (int u = 0; u < 4; ++u) rb.tune_parity(u, (sig >> (3 - u)) & 1);
    for (int i = 0; i < m; ++i) rb.tune_parity(4 + i, 1);
    P3Rig rig;
    rig.g = rb.build();
    rig.r = VertexSet::full(4);
    rig.c = VertexSet::full(4 + m) - rig.r;
    return rig;
}

// ---- rigs for vertex absorption ----

struct AbsorbVertexRig {
    Graph g;
    VertexSet a, b;
    int v = 0;
};

// A = [0, na), B = [na, na+nb), v = na+nb. cross_bits lays out the A-B
// bipartite pattern row-major; v_adj_bits marks v's neighbours in A then B;
// parity_bits requests parities for A, B, then v.
inline AbsorbVertexRig build_absorb_vertex_rig(int na, int nb, std::uint32_t cross_bits,
                                               std::uint32_t v_adj_bits, std::uint32_t parity_bits) {
    detail::RigBuilder rb(na + nb + 1);
    int v = na + nb;
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
            if ((cross_bits >> (i * nb + j)) & 1) rb.edge(i, na + j);
    for (int x = 0; x < na + nb; ++x)
        if ((v_adj_bits >> x) & 1) rb.edge(x, v);
    for (int x = 0; x <= na + nb; ++x) rb.tune_parity(x, (parity_bits >> x) & 1);
    AbsorbVertexRig rig;
    rig.g = rb.build();
    rig.a = VertexSet::full(na);
    rig.b = VertexSet::full(na + nb) - rig.a;
    rig.v = v;
    return rig;
}

// Every a in A needs an edge and a non-edge into B and vice versa.
inline bool absorb_cross_pattern_valid(int na, int nb, std::uint32_t cross_bits) {
    for (int i = 0; i < na; ++i) {
        int row = 0;
        for (int j = 0; j < nb; ++j) row += (cross_bits >> (i * nb + j)) & 1;
        if (row == 0 || row == nb) return false;
    }
    for (int j = 0; j < nb; ++j) {
        int col = 0;
        for (int i = 0; i < na; ++i) col += (cross_bits >> (i * nb + j)) & 1;
        if (col == 0 || col == na) return false;
    }
    return true;
}

// ---- rigs for clique absorption into an F copy ----

struct FRig {
    Graph g;
    VertexSet r; // labels 0..19, blocks (0..4|5..9) and (10..14|15..19)
    VertexSet c; // labels 20..20+m-1
};

// cross edges between R and C and all core parities drawn from the stream.
inline FRig build_f_rig(int m, detail::RandStream& rs, int cross_mode /*0 none, 1 complete, 2 random*/) {
    detail::RigBuilder rb(20 + m);
    for (int t = 0; t < 5; ++t)
        for (int s = 5; s < 10; ++s) {
            rb.edge(t, s);
            rb.edge(10 + t, 10 + s);
        }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) rb.edge(20 + i, 20 + j);
    for (int u = 0; u < 20; ++u)
        for (int i = 0; i < m; ++i) {
            bool put = cross_mode == 1 || (cross_mode == 2 && rs.coin());
            if (put) rb.edge(u, 20 + i);
        }
    for (int u = 0; u < 20 + m; ++u) rb.tune_parity(u, static_cast<int>(rs.next() & 1));
    FRig rig;
    rig.g = rb.build();
    rig.r = VertexSet::full(20);
    rig.c = VertexSet::full(20 + m) - rig.r;
    return rig;
}

// ---- independent replay checks ----

namespace detail {

struct ReplayCheck {
    bool ok = false;
    std::string why;
    VertexSet window;
};

// Self-contained step replay: raw adjacency loops, restricted to an allowed
// vertex set so pendants are provably untouched.
inline ReplayCheck replay_steps(const Graph& g, VertexSet w, const std::vector<VertexSet>& steps,
                                VertexSet allowed) {
    for (const VertexSet& s : steps) {
        if (s.empty()) return {false, "empty step", w};
        if (!s.subset_of(w)) return {false, "step outside window", w};
        if (!s.subset_of(allowed)) return {false, "step touches a protected vertex", w};
        long cross = 0;
        for (int u : s) {
            for (int x : g.neighbors(u)) {
                if (s.contains(x)) return {false, "step not independent", w};
                if (w.contains(x)) ++cross;
            }
        }
        if (cross % 2 != 0) return {false, "odd cross edge count", w};
        w = w - s;
    }
    return {true, "", w};
}

inline bool odd_clique_in_window(const Graph& g, VertexSet w, VertexSet s) {
    if (!is_clique(g, s)) return false;
    for (int v : s)
        if (degree_in(g, w, v) % 2 == 0) return false;
    return true;
}

} // namespace detail

// ---- lemma suites ----

struct LemmaCaseResult {
    std::string name;
    bool pass = false;
    long rigs = 0;
    std::string detail;
};

namespace detail {

inline std::string sig_name(std::uint8_t sig) {
    std::string s;
    for (int i = 3; i >= 0; --i) s += ((sig >> i) & 1) ? 'o' : 'e';
    return s;
}

inline void suite_absorb_vertex(std::vector<LemmaCaseResult>& out) {
    for (auto [na, nb] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}, std::pair{3, 3}}) {
        LemmaCaseResult res;
        res.name = "absorb-vertex/A" + std::to_string(na) + "B" + std::to_string(nb);
        res.pass = true;
        std::uint32_t cross_max = 1u << (na * nb);
        std::uint32_t adj_max = 1u << (na + nb);
        std::uint32_t par_max = 1u << (na + nb + 1);
        for (std::uint32_t cross = 0; cross < cross_max && res.pass; ++cross) {
            if (!absorb_cross_pattern_valid(na, nb, cross)) continue;
            for (std::uint32_t adj = 0; adj < adj_max && res.pass; ++adj) {
                for (std::uint32_t par = 0; par < par_max && res.pass; ++par) {
                    AbsorbVertexRig rig = build_absorb_vertex_rig(na, nb, cross, adj, par);
                    ++res.rigs;
                    AbsorbVertexResult r = absorb_vertex(rig.g, rig.g.vertices(), rig.a, rig.b, rig.v);
                    if (!r.ok) {
                        res.pass = false;
                        res.detail = "absorb failed (" + r.condition + ")";
                        break;
                    }
                    VertexSet allowed = rig.a | rig.b | VertexSet::single(rig.v);
                    auto rc = replay_steps(rig.g, rig.g.vertices(), r.steps, allowed);
                    if (!rc.ok) {
                        res.pass = false;
                        res.detail = rc.why;
                        break;
                    }
                    if (rc.window.contains(rig.v)) {
                        res.pass = false;
                        res.detail = "v not removed";
                        break;
                    }
                    if ((rig.a - rc.window).count() > 2 || (rig.b - rc.window).count() > 2) {
                        res.pass = false;
                        res.detail = "more than two vertices removed from a side";
                        break;
                    }
                }
            }
        }
        out.push_back(std::move(res));
    }
}

inline void suite_absorb_f(std::vector<LemmaCaseResult>& out) {
    for (int m = 0; m <= 5; ++m) {
        LemmaCaseResult res;
        res.name = "absorb-F/m=" + std::to_string(m);
        res.pass = true;
        RandStream rs{0x157EB, static_cast<std::uint32_t>(m)};
        for (int variant = 0; variant < 42 && res.pass; ++variant) {
            int cross_mode = variant == 0 ? 0 : variant == 1 ? 1 : 2;
            FRig rig = build_f_rig(m, rs, cross_mode);
            ++res.rigs;
            AbsorbResult r = absorb_clique_with_F(rig.g, rig.g.vertices(), rig.r, rig.c);
            if (!r.ok) {
                res.pass = false;
                res.detail = "absorb failed (" + r.condition + ")";
                break;
            }
            auto rc = replay_steps(rig.g, rig.g.vertices(), r.steps, rig.r | rig.c);
            if (!rc.ok) {
                res.pass = false;
                res.detail = rc.why;
                break;
            }
            if (r.new_clique.count() > std::max(m - 1, 2)) {
                res.pass = false;
                res.detail = "terminal clique too large";
                break;
            }
            if (!r.new_clique.subset_of(rig.r | rig.c) || !odd_clique_in_window(rig.g, rc.window, r.new_clique)) {
                res.pass = false;
                res.detail = "terminal not an odd clique in the window";
                break;
            }
            if (((rig.r | rig.c) & rc.window) != r.new_clique) {
                res.pass = false;
                res.detail = "window keeps vertices beyond the terminal clique";
                break;
            }
        }
        out.push_back(std::move(res));
    }
}

inline void suite_p3_stage(std::vector<LemmaCaseResult>& out, bool dense, int stage) {
    const int m_lo = stage == 2 ? 2 : 0;
    const int m_hi = stage == 2 ? 5 : 2;
    for (std::uint8_t sig = 0; sig < 16; ++sig) {
        for (int m = m_lo; m <= m_hi; ++m) {
            LemmaCaseResult res;
            res.name = std::string(dense ? "dense" : "sparse") + "-stage" + std::to_string(stage) + "/" +
                       sig_name(sig) + "/m=" + std::to_string(m);
            res.rigs = 1;
            P3Rig rig = build_p3_rig(sig, m, /*complete_to_c=*/dense);
            AbsorbResult r;
            if (dense)
                r = stage == 2 ? p3_dense_stage2(rig.g, rig.g.vertices(), rig.r, rig.c)
                               : p3_dense_stage3(rig.g, rig.g.vertices(), rig.r, rig.c);
            else
                r = stage == 2 ? p3_sparse_stage2(rig.g, rig.g.vertices(), rig.r, rig.c)
                               : p3_sparse_stage3(rig.g, rig.g.vertices(), rig.r, rig.c);
            if (!r.ok) {
                res.detail = "stage failed (" + r.condition + ")";
                out.push_back(std::move(res));
                continue;
            }
            auto rc = replay_steps(rig.g, rig.g.vertices(), r.steps, rig.r | rig.c);
            if (!rc.ok) {
                res.detail = rc.why;
                out.push_back(std::move(res));
                continue;
            }
            bool post_ok = true;
            std::string why;
            if (stage == 2) {
                int cap = dense ? m - 1 : std::max(m - 1, 2);
                if (r.new_clique.count() > cap) {
                    post_ok = false;
                    why = "terminal clique too large";
                }
                if (post_ok && !r.new_clique.subset_of(rig.r | rig.c)) {
                    post_ok = false;
                    why = "terminal outside C and R";
                }
            } else {
                if (!(rig.c & rc.window).empty()) {
                    post_ok = false;
                    why = "clique not fully removed";
                }
                if (post_ok && (!r.new_clique.subset_of(rig.r) || r.new_clique.count() > 2)) {
                    post_ok = false;
                    why = "terminal not a small subset of R";
                }
            }
            if (post_ok && !odd_clique_in_window(rig.g, rc.window, r.new_clique)) {
                post_ok = false;
                why = "terminal not an odd clique in the window";
            }
            if (post_ok && ((rig.r | rig.c) & rc.window) != r.new_clique) {
                post_ok = false;
                why = "window keeps vertices beyond the terminal clique";
            }
            res.pass = post_ok;
            res.detail = why;
            out.push_back(std::move(res));
        }
    }
}

} // namespace detail

// The full replay suite behind the verify-lemmas subcommand.
inline std::vector<LemmaCaseResult> run_lemma_suite() {
    std::vector<LemmaCaseResult> out;
    detail::suite_absorb_vertex(out);
    detail::suite_absorb_f(out);
    detail::suite_p3_stage(out, /*dense=*/true, 2);
    detail::suite_p3_stage(out, /*dense=*/true, 3);
    detail::suite_p3_stage(out, /*dense=*/false, 2);
    detail::suite_p3_stage(out, /*dense=*/false, 3);
    return out;
}

// ---- planted instances -------------------------------------------------

struct PlantedUniform {
    Graph g;
    PatternPacking packing;
    int t = 0;
};

// t disjoint F gadgets, a clique of size < t wired to some filler, edge
// parity fixed on a reserved filler pair, then a random relabeling.
inline PlantedUniform planted_uniform_instance(std::uint64_t seed, std::uint32_t index) {
    detail::RandStream rs{seed, index};
    int t = 2 + static_cast<int>(rs.below(2));
    int m = static_cast<int>(rs.below(static_cast<std::uint32_t>(t)));
    int filler = t == 2 ? 2 + static_cast<int>(rs.below(8)) : 2;
    int n = 20 * t + m + filler; // <= 64


    Graph g(n);
    for (int gi = 0; gi < t; ++gi) {
        int base = 20 * gi;
        for (int x = 0; x < 5; ++x)
            for (int y = 5; y < 10; ++y) {
                g.add_edge(base + x, base + y);
                g.add_edge(base + 10 + x, base + 10 + y);
            }
    }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) g.add_edge(20 * t + i, 20 * t + j);
    // Random clique-to-filler edges, keeping the last two filler vertices
    // clean for the parity fix.
    for (int i = 0; i < m; ++i)
        for (int f = 20 * t + m; f < n - 2; ++f)
            if (rs.coin()) g.add_edge(20 * t + i, f);
    if (g.edge_count() % 2 != 0) g.add_edge(n - 2, n - 1);

    std::vector<int> perm = detail::random_permutation(n, rs);
    PlantedUniform out;
    out.g = relabel(g, perm);
    out.t = t;
    out.packing.pattern = Pattern::F;
    for (int gi = 0; gi < t; ++gi) {
        std::vector<int> tuple;
        for (int off = 0; off < 20; ++off) tuple.push_back(perm[static_cast<std::size_t>(20 * gi + off)]);
        out.packing.copies.push_back(std::move(tuple));
    }
    return out;
}

struct PlantedStaged {
    Graph g;
    DecomposeConfig cfg;
};

// Disjoint induced P3 paths plus small odd components under the degree cap;
// parity fixed on a reserved pair, then relabeled.
inline PlantedStaged planted_sparse_instance(std::uint64_t seed, std::uint32_t index) {
    detail::RandStream rs{seed, index};
    int k = 4 + static_cast<int>(rs.below(5));
    Graph base(64);
    int used = 0;
    for (int i = 0; i < k; ++i, used += 4) {
        base.add_edge(used, used + 1);
        base.add_edge(used + 1, used + 2);
        base.add_edge(used + 2, used + 3);
    }
    int extras = static_cast<int>(rs.below(3));
    for (int e = 0; e < extras; ++e) {
        switch (rs.below(3)) {
            case 0: // K4
                for (int i = 0; i < 4; ++i)
                    for (int j = i + 1; j < 4; ++j) base.add_edge(used + i, used + j);
                used += 4;
                break;
            case 1: // triangle
                base.add_edge(used, used + 1);
                base.add_edge(used + 1, used + 2);
                base.add_edge(used, used + 2);
                used += 3;
                break;
            default: // single edge
                base.add_edge(used, used + 1);
                used += 2;
                break;
        }
    }
    used += static_cast<int>(rs.below(6)); // isolated filler
    int n = used + 2;                      // reserved parity pair
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v : base.neighbors(u))
            if (u < v && v < n) g.add_edge(u, v);
    if (g.edge_count() % 2 != 0) g.add_edge(n - 2, n - 1);

    std::vector<int> perm = detail::random_permutation(n, rs);
    return {relabel(g, perm), DecomposeConfig{k, 5, 4, kDefaultPackingBudget}};
}

// Complement of (k disjoint P3 paths plus a perfect matching): a dense graph
// with small complement degree and k disjoint induced P3 copies.
inline PlantedStaged planted_dense_instance(std::uint64_t seed, std::uint32_t index) {
    detail::RandStream rs{seed, index};
    int n = 24 + 2 * static_cast<int>(rs.below(11));
    int k = 3 + static_cast<int>(rs.below(3));
    Graph comp(n);
    for (int i = 0; i < k; ++i) {
        int b = 4 * i;
        comp.add_edge(b, b + 1);
        comp.add_edge(b + 1, b + 2);
        comp.add_edge(b + 2, b + 3);
    }
    for (int v = 4 * k; v + 1 < n; v += 2) comp.add_edge(v, v + 1);
    Graph g = complement(comp);
    if (g.edge_count() % 2 != 0) {
        // Joining two matched complement pairs drops one edge of G.
        g.remove_edge(4 * k + 1, 4 * k + 2);
    }
    std::vector<int> perm = detail::random_permutation(n, rs);
    return {relabel(g, perm), DecomposeConfig{k, n - 1, 3, kDefaultPackingBudget}};
}

} // namespace evendec

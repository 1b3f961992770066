#pragma once

// Bitmask graph core: labeled simple graphs on at most 64 vertices.
//
// A Graph keeps one 64-bit adjacency row per vertex and a VertexSet is a
// bitmask over the same label space, so every predicate the decomposition
// machinery needs (parity, independence, degrees, cliques) is a handful of
// word operations. Graphs and vertex sets are plain values; share them
// freely between threads, never mutate a shared instance.

#include <array>
#include <bit>
#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace evendec {

inline constexpr int kMaxVertices = 64;

// Thrown when an input exceeds a documented size cap (exact oracles, DP caps).
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VertexSet {
    std::uint64_t bits = 0;

    constexpr VertexSet() = default;
    constexpr explicit VertexSet(std::uint64_t b) : bits(b) {}

    static constexpr VertexSet full(int n) {
        return VertexSet{n >= 64 ? ~0ull : ((1ull << n) - 1)};
    }
    static constexpr VertexSet single(int v) { return VertexSet{1ull << v}; }
    static VertexSet of(std::initializer_list<int> vs) {
        VertexSet s;
        for (int v : vs) s.bits |= 1ull << v;
        return s;
    }

    constexpr bool empty() const { return bits == 0; }
    constexpr int count() const { return std::popcount(bits); }
    constexpr bool contains(int v) const { return (bits >> v) & 1; }
    constexpr bool subset_of(VertexSet o) const { return (bits & ~o.bits) == 0; }
    // Lowest-numbered member; set must be non-empty.
    constexpr int lowest() const { return std::countr_zero(bits); }

    constexpr VertexSet with(int v) const { return VertexSet{bits | (1ull << v)}; }
    constexpr VertexSet without(int v) const { return VertexSet{bits & ~(1ull << v)}; }

    friend constexpr VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet{a.bits & b.bits}; }
    friend constexpr VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet{a.bits | b.bits}; }
    friend constexpr VertexSet operator^(VertexSet a, VertexSet b) { return VertexSet{a.bits ^ b.bits}; }
    // Set difference.
    friend constexpr VertexSet operator-(VertexSet a, VertexSet b) { return VertexSet{a.bits & ~b.bits}; }
    friend constexpr bool operator==(VertexSet a, VertexSet b) { return a.bits == b.bits; }
    friend constexpr bool operator!=(VertexSet a, VertexSet b) { return a.bits != b.bits; }

    struct iterator {
        std::uint64_t rest;
        int operator*() const { return std::countr_zero(rest); }
        iterator& operator++() {
            rest &= rest - 1;
            return *this;
        }
        bool operator!=(const iterator& o) const { return rest != o.rest; }
    };
    iterator begin() const { return {bits}; }
    iterator end() const { return {0}; }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(count()));
        for (int v : *this) out.push_back(v);
        return out;
    }
};

class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n) {
        if (n < 0 || n > kMaxVertices)
            throw std::invalid_argument("Graph: vertex count must be in [0, 64]");
    }

    static Graph from_edges(int n, std::initializer_list<std::pair<int, int>> edges) {
        Graph g(n);
        for (auto [u, v] : edges) g.add_edge(u, v);
        return g;
    }

    int vertex_count() const { return n_; }
    VertexSet vertices() const { return VertexSet::full(n_); }

    bool has_edge(int u, int v) const {
        assert(u >= 0 && u < n_ && v >= 0 && v < n_);
        return (adj_[static_cast<std::size_t>(u)] >> v) & 1;
    }
    void add_edge(int u, int v) {
        assert(u >= 0 && u < n_ && v >= 0 && v < n_);
        if (u == v) throw std::invalid_argument("Graph: no loops");
        adj_[static_cast<std::size_t>(u)] |= 1ull << v;
        adj_[static_cast<std::size_t>(v)] |= 1ull << u;
    }
    void remove_edge(int u, int v) {
        assert(u != v);
        adj_[static_cast<std::size_t>(u)] &= ~(1ull << v);
        adj_[static_cast<std::size_t>(v)] &= ~(1ull << u);
    }
    void toggle_edge(int u, int v) {
        assert(u != v);
        adj_[static_cast<std::size_t>(u)] ^= 1ull << v;
        adj_[static_cast<std::size_t>(v)] ^= 1ull << u;
    }

    VertexSet neighbors(int v) const { return VertexSet{adj_[static_cast<std::size_t>(v)]}; }
    int degree(int v) const { return std::popcount(adj_[static_cast<std::size_t>(v)]); }

    int edge_count() const {
        int twice = 0;
        for (int v = 0; v < n_; ++v) twice += std::popcount(adj_[static_cast<std::size_t>(v)]);
        return twice / 2;
    }

    // Symmetry and no-loop invariants; all bits >= n clear.
    bool well_formed() const {
        std::uint64_t space = VertexSet::full(n_).bits;
        for (int v = 0; v < n_; ++v) {
            std::uint64_t row = adj_[static_cast<std::size_t>(v)];
            if (row & ~space) return false;
            if ((row >> v) & 1) return false;
            for (int u : VertexSet{row})
                if (!((adj_[static_cast<std::size_t>(u)] >> v) & 1)) return false;
        }
        for (int v = n_; v < kMaxVertices; ++v)
            if (adj_[static_cast<std::size_t>(v)]) return false;
        return true;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        if (a.n_ != b.n_) return false;
        for (int v = 0; v < a.n_; ++v)
            if (a.adj_[static_cast<std::size_t>(v)] != b.adj_[static_cast<std::size_t>(v)]) return false;
        return true;
    }
    friend bool operator!=(const Graph& a, const Graph& b) { return !(a == b); }

private:
    int n_ = 0;
    std::array<std::uint64_t, kMaxVertices> adj_{};
};

// Number of edges of G[W].
inline int edges_in(const Graph& g, VertexSet w) {
    assert(w.subset_of(g.vertices()));
    int twice = 0;
    for (int v : w) twice += (g.neighbors(v) & w).count();
    return twice / 2;
}

// Parity of e(G[W]): popcount over masked rows, halved.
inline int edge_parity(const Graph& g, VertexSet w) {
    assert(w.subset_of(g.vertices()));
    int twice = 0;
    for (int v : w) twice += (g.neighbors(v) & w).count();
    return (twice >> 1) & 1;
}

// True iff no edge of G has both ends in S.
inline bool is_independent(const Graph& g, VertexSet s) {
    assert(s.subset_of(g.vertices()));
    for (int v : s)
        if (!(g.neighbors(v) & s).empty()) return false;
    return true;
}

// Degree of v inside the window W; v must belong to W.
inline int degree_in(const Graph& g, VertexSet w, int v) {
    assert(w.contains(v));
    return (g.neighbors(v) & w).count();
}

// Number of edges between disjoint sets S and T.
inline int edges_between(const Graph& g, VertexSet s, VertexSet t) {
    assert((s & t).empty());
    int total = 0;
    for (int v : s) total += (g.neighbors(v) & t).count();
    return total;
}

inline bool is_clique(const Graph& g, VertexSet s) {
    for (int v : s)
        if ((g.neighbors(v) & s) != s.without(v)) return false;
    return true;
}

namespace detail {

// Decision search for a clique of size k: branch and bound where candidates
// are pruned by a greedy colouring of the candidate set.
inline bool clique_search(const Graph& g, int need, VertexSet chosen_hint, VertexSet cands) {
    int have = chosen_hint.count();
    if (have >= need) return true;
    // Greedy colouring bound: peel independent classes off the candidate set.
    int classes = 0;
    {
        VertexSet rest = cands;
        while (!rest.empty() && have + classes < need) {
            VertexSet cls_avail = rest;
            while (!cls_avail.empty()) {
                int v = cls_avail.lowest();
                rest = rest.without(v);
                cls_avail = cls_avail.without(v) - g.neighbors(v);
            }
            ++classes;
        }
    }
    if (have + classes < need) return false;
    for (VertexSet rest = cands; !rest.empty();) {
        int v = rest.lowest();
        rest = rest.without(v);
        if (clique_search(g, need, chosen_hint.with(v), rest & g.neighbors(v))) return true;
        if (have + 1 + rest.count() < need) return false;
    }
    return false;
}

} // namespace detail

// True iff omega(G) >= k. Exact branch-and-bound with greedy-colouring pruning.
inline bool has_clique_of_size(const Graph& g, int k) {
    if (k <= 0) return true;
    if (k == 1) return g.vertex_count() >= 1;
    if (k > g.vertex_count()) return false;
    return detail::clique_search(g, k, VertexSet{}, g.vertices());
}

inline int clique_number(const Graph& g) {
    int k = 0;
    while (has_clique_of_size(g, k + 1)) ++k;
    return k;
}

// ---- construction helpers -------------------------------------------------

inline Graph complete_graph(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

// Complete bipartite graph with sides {0..a-1} and {a..a+b-1}.
inline Graph complete_bipartite(int a, int b) {
    Graph g(a + b);
    for (int u = 0; u < a; ++u)
        for (int v = a; v < a + b; ++v) g.add_edge(u, v);
    return g;
}

inline Graph path_graph(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

inline Graph cycle_graph(int n) {
    Graph g = path_graph(n);
    if (n >= 3) g.add_edge(n - 1, 0);
    return g;
}

inline Graph complement(const Graph& g) {
    int n = g.vertex_count();
    Graph h(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.has_edge(u, v)) h.add_edge(u, v);
    return h;
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
    int na = a.vertex_count(), nb = b.vertex_count();
    if (na + nb > kMaxVertices) throw std::invalid_argument("disjoint_union: too many vertices");
    Graph g(na + nb);
    for (int u = 0; u < na; ++u)
        for (int v : a.neighbors(u))
            if (u < v) g.add_edge(u, v);
    for (int u = 0; u < nb; ++u)
        for (int v : b.neighbors(u))
            if (u < v) g.add_edge(na + u, na + v);
    return g;
}

// Relabel: vertex v of g becomes perm[v].
inline Graph relabel(const Graph& g, const std::vector<int>& perm) {
    int n = g.vertex_count();
    assert(static_cast<int>(perm.size()) == n);
    Graph h(n);
    for (int u = 0; u < n; ++u)
        for (int v : g.neighbors(u))
            if (u < v) h.add_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
    return h;
}

} // namespace evendec

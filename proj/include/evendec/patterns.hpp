#pragma once

// Vertex-disjoint packings of the two absorber patterns: the induced path on
// four vertices (P3, three edges) and the gadget F, a disjoint union of two
// K_{5,5}s.
//
// The P3 search is a deterministic first-fit sweep over ordered 4-tuples in
// label order. The F search samples seed vertices with a fixed-seed counter
// generator and repairs each sample into a K_{5,5} block via neighborhood
// closure, then pairs blocks with no crossing edges; it is expected to pay
// off only on planted instances, where gadget copies actually exist.

#include <cstdint>
#include <vector>

#include "evendec/graph.hpp"
#include "evendec/randgraph.hpp"

namespace evendec {

enum class Pattern { P3, F };

struct PatternPacking {
    Pattern pattern = Pattern::P3;
    std::vector<std::vector<int>> copies; // pairwise vertex-disjoint tuples
    bool budget_exhausted = false;
};

// Tuple layout: path order a, b, c, d.
inline bool induces_p3(const Graph& g, const std::vector<int>& t) {
    if (t.size() != 4) return false;
    VertexSet seen;
    for (int v : t) {
        if (v < 0 || v >= g.vertex_count() || seen.contains(v)) return false;
        seen = seen.with(v);
    }
    return g.has_edge(t[0], t[1]) && g.has_edge(t[1], t[2]) && g.has_edge(t[2], t[3]) &&
           !g.has_edge(t[0], t[2]) && !g.has_edge(t[0], t[3]) && !g.has_edge(t[1], t[3]);
}

// Tuple layout: 20 vertices, the two K_{5,5} blocks in order, each block
// listing one side then the other.
inline bool induces_f(const Graph& g, const std::vector<int>& t) {
    if (t.size() != 20) return false;
    VertexSet all;
    for (int v : t) {
        if (v < 0 || v >= g.vertex_count() || all.contains(v)) return false;
        all = all.with(v);
    }
    for (int i = 0; i < 20; ++i) {
        for (int j = i + 1; j < 20; ++j) {
            bool same_block = (i / 10) == (j / 10);
            bool opposite_sides = same_block && (i % 10 / 5) != (j % 10 / 5);
            if (g.has_edge(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(j)]) != opposite_sides)
                return false;
        }
    }
    return true;
}

inline bool packing_valid(const Graph& g, const PatternPacking& p) {
    VertexSet used;
    for (const auto& t : p.copies) {
        for (int v : t)
            if (used.contains(v)) return false;
        bool ok = p.pattern == Pattern::P3 ? induces_p3(g, t) : induces_f(g, t);
        if (!ok) return false;
        for (int v : t) used = used.with(v);
    }
    return true;
}

inline constexpr std::size_t kDefaultPackingBudget = 1000000;

namespace detail {

inline PatternPacking find_p3_packing(const Graph& g, int target, std::size_t budget) {
    PatternPacking out;
    out.pattern = Pattern::P3;
    VertexSet used;
    int n = g.vertex_count();
    for (int b = 0; b < n && static_cast<int>(out.copies.size()) < target; ++b) {
        if (used.contains(b)) continue;
        for (int c : g.neighbors(b)) {
            if (c <= b || used.contains(c)) continue;
            VertexSet a_cands = (g.neighbors(b) - g.neighbors(c)).without(c) - used;
            VertexSet d_cands = (g.neighbors(c) - g.neighbors(b)).without(b) - used;
            for (int a : a_cands) {
                for (int d : d_cands) {
                    if (d == a) continue;
                    if (budget == 0) {
                        out.budget_exhausted = true;
                        return out;
                    }
                    --budget;
                    if (g.has_edge(a, d)) continue;
                    out.copies.push_back({a, b, c, d});
                    used = used | VertexSet::of({a, b, c, d});
                    goto next_middle;
                }
            }
        next_middle:;
            if (used.contains(b) || static_cast<int>(out.copies.size()) >= target) break;
        }
    }
    return out;
}

// One K_{5,5} block: both sides as sets plus the tuple layout.
struct K55Block {
    VertexSet side_a, side_b;
    VertexSet all;
};

inline PatternPacking find_f_packing(const Graph& g, int target, std::size_t budget) {
    constexpr std::uint64_t kSearchSeed = 0xF5EEDF5EEDull; // fixed: reproducible runs
    PatternPacking out;
    out.pattern = Pattern::F;
    int n = g.vertex_count();
    if (n == 0 || target <= 0) return out;

    std::vector<K55Block> blocks;
    std::vector<bool> paired;
    VertexSet reserved;
    for (std::uint64_t attempt = 0; static_cast<int>(out.copies.size()) < target; ++attempt) {
        if (budget == 0) {
            out.budget_exhausted = true;
            break;
        }
        --budget;
        int v = static_cast<int>(counter_rand_u32(kSearchSeed, 0, 0, attempt) % static_cast<std::uint32_t>(n));
        if (reserved.contains(v)) continue;
        VertexSet b_side = g.neighbors(v) - reserved;
        if (b_side.count() != 5) continue;
        // Repair step: close over vertices whose free neighborhood covers the
        // candidate side, then keep the five lowest.
        VertexSet a_side;
        for (int u : g.vertices() - reserved) {
            if (b_side.contains(u)) continue;
            if (b_side.subset_of(g.neighbors(u))) a_side = a_side.with(u);
            if (a_side.count() == 5) break;
        }
        if (a_side.count() != 5 || !a_side.contains(v)) continue;
        VertexSet s = a_side | b_side;
        bool induced = true;
        for (int u : a_side)
            if ((g.neighbors(u) & s) != b_side) induced = false;
        for (int u : b_side)
            if ((g.neighbors(u) & s) != a_side) induced = false;
        if (!induced) continue;

        blocks.push_back({a_side, b_side, s});
        paired.push_back(false);
        reserved = reserved | s;

        // Pair the new block with the first earlier unpaired block that has
        // no crossing edges; any such pair induces a copy of F.
        std::size_t latest = blocks.size() - 1;
        for (std::size_t j = 0; j < latest; ++j) {
            if (paired[j]) continue;
            bool crossing = false;
            for (int u : blocks[j].all)
                if (!(g.neighbors(u) & blocks[latest].all).empty()) crossing = true;
            if (crossing) continue;
            paired[j] = paired[latest] = true;
            std::vector<int> tuple;
            for (const auto& blk : {blocks[j], blocks[latest]}) {
                for (int u : blk.side_a) tuple.push_back(u);
                for (int u : blk.side_b) tuple.push_back(u);
            }
            out.copies.push_back(std::move(tuple));
            break;
        }
    }
    return out;
}

} // namespace detail

inline PatternPacking find_disjoint_induced(const Graph& g, Pattern pattern, int target,
                                            std::size_t budget = kDefaultPackingBudget) {
    if (target < 0) throw std::invalid_argument("find_disjoint_induced: negative target");
    return pattern == Pattern::P3 ? detail::find_p3_packing(g, target, budget)
                                  : detail::find_f_packing(g, target, budget);
}

} // namespace evendec

#pragma once

// Even-degenerate orderings: the smallest-label greedy removal process, an
// exact subset-DP decider, and the ordering verifier.
//
// An ordering v_1..v_n is accepted when every v_i with i <= n-2 has an even
// number of neighbours among the later vertices. The greedy process removes
// the lowest-labeled even-degree vertex of the remaining graph and is only a
// semi-decision procedure; the exact decider searches over remaining-vertex
// subsets with memoization.

#include <cstdint>
#include <vector>

#include "evendec/graph.hpp"
#include "evendec/witness.hpp"

namespace evendec {

using Ordering = std::vector<int>;

inline bool is_permutation_of_vertices(const Graph& g, const Ordering& o) {
    if (static_cast<int>(o.size()) != g.vertex_count()) return false;
    VertexSet seen;
    for (int v : o) {
        if (v < 0 || v >= g.vertex_count() || seen.contains(v)) return false;
        seen = seen.with(v);
    }
    return true;
}

// True iff each of the first n-2 vertices has an even number of neighbours
// among the later ones.
inline bool verify_ordering(const Graph& g, const Ordering& o) {
    if (!is_permutation_of_vertices(g, o)) return false;
    int n = g.vertex_count();
    VertexSet remaining = g.vertices();
    for (int i = 0; i < n; ++i) {
        remaining = remaining.without(o[static_cast<std::size_t>(i)]);
        if (i <= n - 3 && (g.neighbors(o[static_cast<std::size_t>(i)]) & remaining).count() % 2 != 0)
            return false;
    }
    return true;
}

// Diagnostic companion of verify_ordering: along an accepted ordering the
// suffix edge parity never changes, so it equals the parity of e(G) at every
// position up to n-1.
inline bool ordering_suffix_parity_constant(const Graph& g, const Ordering& o) {
    int n = g.vertex_count();
    int target = edge_parity(g, g.vertices());
    VertexSet remaining = g.vertices();
    for (int i = 0; i + 1 < n; ++i) {
        if (edge_parity(g, remaining) != target) return false;
        remaining = remaining.without(o[static_cast<std::size_t>(i)]);
    }
    return true;
}

struct GreedyOrderingResult {
    bool success = false;
    Ordering order;  // full ordering on success, removed prefix otherwise
    VertexSet stuck; // on failure: >2 vertices, all of odd degree
};

// Repeatedly remove the smallest-labeled even-degree vertex of the remaining
// graph; succeed once at most two vertices remain.
inline GreedyOrderingResult greedy_ordering(const Graph& g) {
    GreedyOrderingResult res;
    VertexSet remaining = g.vertices();
    while (remaining.count() > 2) {
        int pick = -1;
        for (int v : remaining) {
            if ((g.neighbors(v) & remaining).count() % 2 == 0) {
                pick = v;
                break;
            }
        }
        if (pick < 0) {
            res.success = false;
            res.stuck = remaining;
            return res;
        }
        res.order.push_back(pick);
        remaining = remaining.without(pick);
    }
    for (int v : remaining) res.order.push_back(v);
    res.success = true;
    return res;
}

namespace detail {

// Memo codes for the subset search.
inline constexpr std::uint8_t kUnknown = 0, kGood = 1, kBad = 2;

inline bool degenerate_search(const Graph& g, std::uint64_t w, std::vector<std::uint8_t>& memo) {
    if (std::popcount(w) <= 2) return true;
    std::uint8_t& slot = memo[w];
    if (slot != kUnknown) return slot == kGood;
    for (VertexSet rest{w}; !rest.empty();) {
        int v = rest.lowest();
        rest = rest.without(v);
        if (std::popcount(g.neighbors(v).bits & w) % 2 == 0) {
            if (degenerate_search(g, w & ~(1ull << v), memo)) {
                slot = kGood;
                return true;
            }
        }
    }
    slot = kBad;
    return false;
}

} // namespace detail

struct ExactDegeneracyResult {
    bool degenerate = false;
    Ordering order; // valid ordering when degenerate
};

// Exact decider: some valid ordering exists iff vertices of even degree can
// be peeled one at a time down to two leftovers, searched over all subsets.
inline ExactDegeneracyResult exact_even_degenerate(const Graph& g, int cap = 24) {
    int n = g.vertex_count();
    if (n > cap) throw ResourceError("exact_even_degenerate: vertex count exceeds the DP cap");

    ExactDegeneracyResult res;
    GreedyOrderingResult greedy = greedy_ordering(g);
    if (greedy.success) {
        res.degenerate = true;
        res.order = std::move(greedy.order);
        return res;
    }

    std::vector<std::uint8_t> memo(std::size_t{1} << n, detail::kUnknown);
    if (!detail::degenerate_search(g, g.vertices().bits, memo)) return res;

    res.degenerate = true;
    VertexSet remaining = g.vertices();
    while (remaining.count() > 2) {
        for (int v : remaining) {
            if ((g.neighbors(v) & remaining).count() % 2 != 0) continue;
            std::uint64_t child = remaining.without(v).bits;
            if (detail::degenerate_search(g, child, memo)) {
                res.order.push_back(v);
                remaining = VertexSet{child};
                break;
            }
        }
    }
    for (int v : remaining) res.order.push_back(v);
    return res;
}

// An accepted ordering of a graph with evenly many edges induces a
// decomposition witness: the steps are the singletons in order.
inline DecompositionWitness ordering_to_witness(const Graph& g, const Ordering& o) {
    DecompositionWitness w;
    w.initial = g.vertices();
    w.steps.reserve(o.size());
    for (int v : o) w.steps.push_back(VertexSet::single(v));
    return w;
}

} // namespace evendec

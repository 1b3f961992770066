#pragma once

// Ground-truth deciders: a subset DP for even-decomposability with witness
// extraction, and an exhaustive census over all labeled graphs on n vertices.
//
// The decomposability DP is the Theta(3^n) hot path of the artifact: good(W)
// holds iff some nonempty independent S subset of W with an even number of
// edges to W \ S leads to a good W \ S. Submasks are enumerated in decreasing
// mask order behind an independence pre-filter, memoized in a flat byte
// array, and the witness is read back by re-walking the same scan order.

#include <algorithm>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "evendec/degeneracy.hpp"
#include "evendec/graph.hpp"
#include "evendec/graph6.hpp"
#include "evendec/witness.hpp"

namespace evendec {

namespace detail {

inline bool decomposable_search(const Graph& g, std::uint64_t w, std::vector<std::uint8_t>& memo) {
    if (w == 0) return true;
    std::uint8_t& slot = memo[w];
    if (slot != kUnknown) return slot == kGood;
    // Invariant: e(G[W]) is even for every state reached here, because the
    // root has even parity and only even-cross steps are taken.
    for (std::uint64_t s = w; s != 0; s = (s - 1) & w) {
        int cross = 0;
        bool independent = true;
        for (VertexSet it{s}; !it.empty();) {
            int v = it.lowest();
            it = it.without(v);
            std::uint64_t nb = g.neighbors(v).bits;
            if (nb & s) {
                independent = false;
                break;
            }
            cross += std::popcount(nb & w);
        }
        if (independent && (cross & 1) == 0 && decomposable_search(g, w & ~s, memo)) {
            slot = kGood;
            return true;
        }
    }
    slot = kBad;
    return false;
}

} // namespace detail

struct ExactDecompositionResult {
    bool decomposable = false;
    DecompositionWitness witness; // verified removal sequence when decomposable
};

inline ExactDecompositionResult exact_even_decomposable(const Graph& g, int cap = 18) {
    int n = g.vertex_count();
    if (n > cap) throw ResourceError("exact_even_decomposable: vertex count exceeds the DP cap");
    ExactDecompositionResult res;
    if (edge_parity(g, g.vertices()) != 0) return res;

    std::vector<std::uint8_t> memo(std::size_t{1} << n, detail::kUnknown);
    if (!detail::decomposable_search(g, g.vertices().bits, memo)) return res;

    res.decomposable = true;
    res.witness.initial = g.vertices();
    std::uint64_t w = g.vertices().bits;
    while (w != 0) {
        std::uint64_t chosen = 0;
        for (std::uint64_t s = w; s != 0; s = (s - 1) & w) {
            if (is_simple_admissible(g, VertexSet{w}, VertexSet{s}) &&
                detail::decomposable_search(g, w & ~s, memo)) {
                chosen = s;
                break;
            }
        }
        if (chosen == 0) throw std::logic_error("exact_even_decomposable: witness walk lost the DP");
        res.witness.steps.push_back(VertexSet{chosen});
        w &= ~chosen;
    }
    return res;
}

struct CensusOptions {
    bool decomposability = false;
    bool degeneracy = false;
    int exemplar_cap = 0; // per class; 0 disables exemplar collection
    int workers = 0;      // 0 = hardware concurrency
};

struct CensusReport {
    int n = 0;
    std::uint64_t total_graphs = 0;
    std::uint64_t even_edge_count = 0;
    bool decomposability = false;
    bool degeneracy = false;
    std::uint64_t even_decomposable_count = 0;
    std::uint64_t even_non_decomposable_count = 0;
    std::uint64_t even_degenerate_count = 0;
    std::uint64_t non_even_degenerate_count = 0;
    std::vector<std::string> exemplars_even_decomposable;
    std::vector<std::string> exemplars_even_non_decomposable;
    std::vector<std::string> exemplars_even_degenerate;
    std::vector<std::string> exemplars_non_even_degenerate;
};

namespace detail {

// Graph index -> adjacency, bits in graph6 column order: (0,1),(0,2),(1,2),...
inline Graph graph_from_index(int n, std::uint64_t index) {
    Graph g(n);
    int k = 0;
    for (int col = 1; col < n; ++col)
        for (int row = 0; row < col; ++row, ++k)
            if ((index >> k) & 1) g.add_edge(row, col);
    return g;
}

struct CensusShard {
    CensusReport r;
};

inline void census_scan(int n, const CensusOptions& opts, std::uint64_t lo, std::uint64_t hi, CensusShard& out) {
    std::vector<std::uint8_t> memo_decomp, memo_degen;
    if (opts.decomposability) memo_decomp.resize(std::size_t{1} << n);
    if (opts.degeneracy) memo_degen.resize(std::size_t{1} << n);
    CensusReport& r = out.r;
    auto want_exemplar = [&](const std::vector<std::string>& list) {
        return opts.exemplar_cap > 0 && static_cast<int>(list.size()) < opts.exemplar_cap;
    };
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
        Graph g = graph_from_index(n, idx);
        bool even = edge_parity(g, g.vertices()) == 0;
        if (even) ++r.even_edge_count;
        if (opts.decomposability && even) {
            std::fill(memo_decomp.begin(), memo_decomp.end(), kUnknown);
            bool dec = decomposable_search(g, g.vertices().bits, memo_decomp);
            if (dec) {
                ++r.even_decomposable_count;
                if (want_exemplar(r.exemplars_even_decomposable))
                    r.exemplars_even_decomposable.push_back(emit_graph6(g));
            } else {
                ++r.even_non_decomposable_count;
                if (want_exemplar(r.exemplars_even_non_decomposable))
                    r.exemplars_even_non_decomposable.push_back(emit_graph6(g));
            }
        }
        if (opts.degeneracy) {
            bool deg = greedy_ordering(g).success;
            if (!deg) {
                std::fill(memo_degen.begin(), memo_degen.end(), kUnknown);
                deg = degenerate_search(g, g.vertices().bits, memo_degen);
            }
            if (deg) {
                ++r.even_degenerate_count;
                if (want_exemplar(r.exemplars_even_degenerate))
                    r.exemplars_even_degenerate.push_back(emit_graph6(g));
            } else {
                ++r.non_even_degenerate_count;
                if (want_exemplar(r.exemplars_non_even_degenerate))
                    r.exemplars_non_even_degenerate.push_back(emit_graph6(g));
            }
        }
    }
}

inline void census_merge_exemplars(std::vector<std::string>& into, const std::vector<std::string>& from, int cap) {
    for (const std::string& s : from) {
        if (static_cast<int>(into.size()) >= cap) return;
        into.push_back(s);
    }
}

} // namespace detail

// Exact counts over all 2^C(n,2) labeled graphs, partitioned across workers
// in contiguous index ranges; the merged report does not depend on the
// worker count.
inline CensusReport census(int n, CensusOptions opts) {
    if (n < 0) throw std::invalid_argument("census: negative n");
    if (opts.decomposability && n > 7)
        throw ResourceError("census: decomposability mode capped at n <= 7");
    if (opts.degeneracy && n > 8)
        throw ResourceError("census: degeneracy mode capped at n <= 8");
    if (!opts.decomposability && !opts.degeneracy)
        throw std::invalid_argument("census: nothing to count");

    int pairs = n * (n - 1) / 2;
    std::uint64_t total = std::uint64_t{1} << pairs;
    int workers = opts.workers > 0 ? opts.workers : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (static_cast<std::uint64_t>(workers) > total) workers = static_cast<int>(total);

    std::vector<detail::CensusShard> shards(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    for (int wi = 0; wi < workers; ++wi) {
        std::uint64_t lo = total / workers * wi + std::min<std::uint64_t>(wi, total % workers);
        std::uint64_t len = total / workers + (static_cast<std::uint64_t>(wi) < total % workers ? 1 : 0);
        pool.emplace_back(detail::census_scan, n, std::cref(opts), lo, lo + len,
                          std::ref(shards[static_cast<std::size_t>(wi)]));
    }
    for (auto& t : pool) t.join();

    CensusReport report;
    report.n = n;
    report.total_graphs = total;
    report.decomposability = opts.decomposability;
    report.degeneracy = opts.degeneracy;
    for (const auto& sh : shards) {
        report.even_edge_count += sh.r.even_edge_count;
        report.even_decomposable_count += sh.r.even_decomposable_count;
        report.even_non_decomposable_count += sh.r.even_non_decomposable_count;
        report.even_degenerate_count += sh.r.even_degenerate_count;
        report.non_even_degenerate_count += sh.r.non_even_degenerate_count;
        if (opts.exemplar_cap > 0) {
            detail::census_merge_exemplars(report.exemplars_even_decomposable, sh.r.exemplars_even_decomposable, opts.exemplar_cap);
            detail::census_merge_exemplars(report.exemplars_even_non_decomposable, sh.r.exemplars_even_non_decomposable, opts.exemplar_cap);
            detail::census_merge_exemplars(report.exemplars_even_degenerate, sh.r.exemplars_even_degenerate, opts.exemplar_cap);
            detail::census_merge_exemplars(report.exemplars_non_even_degenerate, sh.r.exemplars_non_even_degenerate, opts.exemplar_cap);
        }
    }
    return report;
}

} // namespace evendec

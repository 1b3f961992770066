#pragma once

// Seeded, reproducible samplers for G(n,p), even-edge-conditioned G(n,p),
// and linked / parity-linked graph pairs.
//
// Randomness comes from a Philox-style counter-based generator keyed by
// (seed, stream, domain, index): any single pair bit can be recomputed in
// isolation, parallel substreams need no shared state, and identical specs
// give identical samples on every platform.
//
// Salmon et al., "Parallel random numbers: as easy as 1, 2, 3" (SC 2011).

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include "evendec/graph.hpp"

namespace evendec {

namespace detail {

inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
        std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
        ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
               static_cast<std::uint32_t>(p1),
               static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
               static_cast<std::uint32_t>(p0)};
        key[0] += kW0;
        key[1] += kW1;
    }
    return ctr;
}

} // namespace detail

// Domains keep unrelated draws on non-overlapping counters.
namespace rng_domain {
inline constexpr std::uint32_t kGnpAttempt = 0;           // + attempt number
inline constexpr std::uint32_t kLinkedRedraw = 0x40000000; // + attempt number
inline constexpr std::uint32_t kProcessPick = 0x80000000;  // removal-process tie breaks
} // namespace rng_domain

// One uniform 32-bit word, a pure function of its arguments.
inline std::uint32_t counter_rand_u32(std::uint64_t seed, std::uint32_t stream,
                                      std::uint32_t domain, std::uint64_t index) {
    std::uint64_t block = index >> 2;
    auto out = detail::philox4x32(
        {static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32), stream, domain},
        {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
    return out[index & 3];
}

struct SamplerSpec {
    int n = 0;
    double p = 0.5;
    std::uint64_t seed = 0;
    std::uint32_t stream = 0; // parallel substream index
};

namespace detail {

// Edge iff u32 < threshold; p = 0 and p = 1 are exact.
inline std::uint64_t edge_threshold(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sampler: p must lie in [0, 1]");
    return static_cast<std::uint64_t>(std::llround(p * 4294967296.0));
}

inline Graph sample_gnp_attempt(const SamplerSpec& spec, std::uint32_t attempt) {
    Graph g(spec.n);
    std::uint64_t th = edge_threshold(spec.p);
    std::uint64_t k = 0;
    for (int col = 1; col < spec.n; ++col)
        for (int row = 0; row < col; ++row, ++k)
            if (counter_rand_u32(spec.seed, spec.stream, rng_domain::kGnpAttempt + attempt, k) < th)
                g.add_edge(row, col);
    return g;
}

} // namespace detail

inline Graph sample_gnp(const SamplerSpec& spec) { return detail::sample_gnp_attempt(spec, 0); }

// G(n,p) conditioned on an even number of edges, by whole-graph rejection.
inline Graph sample_gnp_even(const SamplerSpec& spec) {
    long pairs = static_cast<long>(spec.n) * (spec.n - 1) / 2;
    if (spec.p == 1.0 && pairs % 2 != 0)
        throw std::invalid_argument("sample_gnp_even: p = 1 with an odd number of vertex pairs");
    for (std::uint32_t attempt = 0; attempt < 100000000u; ++attempt) {
        Graph g = detail::sample_gnp_attempt(spec, attempt);
        if (g.edge_count() % 2 == 0) return g;
    }
    throw std::logic_error("sample_gnp_even: rejection did not terminate");
}

// A pair (G, G') at p = 1/2 agreeing on the induced subgraph of the first s
// labels, independent elsewhere; when parity is requested the non-shared
// pairs of G' are resampled until e(G') = e(G) mod 2.
inline std::pair<Graph, Graph> sample_linked_pair(int n_total, int s, bool parity,
                                                  std::uint64_t seed, std::uint32_t stream = 0) {
    if (s < 0 || s > n_total) throw std::invalid_argument("sample_linked_pair: s out of range");
    SamplerSpec base{n_total, 0.5, seed, stream};
    Graph g = sample_gnp(base);

    long free_pairs = 0;
    for (int col = 1; col < n_total; ++col)
        for (int row = 0; row < col; ++row)
            if (col >= s) ++free_pairs;

    for (std::uint32_t attempt = 0;; ++attempt) {
        Graph g2 = g;
        std::uint64_t k = 0;
        for (int col = 1; col < n_total; ++col) {
            for (int row = 0; row < col; ++row, ++k) {
                if (col < s) continue; // pair inside the shared set
                bool bit = counter_rand_u32(seed, stream, rng_domain::kLinkedRedraw + attempt, k) >> 31;
                if (bit != g2.has_edge(row, col)) g2.toggle_edge(row, col);
            }
        }
        if (!parity || g2.edge_count() % 2 == g.edge_count() % 2) return {g, g2};
        if (free_pairs == 0)
            throw std::invalid_argument("sample_linked_pair: parity unreachable with no free pairs");
        if (attempt > 100000000u) throw std::logic_error("sample_linked_pair: rejection did not terminate");
    }
}

} // namespace evendec

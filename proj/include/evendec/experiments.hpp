#pragma once

// Monte-Carlo estimators over the exact oracles and the decomposition
// engine. Every experiment is a pure function of (parameters, seed): trial i
// draws its randomness from substream i, workers own disjoint contiguous
// trial ranges, and tallies merge by addition, so records do not depend on
// the worker count.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <string>
#include <thread>
#include <vector>

#include "evendec/degeneracy.hpp"
#include "evendec/engine.hpp"
#include "evendec/exact.hpp"
#include "evendec/randgraph.hpp"
#include "evendec/stats.hpp"

namespace evendec {

inline const char* build_id() {
#ifdef EVENDEC_BUILD_ID
    return EVENDEC_BUILD_ID;
#else
    return "dev";
#endif
}

enum class TrialOutcome { CertifiedDecomposable, CertifiedNonDecomposable, Unknown };

inline TrialOutcome classify_decomposability(const Graph& g, int exact_cap = 18) {
    EngineOutcome o = decompose_auto(g, {exact_cap, kDefaultPackingBudget});
    if (o.status == EngineStatus::Decomposed) return TrialOutcome::CertifiedDecomposable;
    if (o.status == EngineStatus::CertifiedNonDecomposable) return TrialOutcome::CertifiedNonDecomposable;
    return TrialOutcome::Unknown;
}

struct ExperimentRecord {
    std::string experiment;
    int n = 0;
    double p = 0.0;
    int t = 0;
    int a = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::uint64_t>> tallies;
    double estimate = 0.0;
    double stderr_value = 0.0;
    double runtime_s = 0.0;
    std::string build;

    std::uint64_t tally(const std::string& key) const {
        for (const auto& [k, v] : tallies)
            if (k == key) return v;
        return 0;
    }
};

struct McOptions {
    int workers = 0;   // 0 = hardware concurrency
    int exact_cap = 18;
};

namespace detail {

inline int resolve_workers(int requested, std::uint64_t samples) {
    int w = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (w < 1) w = 1;
    if (samples > 0 && static_cast<std::uint64_t>(w) > samples) w = static_cast<int>(samples);
    return w;
}

// Runs fn(trial) over [0, samples) split into contiguous per-worker ranges;
// Shard must support merge-by-field in the caller.
template <typename Shard, typename Fn>
inline std::vector<Shard> run_sharded(std::uint64_t samples, int workers, Fn fn) {
    std::vector<Shard> shards(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    for (int wi = 0; wi < workers; ++wi) {
        std::uint64_t lo = samples / static_cast<std::uint64_t>(workers) * static_cast<std::uint64_t>(wi) +
                           std::min<std::uint64_t>(static_cast<std::uint64_t>(wi), samples % static_cast<std::uint64_t>(workers));
        std::uint64_t len = samples / static_cast<std::uint64_t>(workers) +
                            (static_cast<std::uint64_t>(wi) < samples % static_cast<std::uint64_t>(workers) ? 1 : 0);
        pool.emplace_back([&, wi, lo, len] {
            Shard& sh = shards[static_cast<std::size_t>(wi)];
            for (std::uint64_t i = lo; i < lo + len; ++i) fn(i, sh);
        });
    }
    for (auto& t : pool) t.join();
    return shards;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

} // namespace detail

// Three-way decomposability split of even-edge-conditioned G(n,p) samples;
// the estimate is the certified-non-decomposable rate.
inline ExperimentRecord estimate_nondecomposable(int n, double p, std::uint64_t samples,
                                                 std::uint64_t seed, McOptions opts = {}) {
    struct Shard {
        std::uint64_t dec = 0, nondec = 0, unknown = 0;
    };
    detail::Timer timer;
    int workers = detail::resolve_workers(opts.workers, samples);
    auto shards = detail::run_sharded<Shard>(samples, workers, [&](std::uint64_t i, Shard& sh) {
        Graph g = sample_gnp_even({n, p, seed, static_cast<std::uint32_t>(i)});
        switch (classify_decomposability(g, opts.exact_cap)) {
            case TrialOutcome::CertifiedDecomposable: ++sh.dec; break;
            case TrialOutcome::CertifiedNonDecomposable: ++sh.nondec; break;
            case TrialOutcome::Unknown: ++sh.unknown; break;
        }
    });
    Shard total;
    for (const auto& sh : shards) {
        total.dec += sh.dec;
        total.nondec += sh.nondec;
        total.unknown += sh.unknown;
    }
    ExperimentRecord r;
    r.experiment = "nondecomposable";
    r.n = n;
    r.p = p;
    r.samples = samples;
    r.seed = seed;
    r.tallies = {{"certified_decomposable", total.dec},
                 {"certified_nondecomposable", total.nondec},
                 {"unknown", total.unknown}};
    r.estimate = samples ? static_cast<double>(total.nondec) / static_cast<double>(samples) : 0.0;
    r.stderr_value = binomial_stderr(r.estimate, samples);
    r.runtime_s = timer.seconds();
    r.build = build_id();
    return r;
}

// Monte-Carlo estimate of c_n, the probability that G(n,1/2) is
// non-even-degenerate, with the greedy failure rate tracked alongside.
inline ExperimentRecord estimate_c(int n, std::uint64_t samples, std::uint64_t seed, McOptions opts = {}) {
    struct Shard {
        std::uint64_t nondegen = 0, degen = 0, greedy_failure = 0;
    };
    detail::Timer timer;
    int workers = detail::resolve_workers(opts.workers, samples);
    auto shards = detail::run_sharded<Shard>(samples, workers, [&](std::uint64_t i, Shard& sh) {
        Graph g = sample_gnp({n, 0.5, seed, static_cast<std::uint32_t>(i)});
        GreedyOrderingResult greedy = greedy_ordering(g);
        bool degenerate = greedy.success;
        if (!greedy.success) {
            ++sh.greedy_failure;
            degenerate = exact_even_degenerate(g).degenerate;
        }
        if (degenerate)
            ++sh.degen;
        else
            ++sh.nondegen;
    });
    Shard total;
    for (const auto& sh : shards) {
        total.nondegen += sh.nondegen;
        total.degen += sh.degen;
        total.greedy_failure += sh.greedy_failure;
    }
    ExperimentRecord r;
    r.experiment = "c";
    r.n = n;
    r.p = 0.5;
    r.samples = samples;
    r.seed = seed;
    r.tallies = {{"degenerate", total.degen},
                 {"nondegenerate", total.nondegen},
                 {"greedy_failure", total.greedy_failure}};
    r.estimate = samples ? static_cast<double>(total.nondegen) / static_cast<double>(samples) : 0.0;
    r.stderr_value = binomial_stderr(r.estimate, samples);
    r.runtime_s = timer.seconds();
    r.build = build_id();
    return r;
}

// Probability that both members of a parity-linked pair (shared set of size
// s inside n-vertex graphs) are non-even-degenerate. s = n-1 is the case the
// o(1)-bound argument uses.
inline ExperimentRecord estimate_b_star(int n, int s, std::uint64_t samples, std::uint64_t seed,
                                        McOptions opts = {}) {
    struct Shard {
        std::uint64_t both = 0, first = 0, second = 0;
    };
    detail::Timer timer;
    int workers = detail::resolve_workers(opts.workers, samples);
    auto shards = detail::run_sharded<Shard>(samples, workers, [&](std::uint64_t i, Shard& sh) {
        auto [g, g2] = sample_linked_pair(n, s, /*parity=*/true, seed, static_cast<std::uint32_t>(i));
        bool bad1 = !exact_even_degenerate(g).degenerate;
        bool bad2 = !exact_even_degenerate(g2).degenerate;
        if (bad1) ++sh.first;
        if (bad2) ++sh.second;
        if (bad1 && bad2) ++sh.both;
    });
    Shard total;
    for (const auto& sh : shards) {
        total.both += sh.both;
        total.first += sh.first;
        total.second += sh.second;
    }
    ExperimentRecord r;
    r.experiment = "bstar";
    r.n = n;
    r.p = 0.5;
    r.t = s; // shared-set size rides in the t column
    r.samples = samples;
    r.seed = seed;
    r.tallies = {{"both_nondegenerate", total.both},
                 {"first_nondegenerate", total.first},
                 {"second_nondegenerate", total.second}};
    r.estimate = samples ? static_cast<double>(total.both) / static_cast<double>(samples) : 0.0;
    r.stderr_value = binomial_stderr(r.estimate, samples);
    r.runtime_s = timer.seconds();
    r.build = build_id();
    return r;
}

// Membership test for the sandwich [n-t] subset of C subset of [n+t] with at
// most a of the first n labels missing (labels 0-based).
inline bool is_t_a_initial(VertexSet c, int n, int t, int a) {
    if (c.count() != n) return false;
    VertexSet low = VertexSet::full(std::max(0, n - t));
    VertexSet high = VertexSet::full(std::min(2 * n, n + t));
    if (!low.subset_of(c) || !c.subset_of(high)) return false;
    return (VertexSet::full(n) - c).count() <= a;
}

// The smallest-label removal process on G(2n, 1/2): n removals, preferring
// the lowest-labeled even-degree vertex, falling back to a uniformly random
// vertex when every degree is odd. Event F: all picks had even degree and
// the removed set is (t,a)-initial.
inline ExperimentRecord removal_process_stats(int n, int t, int a, std::uint64_t samples,
                                              std::uint64_t seed, McOptions opts = {}) {
    if (!(a <= t && t <= n && n <= 32)) throw std::invalid_argument("removal_process_stats: need a <= t <= n <= 32");
    struct Shard {
        std::uint64_t event_f = 0;
    };
    detail::Timer timer;
    int workers = detail::resolve_workers(opts.workers, samples);
    auto shards = detail::run_sharded<Shard>(samples, workers, [&](std::uint64_t i, Shard& sh) {
        Graph g = sample_gnp({2 * n, 0.5, seed, static_cast<std::uint32_t>(i)});
        VertexSet remaining = g.vertices();
        VertexSet removed;
        bool all_even = true;
        for (int step = 0; step < n; ++step) {
            int pick = -1;
            for (int v : remaining) {
                if ((g.neighbors(v) & remaining).count() % 2 == 0) {
                    pick = v;
                    break;
                }
            }
            if (pick < 0) {
                all_even = false;
                std::uint32_t r = counter_rand_u32(seed, static_cast<std::uint32_t>(i),
                                                   rng_domain::kProcessPick, static_cast<std::uint64_t>(step));
                int idx = static_cast<int>(r % static_cast<std::uint32_t>(remaining.count()));
                VertexSet it = remaining;
                while (idx-- > 0) it = it.without(it.lowest());
                pick = it.lowest();
            }
            remaining = remaining.without(pick);
            removed = removed.with(pick);
        }
        if (all_even && is_t_a_initial(removed, n, t, a)) ++sh.event_f;
    });
    Shard total;
    for (const auto& sh : shards) total.event_f += sh.event_f;
    ExperimentRecord r;
    r.experiment = "removal";
    r.n = n;
    r.p = 0.5;
    r.t = t;
    r.a = a;
    r.samples = samples;
    r.seed = seed;
    r.tallies = {{"event_f", total.event_f}};
    r.estimate = samples ? static_cast<double>(total.event_f) / static_cast<double>(samples) : 0.0;
    r.stderr_value = binomial_stderr(r.estimate, samples);
    r.runtime_s = timer.seconds();
    r.build = build_id();
    return r;
}

// ---- persistence ------------------------------------------------------------

enum class RecordFormat { Csv, Json };

// Fixed column set; tallies that an experiment does not produce print as 0.
inline constexpr const char* kRecordCsvHeader =
    "experiment,n,p,t,a,samples,seed,"
    "tally_certified_decomposable,tally_certified_nondecomposable,tally_unknown,"
    "tally_degenerate,tally_nondegenerate,tally_greedy_failure,"
    "tally_first_nondegenerate,tally_second_nondegenerate,tally_both_nondegenerate,"
    "tally_event_f,estimate,stderr,runtime_s,build";

namespace detail {

inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline const char* const kTallyColumns[] = {
    "certified_decomposable", "certified_nondecomposable", "unknown",
    "degenerate", "nondegenerate", "greedy_failure",
    "first_nondegenerate", "second_nondegenerate", "both_nondegenerate",
    "event_f"};

} // namespace detail

// runtime_s is only written when include_timing is set; by default it prints
// as 0 so reruns with the same config and seed are byte-identical.
inline std::string record_csv_row(const ExperimentRecord& r, bool include_timing = false) {
    std::string row = r.experiment;
    row += "," + std::to_string(r.n);
    row += "," + detail::format_double(r.p);
    row += "," + std::to_string(r.t);
    row += "," + std::to_string(r.a);
    row += "," + std::to_string(r.samples);
    row += "," + std::to_string(r.seed);
    for (const char* col : detail::kTallyColumns) row += "," + std::to_string(r.tally(col));
    row += "," + detail::format_double(r.estimate);
    row += "," + detail::format_double(r.stderr_value);
    row += "," + detail::format_double(include_timing ? r.runtime_s : 0.0);
    row += "," + r.build;
    return row;
}

inline std::string record_json_line(const ExperimentRecord& r, bool include_timing = false) {
    std::string out = "{\"experiment\":\"" + r.experiment + "\"";
    out += ",\"n\":" + std::to_string(r.n);
    out += ",\"p\":" + detail::format_double(r.p);
    out += ",\"t\":" + std::to_string(r.t);
    out += ",\"a\":" + std::to_string(r.a);
    out += ",\"samples\":" + std::to_string(r.samples);
    out += ",\"seed\":" + std::to_string(r.seed);
    out += ",\"tallies\":{";
    for (std::size_t i = 0; i < r.tallies.size(); ++i) {
        if (i) out += ",";
        out += "\"" + r.tallies[i].first + "\":" + std::to_string(r.tallies[i].second);
    }
    out += "},\"estimate\":" + detail::format_double(r.estimate);
    out += ",\"stderr\":" + detail::format_double(r.stderr_value);
    out += ",\"runtime_s\":" + detail::format_double(include_timing ? r.runtime_s : 0.0);
    out += ",\"build\":\"" + r.build + "\"}";
    return out;
}

namespace detail {

inline std::string read_file_or_empty(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("write_results: cannot open " + tmp);
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write_results: short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("write_results: rename failed for " + path);
}

} // namespace detail

// Appends records with write-temp-then-rename, so readers see either the old
// file or the complete new one.
inline void write_results(const std::vector<ExperimentRecord>& records, const std::string& path,
                          RecordFormat format, bool include_timing = false) {
    std::string content = detail::read_file_or_empty(path);
    if (!content.empty() && content.back() != '\n') content += "\n";
    if (format == RecordFormat::Csv && content.empty()) content = std::string(kRecordCsvHeader) + "\n";
    for (const auto& r : records) {
        content += format == RecordFormat::Csv ? record_csv_row(r, include_timing)
                                               : record_json_line(r, include_timing);
        content += "\n";
    }
    detail::write_file_atomic(path, content);
}

} // namespace evendec

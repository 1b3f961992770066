// evendec: exact deciders, witness-producing decomposers, labeled-graph
// censuses and seeded Monte-Carlo experiments for even-decomposability and
// even-degeneracy, with machine-readable output.
//
// Exit codes: 0 success, 1 negative verdict or unmet condition, 2 usage
// error, 3 resource-cap error. Structured output goes to stdout (or --out);
// prose and timing go to stderr.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "evendec/degeneracy.hpp"
#include "evendec/engine.hpp"
#include "evendec/exact.hpp"
#include "evendec/experiments.hpp"
#include "evendec/graph.hpp"
#include "evendec/graph6.hpp"
#include "evendec/rigs.hpp"
#include "evendec/serialize.hpp"

namespace {

using namespace evendec;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct GraphInput {
    std::string g6;
    std::string edges_path;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--g6", g6, "graph6 word");
        cmd->add_option("--edges", edges_path, "edge-list file (first line n, then 'u v' lines)");
    }
    Graph load() const {
        if (!g6.empty() && !edges_path.empty())
            throw CLI::ValidationError("input", "--g6 and --edges are mutually exclusive");
        if (!g6.empty()) return parse_graph6(g6);
        if (!edges_path.empty()) {
            std::ifstream in(edges_path);
            if (!in) throw std::runtime_error("cannot open " + edges_path);
            std::stringstream buf;
            buf << in.rdbuf();
            return parse_edge_list(buf.str());
        }
        throw CLI::ValidationError("input", "one of --g6 or --edges is required");
    }
    json config() const {
        json c;
        if (!g6.empty()) c["g6"] = g6;
        if (!edges_path.empty()) c["edges"] = edges_path;
        return c;
    }
};

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
    } else {
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + out_path);
        out << text;
    }
}

void emit_json(const json& j, const std::string& out_path) { emit_text(j.dump(2) + "\n", out_path); }

int run_decide(const GraphInput& input, int exact_cap, int degen_cap, const std::string& out_path) {
    Graph g = input.load();
    json out;
    out["config"] = {{"command", "decide"}, {"input", input.config()}, {"exact_cap", exact_cap},
                     {"degeneracy_cap", degen_cap}};
    out["n"] = g.vertex_count();
    out["edges"] = g.edge_count();
    out["even_edges"] = g.edge_count() % 2 == 0;
    ExactDecompositionResult dec = exact_even_decomposable(g, exact_cap);
    out["even_decomposable"] = dec.decomposable;
    if (dec.decomposable) out["witness"] = witness_to_json(dec.witness);
    ExactDegeneracyResult deg = exact_even_degenerate(g, degen_cap);
    out["even_degenerate"] = deg.degenerate;
    if (deg.degenerate) out["ordering"] = ordering_to_json(deg.order);
    emit_json(out, out_path);
    return dec.decomposable ? kExitOk : kExitNegative;
}

int run_decompose(const GraphInput& input, const std::string& strategy, DecomposeConfig cfg, int t,
                  int exact_cap, const std::string& out_path, bool verbose) {
    Graph g = input.load();
    EngineOutcome o;
    if (strategy == "auto") {
        o = decompose_auto(g, {exact_cap, cfg.budget});
    } else if (strategy == "sparse") {
        o = decompose_sparse(g, cfg);
    } else if (strategy == "dense") {
        o = decompose_dense(g, cfg);
    } else if (strategy == "uniform") {
        PatternPacking packing = find_disjoint_induced(g, Pattern::F, t, cfg.budget);
        o = decompose_uniform(g, packing, t);
    } else {
        GreedyRemovalResult gr = greedy_removal(g, g.vertices(), g.vertices());
        if (gr.terminal.empty() && g.edge_count() % 2 == 0) {
            DecompositionWitness w{g.vertices(), gr.steps};
            o = verify_witness(g, w) ? EngineOutcome::decomposed(w) : EngineOutcome::unmet("internal");
        } else {
            o = EngineOutcome::stuck_at(gr.terminal);
        }
    }
    if (verbose)
        for (const auto& line : o.trace) std::fprintf(stderr, "%s\n", line.c_str());
    json out;
    out["config"] = {{"command", "decompose"}, {"input", input.config()}, {"strategy", strategy},
                     {"tau1", cfg.tau1},       {"tau2", cfg.tau2},        {"tau3", cfg.tau3},
                     {"t", t},                 {"exact_cap", exact_cap}};
    out["outcome"] = outcome_to_json(o);
    emit_json(out, out_path);
    return o.status == EngineStatus::Decomposed ? kExitOk : kExitNegative;
}

int run_degenerate(const GraphInput& input, int cap, const std::string& out_path) {
    Graph g = input.load();
    json out;
    out["config"] = {{"command", "degenerate"}, {"input", input.config()}, {"cap", cap}};
    GreedyOrderingResult greedy = greedy_ordering(g);
    out["greedy"]["success"] = greedy.success;
    if (greedy.success)
        out["greedy"]["ordering"] = ordering_to_json(greedy.order);
    else
        out["greedy"]["stuck"] = vertexset_to_json(greedy.stuck);
    bool have_ordering = greedy.success;
    if (!greedy.success && g.vertex_count() <= cap) {
        ExactDegeneracyResult ex = exact_even_degenerate(g, cap);
        out["exact"]["even_degenerate"] = ex.degenerate;
        if (ex.degenerate) out["exact"]["ordering"] = ordering_to_json(ex.order);
        have_ordering = ex.degenerate;
    }
    emit_json(out, out_path);
    return have_ordering ? kExitOk : kExitNegative;
}

int run_census(int n, CensusOptions opts, const std::string& format, const std::string& out_path) {
    CensusReport r = census(n, opts);
    json config{{"command", "census"},       {"n", n},
                {"decomposability", opts.decomposability}, {"degeneracy", opts.degeneracy},
                {"exemplar_cap", opts.exemplar_cap},       {"workers", opts.workers}};
    if (format == "csv") {
        std::string text = "# config: " + config.dump() + "\n";
        text += std::string(kCensusCsvHeader) + "\n" + census_to_csv_row(r) + "\n";
        emit_text(text, out_path);
    } else {
        json out;
        out["config"] = config;
        out["census"] = census_to_json(r);
        emit_json(out, out_path);
    }
    return kExitOk;
}

int run_mc(const std::string& experiment, int n, double p, int t, int a, int s,
           std::uint64_t samples, std::uint64_t seed, int workers, int exact_cap,
           const std::string& format, const std::string& out_path, bool timing) {
    McOptions opts{workers, exact_cap};
    ExperimentRecord rec;
    if (experiment == "nondecomposable") {
        rec = estimate_nondecomposable(n, p, samples, seed, opts);
    } else if (experiment == "c") {
        rec = estimate_c(n, samples, seed, opts);
    } else if (experiment == "bstar") {
        rec = estimate_b_star(n, s < 0 ? n - 1 : s, samples, seed, opts);
    } else if (experiment == "removal") {
        rec = removal_process_stats(n, t, a, samples, seed, opts);
    } else {
        throw CLI::ValidationError("--experiment",
                                   "unknown experiment (use nondecomposable|c|bstar|removal)");
    }
    std::fprintf(stderr, "%s: runtime %.3f s\n", rec.experiment.c_str(), rec.runtime_s);
    if (!out_path.empty()) {
        write_results({rec}, out_path, format == "csv" ? RecordFormat::Csv : RecordFormat::Json, timing);
    }
    json config{{"command", "mc"}, {"experiment", experiment}, {"n", n},       {"p", p},
                {"t", t},          {"a", a},                   {"s", s},       {"samples", samples},
                {"seed", seed},    {"workers", workers},       {"exact_cap", exact_cap}};
    if (format == "csv") {
        std::string text = "# config: " + config.dump() + "\n";
        text += std::string(kRecordCsvHeader) + "\n" + record_csv_row(rec, timing) + "\n";
        emit_text(text, "");
    } else {
        std::string text = "{\"config\":" + config.dump() + ",\"record\":" + record_json_line(rec, timing) + "}\n";
        emit_text(text, "");
    }
    return kExitOk;
}

int run_verify_lemmas(const std::string& format, const std::string& out_path) {
    std::vector<LemmaCaseResult> results = run_lemma_suite();
    bool all_pass = true;
    std::string text;
    if (format == "csv") {
        text += "case,pass,rigs,detail\n";
        for (const auto& r : results) {
            text += r.name + "," + (r.pass ? "PASS" : "FAIL") + "," + std::to_string(r.rigs) + "," +
                    r.detail + "\n";
            all_pass = all_pass && r.pass;
        }
    } else {
        json arr = json::array();
        for (const auto& r : results) {
            arr.push_back({{"case", r.name}, {"pass", r.pass}, {"rigs", r.rigs}, {"detail", r.detail}});
            all_pass = all_pass && r.pass;
        }
        text = arr.dump(2) + "\n";
    }
    emit_text(text, out_path);
    return all_pass ? kExitOk : kExitNegative;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"even-decomposition and even-degeneracy toolkit"};
    app.require_subcommand(1);

    std::string out_path, format = "json";
    bool verbose = false, timing = false;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "write primary output to this file");
        cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        cmd->add_flag("--verbose", verbose, "stage traces on stderr");
    };

    GraphInput input;
    int exact_cap = 18, degen_cap = 24;

    auto* decide = app.add_subcommand("decide", "exact oracle verdicts for one graph");
    add_common(decide);
    input.add_flags(decide);
    decide->add_option("--exact-cap", exact_cap, "decomposability DP cap");
    decide->add_option("--degeneracy-cap", degen_cap, "degeneracy DP cap");

    auto* decompose = app.add_subcommand("decompose", "run a witness-producing decomposer");
    add_common(decompose);
    input.add_flags(decompose);
    std::string strategy = "auto";
    DecomposeConfig cfg{1, 3, 2, kDefaultPackingBudget};
    int uniform_t = 1;
    decompose->add_option("--strategy", strategy, "auto|sparse|dense|uniform|greedy")
        ->check(CLI::IsMember({"auto", "sparse", "dense", "uniform", "greedy"}));
    decompose->add_option("--tau1", cfg.tau1, "packing target");
    decompose->add_option("--tau2", cfg.tau2, "clique cap");
    decompose->add_option("--tau3", cfg.tau3, "degree cap");
    decompose->add_option("--t", uniform_t, "gadget count for the uniform strategy");
    decompose->add_option("--exact-cap", exact_cap, "exact-oracle cap for the auto strategy");
    decompose->add_option("--budget", cfg.budget, "pattern search budget");

    auto* degenerate = app.add_subcommand("degenerate", "greedy ordering or stuck set");
    add_common(degenerate);
    input.add_flags(degenerate);
    degenerate->add_option("--exact-cap", degen_cap, "degeneracy DP cap");

    auto* census_cmd = app.add_subcommand("census", "exhaustive labeled-graph census");
    add_common(census_cmd);
    int census_n = 4;
    CensusOptions census_opts;
    census_cmd->add_option("-n,--n", census_n, "vertex count")->required();
    census_cmd->add_flag("--decomposability", census_opts.decomposability, "count even-decomposable graphs (n <= 7)");
    census_cmd->add_flag("--degeneracy", census_opts.degeneracy, "count even-degenerate graphs (n <= 8)");
    census_cmd->add_option("--exemplars", census_opts.exemplar_cap, "collect up to K exemplars per class");
    census_cmd->add_option("--workers", census_opts.workers, "worker threads (0 = auto)");

    auto* mc = app.add_subcommand("mc", "seeded Monte-Carlo experiments");
    add_common(mc);
    std::string experiment;
    int mc_n = 8, mc_t = 0, mc_a = 0, mc_s = -1, mc_workers = 0;
    double mc_p = 0.5;
    std::uint64_t mc_samples = 10000, mc_seed = 0;
    mc->add_option("--experiment", experiment, "nondecomposable|c|bstar|removal")->required();
    mc->add_option("-n,--n", mc_n, "vertex count")->required();
    mc->add_option("--p", mc_p, "edge probability");
    mc->add_option("--t", mc_t, "t parameter (removal process)");
    mc->add_option("--a", mc_a, "a parameter (removal process)");
    mc->add_option("--s", mc_s, "shared-set size (bstar; default n-1)");
    mc->add_option("--samples", mc_samples, "number of trials");
    mc->add_option("--seed", mc_seed, "64-bit seed");
    mc->add_option("--workers", mc_workers, "worker threads (0 = auto)");
    mc->add_option("--exact-cap", exact_cap, "certified-mode cap");
    mc->add_flag("--timing", timing, "include measured runtime_s in records (non-reproducible bytes)");

    auto* lemmas = app.add_subcommand("verify-lemmas", "replay the absorption-lemma rig suites");
    add_common(lemmas);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (decide->parsed()) return run_decide(input, exact_cap, degen_cap, out_path);
        if (decompose->parsed())
            return run_decompose(input, strategy, cfg, uniform_t, exact_cap, out_path, verbose);
        if (degenerate->parsed()) return run_degenerate(input, degen_cap, out_path);
        if (census_cmd->parsed()) return run_census(census_n, census_opts, format, out_path);
        if (mc->parsed())
            return run_mc(experiment, mc_n, mc_p, mc_t, mc_a, mc_s, mc_samples, mc_seed, mc_workers,
                          exact_cap, format, out_path, timing);
        if (lemmas->parsed()) return run_verify_lemmas(format, out_path);
    } catch (const ResourceError& e) {
        std::fprintf(stderr, "resource limit: %s\n", e.what());
        return kExitResource;
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "usage: %s\n", e.what());
        return kExitUsage;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}

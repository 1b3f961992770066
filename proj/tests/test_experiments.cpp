#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "evendec/degeneracy.hpp"
#include "evendec/exact.hpp"
#include "evendec/experiments.hpp"
#include "evendec/randgraph.hpp"

using namespace evendec;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Exact b*_{1,n-1} at n = 4 by enumerating every base graph and every
// parity-consistent completion of the last vertex's three pairs.
double exact_bstar_4() {
    long both = 0, total = 0;
    for (std::uint64_t gi = 0; gi < 64; ++gi) {
        Graph g(4);
        int k = 0;
        for (int col = 1; col < 4; ++col)
            for (int row = 0; row < col; ++row, ++k)
                if ((gi >> k) & 1) g.add_edge(row, col);
        bool g_bad = !exact_even_degenerate(g).degenerate;
        for (std::uint64_t ci = 0; ci < 8; ++ci) {
            Graph g2 = g;
            for (int row = 0; row < 3; ++row) {
                bool want = (ci >> row) & 1;
                if (want != g2.has_edge(row, 3)) g2.toggle_edge(row, 3);
            }
            if (g2.edge_count() % 2 != g.edge_count() % 2) continue;
            ++total;
            if (g_bad && !exact_even_degenerate(g2).degenerate) ++both;
        }
    }
    return static_cast<double>(both) / static_cast<double>(total);
}

// Exhaustive process-tree oracle for the removal process at n = 2: every
// graph on 4 vertices, with uniform branching where the process is random.
double exact_removal_process_f(int t, int a) {
    const int n = 2;
    double total = 0;
    for (std::uint64_t gi = 0; gi < 64; ++gi) {
        Graph g(4);
        int k = 0;
        for (int col = 1; col < 4; ++col)
            for (int row = 0; row < col; ++row, ++k)
                if ((gi >> k) & 1) g.add_edge(row, col);
        // recursive expectation over the process
        struct Walker {
            const Graph& g;
            int t, a, n;
            double prob_f(VertexSet remaining, VertexSet removed, int step, bool all_even) {
                if (step == n) {
                    bool ok = all_even && is_t_a_initial(removed, n, t, a);
                    return ok ? 1.0 : 0.0;
                }
                int pick = -1;
                for (int v : remaining)
                    if ((g.neighbors(v) & remaining).count() % 2 == 0) {
                        pick = v;
                        break;
                    }
                if (pick >= 0)
                    return prob_f(remaining.without(pick), removed.with(pick), step + 1, all_even);
                double acc = 0;
                for (int v : remaining)
                    acc += prob_f(remaining.without(v), removed.with(v), step + 1, false);
                return acc / remaining.count();
            }
        } walker{g, t, a, n};
        total += walker.prob_f(g.vertices(), VertexSet{}, 0, true);
    }
    return total / 64.0;
}

} // namespace

TEST_CASE("c_3 is exactly zero") {
    ExperimentRecord r = estimate_c(3, 20000, 5, {1});
    REQUIRE(r.estimate == 0.0);
    REQUIRE(r.tally("nondegenerate") == 0);
    REQUIRE(r.tally("degenerate") == 20000);
}

TEST_CASE("c_4 estimate sits near one eighth") {
    const std::uint64_t samples = 100000;
    ExperimentRecord r = estimate_c(4, samples, 20240810, {2});
    double sigma = binomial_stderr(0.125, samples);
    REQUIRE(std::fabs(r.estimate - 0.125) <= 3 * sigma);
    REQUIRE(r.tally("degenerate") + r.tally("nondegenerate") == samples);
    // greedy failure can only overshoot true non-degeneracy
    REQUIRE(r.tally("greedy_failure") >= r.tally("nondegenerate"));
}

TEST_CASE("three-way decomposability tallies are complete and certified at small n") {
    const std::uint64_t samples = 20000;
    ExperimentRecord r = estimate_nondecomposable(4, 0.5, samples, 99, {2});
    REQUIRE(r.tally("certified_decomposable") + r.tally("certified_nondecomposable") +
                r.tally("unknown") ==
            samples);
    REQUIRE(r.tally("unknown") == 0); // exact oracle covers n = 4
    double sigma = binomial_stderr(1.0 / 32.0, samples);
    REQUIRE(std::fabs(r.estimate - 1.0 / 32.0) <= 4 * sigma);
}

TEST_CASE("classifier matches a direct oracle run over the same stream") {
    const std::uint64_t samples = 1500;
    ExperimentRecord r = estimate_nondecomposable(10, 0.05, samples, 1234, {2});
    std::uint64_t nondec = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        Graph g = sample_gnp_even({10, 0.05, 1234, static_cast<std::uint32_t>(i)});
        if (!exact_even_decomposable(g).decomposable) ++nondec;
    }
    REQUIRE(r.tally("certified_nondecomposable") == nondec);
}

TEST_CASE("very dense graphs are mostly certified non-decomposable") {
    const std::uint64_t samples = 4000;
    ExperimentRecord dense = estimate_nondecomposable(12, 1.0 - 0.1 / 12.0, samples, 31337, {2});
    ExperimentRecord mid = estimate_nondecomposable(12, 0.5, samples, 31337, {2});
    double gap = dense.estimate - mid.estimate;
    double sigma = std::sqrt(dense.stderr_value * dense.stderr_value + mid.stderr_value * mid.stderr_value);
    REQUIRE(gap > 3 * sigma);
}

TEST_CASE("auto dispatch agrees with the exact oracle below the cap") {
    // Below the cap the dispatcher delegates outright; this pins the
    // plumbing on even-conditioned samples at 8 <= n <= 14.
    for (int n = 8; n <= 14; ++n) {
        for (std::uint32_t i = 0; i < 400; ++i) {
            Graph g = sample_gnp_even({n, 0.5, 0xA9BEE, i});
            TrialOutcome t = classify_decomposability(g);
            bool oracle = exact_even_decomposable(g).decomposable;
            REQUIRE(t != TrialOutcome::Unknown);
            REQUIRE((t == TrialOutcome::CertifiedDecomposable) == oracle);
        }
    }
}

TEST_CASE("above the cap the split is three-way and never certifies negatives") {
    const std::uint64_t samples = 200;
    ExperimentRecord r = estimate_nondecomposable(24, 0.5, samples, 2718, {2});
    REQUIRE(r.tally("certified_decomposable") + r.tally("certified_nondecomposable") +
                r.tally("unknown") ==
            samples);
    REQUIRE(r.tally("certified_nondecomposable") == 0); // only the oracle certifies negatives
}

TEST_CASE("b* at s = n equals the plain non-degeneracy estimate on the same stream") {
    ExperimentRecord bs = estimate_b_star(6, 6, 30000, 777, {2});
    ExperimentRecord c = estimate_c(6, 30000, 777, {2});
    REQUIRE(bs.tally("both_nondegenerate") == c.tally("nondegenerate"));
    REQUIRE(bs.estimate == c.estimate);
}

TEST_CASE("b* tallies satisfy event inclusion") {
    ExperimentRecord r = estimate_b_star(8, 7, 20000, 4321, {2});
    REQUIRE(r.tally("both_nondegenerate") <= r.tally("first_nondegenerate"));
    REQUIRE(r.tally("both_nondegenerate") <= r.tally("second_nondegenerate"));
}

TEST_CASE("b* at n = 4 matches full enumeration of linked pairs") {
    double exact = exact_bstar_4();
    const std::uint64_t samples = 300000;
    ExperimentRecord r = estimate_b_star(4, 3, samples, 20240811, {2});
    double sigma = binomial_stderr(exact, samples);
    REQUIRE(std::fabs(r.estimate - exact) <= 3 * sigma);
}

TEST_CASE("removal process matches the exhaustive tree at n = 2") {
    double exact = exact_removal_process_f(1, 1);
    const std::uint64_t samples = 200000;
    ExperimentRecord r = removal_process_stats(2, 1, 1, samples, 555, {2});
    double sigma = binomial_stderr(exact, samples);
    REQUIRE(std::fabs(r.estimate - exact) <= 3 * sigma);
}

TEST_CASE("removal process event is monotone in (t, a)") {
    const std::uint64_t samples = 30000;
    ExperimentRecord loose = removal_process_stats(8, 8, 8, samples, 99, {2});
    ExperimentRecord tight = removal_process_stats(8, 3, 2, samples, 99, {2});
    REQUIRE(loose.estimate >= tight.estimate - 3 * tight.stderr_value);
}

TEST_CASE("records are identical across worker counts") {
    ExperimentRecord a = estimate_c(6, 20000, 12, {1});
    ExperimentRecord b = estimate_c(6, 20000, 12, {2});
    ExperimentRecord c = estimate_c(6, 20000, 12, {8});
    REQUIRE(record_csv_row(a) == record_csv_row(b));
    REQUIRE(record_csv_row(a) == record_csv_row(c));
    REQUIRE(record_json_line(a) == record_json_line(c));
}

TEST_CASE("write_results appends atomically with a stable header") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "evendec_test_out";
    fs::create_directories(dir);
    fs::path csv = dir / "records.csv";
    fs::remove(csv);
    ExperimentRecord r = estimate_c(3, 100, 1, {1});
    write_results({r}, csv.string(), RecordFormat::Csv);
    write_results({r}, csv.string(), RecordFormat::Csv);
    std::string content = slurp(csv.string());
    std::size_t lines = static_cast<std::size_t>(std::count(content.begin(), content.end(), '\n'));
    REQUIRE(lines == 3); // header + two rows
    REQUIRE(content.rfind(kRecordCsvHeader, 0) == 0);
    REQUIRE_FALSE(fs::exists(csv.string() + ".tmp"));

    // A stale temp file from an interrupted writer is simply overwritten and
    // the target stays complete.
    {
        std::ofstream stale(csv.string() + ".tmp");
        stale << "garbage";
    }
    write_results({r}, csv.string(), RecordFormat::Csv);
    content = slurp(csv.string());
    REQUIRE(static_cast<std::size_t>(std::count(content.begin(), content.end(), '\n')) == 4);
    REQUIRE_FALSE(fs::exists(csv.string() + ".tmp"));

    fs::path jsonl = dir / "records.jsonl";
    fs::remove(jsonl);
    write_results({r, r}, jsonl.string(), RecordFormat::Json);
    std::string jcontent = slurp(jsonl.string());
    REQUIRE(static_cast<std::size_t>(std::count(jcontent.begin(), jcontent.end(), '\n')) == 2);
    REQUIRE(jcontent.find("\"experiment\":\"c\"") != std::string::npos);

    // i/o failures carry the path
    REQUIRE_THROWS_WITH(write_results({r}, (dir / "missing_dir" / "x.csv").string(), RecordFormat::Csv),
                        Catch::Matchers::ContainsSubstring("missing_dir"));
    fs::remove_all(dir);
}

TEST_CASE("record rows omit wall-clock time unless asked") {
    ExperimentRecord r = estimate_c(3, 100, 1, {1});
    std::string plain = record_csv_row(r, false);
    REQUIRE(plain.find(",0,") != std::string::npos);
    // runtime column is the third from the end
    auto tail = plain.rfind(',');
    auto mid = plain.rfind(',', tail - 1);
    REQUIRE(plain.substr(mid + 1, tail - mid - 1) == "0");
}

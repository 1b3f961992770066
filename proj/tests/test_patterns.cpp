#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "evendec/graph.hpp"
#include "evendec/patterns.hpp"

using namespace evendec;

namespace {

// Naive induced-subgraph check straight from the pattern's edge list.
bool naive_induces(const Graph& g, const std::vector<int>& tuple,
                   const std::vector<std::pair<int, int>>& pattern_edges) {
    for (std::size_t i = 0; i < tuple.size(); ++i)
        for (std::size_t j = i + 1; j < tuple.size(); ++j) {
            bool want = false;
            for (auto [a, b] : pattern_edges)
                if ((a == static_cast<int>(i) && b == static_cast<int>(j)) ||
                    (a == static_cast<int>(j) && b == static_cast<int>(i)))
                    want = true;
            if (g.has_edge(tuple[i], tuple[j]) != want) return false;
        }
    return true;
}

std::vector<std::pair<int, int>> p3_edges() { return {{0, 1}, {1, 2}, {2, 3}}; }

std::vector<std::pair<int, int>> f_edges() {
    std::vector<std::pair<int, int>> e;
    for (int t = 0; t < 5; ++t)
        for (int s = 5; s < 10; ++s) {
            e.emplace_back(t, s);
            e.emplace_back(10 + t, 10 + s);
        }
    return e;
}

Graph planted_f_instance(int gadgets, int isolated) {
    Graph g(20 * gadgets + isolated);
    for (int i = 0; i < gadgets; ++i) {
        int b = 20 * i;
        for (int x = 0; x < 5; ++x)
            for (int y = 5; y < 10; ++y) {
                g.add_edge(b + x, b + y);
                g.add_edge(b + 10 + x, b + 10 + y);
            }
    }
    return g;
}

} // namespace

TEST_CASE("induced checks agree with the naive checker") {
    std::mt19937 rng(606);
    for (int iter = 0; iter < 300; ++iter) {
        Graph g(8);
        for (int u = 0; u < 8; ++u)
            for (int v = u + 1; v < 8; ++v)
                if (rng() & 1) g.add_edge(u, v);
        std::vector<int> t{0, 1, 2, 3};
        std::shuffle(t.begin(), t.end(), rng);
        REQUIRE(induces_p3(g, t) == naive_induces(g, t, p3_edges()));
    }
    Graph f = planted_f_instance(1, 0);
    std::vector<int> tuple;
    for (int v = 0; v < 20; ++v) tuple.push_back(v);
    REQUIRE(induces_f(f, tuple));
    REQUIRE(naive_induces(f, tuple, f_edges()));
    Graph broken = f;
    broken.add_edge(0, 1); // edge inside a side
    REQUIRE_FALSE(induces_f(broken, tuple));
    REQUIRE_FALSE(naive_induces(broken, tuple, f_edges()));
}

TEST_CASE("P3 packing on simple instances") {
    PatternPacking one = find_disjoint_induced(path_graph(4), Pattern::P3, 1);
    REQUIRE(one.copies.size() == 1);
    REQUIRE(one.copies[0] == std::vector<int>{0, 1, 2, 3});
    REQUIRE_FALSE(one.budget_exhausted);

    PatternPacking none = find_disjoint_induced(complete_graph(4), Pattern::P3, 1);
    REQUIRE(none.copies.empty()); // cliques have no induced P3

    Graph paths(20);
    for (int i = 0; i < 5; ++i) {
        int b = 4 * i;
        paths.add_edge(b, b + 1);
        paths.add_edge(b + 1, b + 2);
        paths.add_edge(b + 2, b + 3);
    }
    PatternPacking five = find_disjoint_induced(paths, Pattern::P3, 5);
    REQUIRE(five.copies.size() == 5);
    REQUIRE(packing_valid(paths, five));
}

TEST_CASE("P3 packing respects its budget") {
    Graph paths(40);
    for (int i = 0; i < 10; ++i) {
        int b = 4 * i;
        paths.add_edge(b, b + 1);
        paths.add_edge(b + 1, b + 2);
        paths.add_edge(b + 2, b + 3);
    }
    PatternPacking p = find_disjoint_induced(paths, Pattern::P3, 10, 3);
    REQUIRE(p.budget_exhausted);
    REQUIRE(p.copies.size() < 10);
    REQUIRE(packing_valid(paths, p));
}

TEST_CASE("F packing finds planted gadgets") {
    Graph g = planted_f_instance(3, 4);
    PatternPacking p = find_disjoint_induced(g, Pattern::F, 3);
    REQUIRE(p.copies.size() == 3);
    REQUIRE_FALSE(p.budget_exhausted);
    REQUIRE(packing_valid(g, p));
    for (const auto& t : p.copies) REQUIRE(naive_induces(g, t, f_edges()));
}

TEST_CASE("F packing flags budget exhaustion away from planted structure") {
    std::mt19937 rng(9090);
    Graph g(40);
    for (int u = 0; u < 40; ++u)
        for (int v = u + 1; v < 40; ++v)
            if (rng() & 1) g.add_edge(u, v);
    PatternPacking p = find_disjoint_induced(g, Pattern::F, 1, 2000);
    REQUIRE(p.copies.empty());
    REQUIRE(p.budget_exhausted);
}

TEST_CASE("packing validity rejects overlaps and broken tuples") {
    Graph paths(8);
    paths.add_edge(0, 1);
    paths.add_edge(1, 2);
    paths.add_edge(2, 3);
    paths.add_edge(4, 5);
    paths.add_edge(5, 6);
    paths.add_edge(6, 7);
    PatternPacking good{Pattern::P3, {{0, 1, 2, 3}, {4, 5, 6, 7}}, false};
    REQUIRE(packing_valid(paths, good));
    PatternPacking overlap{Pattern::P3, {{0, 1, 2, 3}, {3, 4, 5, 6}}, false};
    REQUIRE_FALSE(packing_valid(paths, overlap));
    PatternPacking wrong{Pattern::P3, {{0, 2, 1, 3}}, false};
    REQUIRE_FALSE(packing_valid(paths, wrong));
}

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <vector>

#include "evendec/degeneracy.hpp"
#include "evendec/exact.hpp"
#include "evendec/graph.hpp"

using namespace evendec;

namespace {

// Independent oracle: try every permutation of the vertices.
bool degenerate_by_all_orderings(const Graph& g) {
    int n = g.vertex_count();
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    do {
        if (verify_ordering(g, perm)) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

Graph graph_from_index4(std::uint64_t idx) {
    Graph g(4);
    int k = 0;
    for (int col = 1; col < 4; ++col)
        for (int row = 0; row < col; ++row, ++k)
            if ((idx >> k) & 1) g.add_edge(row, col);
    return g;
}

bool all_odd_degrees(const Graph& g) {
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) % 2 == 0) return false;
    return g.vertex_count() > 0;
}

} // namespace

TEST_CASE("verify_ordering basics") {
    Graph k3 = complete_graph(3);
    REQUIRE(verify_ordering(k3, {0, 1, 2}));
    REQUIRE(verify_ordering(k3, {2, 0, 1}));
    Graph k2 = complete_graph(2);
    REQUIRE(verify_ordering(k2, {0, 1})); // condition range empty
    Graph k4 = complete_graph(4);
    std::vector<int> perm{0, 1, 2, 3};
    do {
        REQUIRE_FALSE(verify_ordering(k4, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    REQUIRE_FALSE(verify_ordering(k3, {0, 1}));    // not a permutation
    REQUIRE_FALSE(verify_ordering(k3, {0, 0, 1})); // repeated vertex
}

TEST_CASE("greedy ordering") {
    Graph empty5(5);
    GreedyOrderingResult r = greedy_ordering(empty5);
    REQUIRE(r.success);
    REQUIRE(r.order == std::vector<int>{0, 1, 2, 3, 4});

    Graph star = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
    r = greedy_ordering(star);
    REQUIRE_FALSE(r.success);
    REQUIRE(r.stuck == star.vertices()); // degrees 3,1,1,1 all odd

    Graph path = path_graph(4);
    r = greedy_ordering(path);
    REQUIRE(r.success);
    REQUIRE(r.order.front() == 1); // the lowest even-degree vertex
    REQUIRE(verify_ordering(path, r.order));
}

TEST_CASE("exact decider matches the all-orderings oracle on every 4-vertex graph") {
    int nondegen = 0;
    for (std::uint64_t idx = 0; idx < 64; ++idx) {
        Graph g = graph_from_index4(idx);
        bool oracle = degenerate_by_all_orderings(g);
        ExactDegeneracyResult ex = exact_even_degenerate(g);
        REQUIRE(ex.degenerate == oracle);
        if (ex.degenerate) REQUIRE(verify_ordering(g, ex.order));
        if (!ex.degenerate) {
            ++nondegen;
            REQUIRE(all_odd_degrees(g));
        }
    }
    REQUIRE(nondegen == 8); // exactly the all-odd-parity class
}

TEST_CASE("every graph on at most three vertices is even-degenerate") {
    for (int n = 0; n <= 3; ++n) {
        int pairs = n * (n - 1) / 2;
        for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << pairs); ++idx) {
            Graph g(n);
            int k = 0;
            for (int col = 1; col < n; ++col)
                for (int row = 0; row < col; ++row, ++k)
                    if ((idx >> k) & 1) g.add_edge(row, col);
            REQUIRE(exact_even_degenerate(g).degenerate);
        }
    }
}

TEST_CASE("K4 is not even-degenerate") {
    REQUIRE_FALSE(degenerate_by_all_orderings(complete_graph(4)));
    REQUIRE_FALSE(exact_even_degenerate(complete_graph(4)).degenerate);
}

TEST_CASE("all-odd-degree graphs with at least three vertices are non-even-degenerate") {
    Graph matching4 = Graph::from_edges(4, {{0, 1}, {2, 3}});
    Graph matching6 = Graph::from_edges(6, {{0, 1}, {2, 3}, {4, 5}});
    Graph star = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
    for (const Graph& g : {complete_graph(4), star, matching4, matching6}) {
        REQUIRE(all_odd_degrees(g));
        REQUIRE_FALSE(exact_even_degenerate(g).degenerate);
    }
}

TEST_CASE("greedy success implies the exact decider accepts") {
    std::mt19937 rng(31337);
    for (int iter = 0; iter < 300; ++iter) {
        int n = 1 + static_cast<int>(rng() % 10);
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng() & 1) g.add_edge(u, v);
        GreedyOrderingResult greedy = greedy_ordering(g);
        if (greedy.success) {
            REQUIRE(verify_ordering(g, greedy.order));
            REQUIRE(exact_even_degenerate(g).degenerate);
        }
    }
}

TEST_CASE("suffix parity is constant along accepted orderings") {
    std::mt19937 rng(2025);
    for (int iter = 0; iter < 200; ++iter) {
        int n = 2 + static_cast<int>(rng() % 9);
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng() & 1) g.add_edge(u, v);
        ExactDegeneracyResult ex = exact_even_degenerate(g);
        if (ex.degenerate) {
            REQUIRE(verify_ordering(g, ex.order));
            REQUIRE(ordering_suffix_parity_constant(g, ex.order));
        }
    }
}

TEST_CASE("even-degenerate with even edges induces a decomposition witness") {
    // Exhaustive over n = 4 and 5; n = 6 runs in the acceptance suite.
    for (int n = 4; n <= 5; ++n) {
        int pairs = n * (n - 1) / 2;
        for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << pairs); ++idx) {
            Graph g(n);
            int k = 0;
            for (int col = 1; col < n; ++col)
                for (int row = 0; row < col; ++row, ++k)
                    if ((idx >> k) & 1) g.add_edge(row, col);
            if (g.edge_count() % 2 != 0) continue;
            ExactDegeneracyResult ex = exact_even_degenerate(g);
            if (!ex.degenerate) continue;
            REQUIRE(verify_witness(g, ordering_to_witness(g, ex.order)));
        }
    }
}

TEST_CASE("degeneracy cap raises a resource error") {
    REQUIRE_THROWS_AS(exact_even_degenerate(Graph(30), 24), ResourceError);
}

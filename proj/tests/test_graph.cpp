#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "evendec/graph.hpp"

using namespace evendec;

namespace {

Graph random_graph(int n, double p, std::mt19937& rng) {
    Graph g(n);
    std::bernoulli_distribution coin(p);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    return g;
}

// Brute-force clique number over all vertex subsets.
int clique_number_naive(const Graph& g) {
    int n = g.vertex_count();
    int best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        VertexSet s{mask};
        if (s.count() > best && is_clique(g, s)) best = s.count();
    }
    return best;
}

} // namespace

TEST_CASE("vertex set basics") {
    VertexSet s = VertexSet::of({0, 2, 5});
    REQUIRE(s.count() == 3);
    REQUIRE(s.contains(2));
    REQUIRE_FALSE(s.contains(1));
    REQUIRE(s.lowest() == 0);
    REQUIRE(s.without(0).lowest() == 2);
    REQUIRE((s - VertexSet::single(2)) == VertexSet::of({0, 5}));
    REQUIRE(s.subset_of(VertexSet::full(6)));
    REQUIRE(s.to_vector() == std::vector<int>{0, 2, 5});
    REQUIRE(VertexSet::full(64).count() == 64);
    REQUIRE(VertexSet{}.empty());
}

TEST_CASE("builders keep the graph invariants") {
    for (const Graph& g : {complete_graph(5), path_graph(6), cycle_graph(7), complete_bipartite(3, 4),
                           complement(path_graph(5)), disjoint_union(complete_graph(3), cycle_graph(4))}) {
        REQUIRE(g.well_formed());
    }
    REQUIRE(complete_graph(5).edge_count() == 10);
    REQUIRE(cycle_graph(5).edge_count() == 5);
    REQUIRE(complete_bipartite(3, 4).edge_count() == 12);
}

TEST_CASE("edge parity") {
    Graph k4 = complete_graph(4);
    REQUIRE(edge_parity(k4, k4.vertices()) == 0); // six edges
    REQUIRE(edge_parity(k4, VertexSet::of({0, 1, 2})) == 1);
    REQUIRE(edge_parity(k4, VertexSet::of({1, 2, 3})) == 1);
    REQUIRE(edge_parity(k4, VertexSet{}) == 0);
}

TEST_CASE("edge parity agrees with summed degrees") {
    std::mt19937 rng(20240811);
    for (int iter = 0; iter < 200; ++iter) {
        int n = 1 + static_cast<int>(rng() % 12);
        Graph g = random_graph(n, 0.4, rng);
        std::uint64_t wbits = rng() & VertexSet::full(n).bits;
        VertexSet w{wbits};
        long sum = 0;
        for (int v : w) sum += degree_in(g, w, v);
        REQUIRE(sum % 2 == 0);
        REQUIRE(edge_parity(g, w) == (sum / 2) % 2);
        REQUIRE(edges_in(g, w) == sum / 2);
    }
}

TEST_CASE("independence") {
    Graph c4 = cycle_graph(4);
    REQUIRE(is_independent(c4, VertexSet::of({0, 2})));
    REQUIRE(is_independent(c4, VertexSet::of({1, 3})));
    Graph k4 = complete_graph(4);
    REQUIRE_FALSE(is_independent(k4, VertexSet::of({0, 1})));
    REQUIRE_FALSE(is_independent(k4, VertexSet::of({1, 2, 3})));
    REQUIRE(is_independent(k4, VertexSet::single(2)));
    REQUIRE(is_independent(k4, VertexSet{}));
}

TEST_CASE("degree in a window") {
    Graph k4 = complete_graph(4);
    REQUIRE(degree_in(k4, k4.vertices(), 0) == 3);
    REQUIRE(degree_in(k4, VertexSet::of({0, 1}), 0) == 1);
    Graph empty(5);
    REQUIRE(degree_in(empty, empty.vertices(), 3) == 0);
}

TEST_CASE("clique decision examples") {
    REQUIRE(has_clique_of_size(complete_graph(4), 4));
    REQUIRE_FALSE(has_clique_of_size(cycle_graph(5), 3));
    Graph g(3);
    REQUIRE(has_clique_of_size(g, 0));
    REQUIRE(has_clique_of_size(g, 1));
    REQUIRE_FALSE(has_clique_of_size(Graph(0), 1));
    REQUIRE(has_clique_of_size(complete_bipartite(4, 4), 2));
    REQUIRE_FALSE(has_clique_of_size(complete_bipartite(4, 4), 3));
}

TEST_CASE("clique decision matches subset enumeration") {
    std::mt19937 rng(77);
    for (int iter = 0; iter < 60; ++iter) {
        int n = 1 + static_cast<int>(rng() % 10);
        double p = (iter % 3 == 0) ? 0.8 : 0.4;
        Graph g = random_graph(n, p, rng);
        int omega = clique_number_naive(g);
        REQUIRE(clique_number(g) == omega);
        for (int k = 0; k <= n + 1; ++k) REQUIRE(has_clique_of_size(g, k) == (k <= omega));
    }
}

TEST_CASE("relabel preserves structure") {
    std::mt19937 rng(5);
    Graph g = random_graph(8, 0.5, rng);
    std::vector<int> perm{3, 1, 4, 0, 5, 2, 7, 6};
    Graph h = relabel(g, perm);
    REQUIRE(h.well_formed());
    REQUIRE(h.edge_count() == g.edge_count());
    for (int u = 0; u < 8; ++u)
        for (int v = u + 1; v < 8; ++v) REQUIRE(g.has_edge(u, v) == h.has_edge(perm[u], perm[v]));
}

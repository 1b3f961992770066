#include <catch2/catch_amalgamated.hpp>

#include "evendec/engine.hpp"
#include "evendec/rigs.hpp"

using namespace evendec;

TEST_CASE("p3 rigs realize the requested parity signature") {
    for (std::uint8_t sig = 0; sig < 16; ++sig) {
        for (int m : {0, 2, 4}) {
            for (bool complete : {false, true}) {
                P3Rig rig = build_p3_rig(sig, m, complete);
                REQUIRE(rig.g.well_formed());
                for (int u = 0; u < 4; ++u)
                    REQUIRE(degree_in(rig.g, rig.g.vertices(), u) % 2 == ((sig >> (3 - u)) & 1));
                for (int k : rig.c) REQUIRE(degree_in(rig.g, rig.g.vertices(), k) % 2 == 1);
                REQUIRE(induces_p3(rig.g, {0, 1, 2, 3}));
                for (int u = 0; u < 4; ++u)
                    REQUIRE(((rig.g.neighbors(u) & rig.c) == (complete ? rig.c : VertexSet{})));
            }
        }
    }
}

TEST_CASE("absorb rigs realize cross patterns and parities") {
    const int na = 2, nb = 3;
    const std::uint32_t cross = 0b010101, v_adj = 0b10010, parity = 0b011010;
    AbsorbVertexRig rig = build_absorb_vertex_rig(na, nb, cross, v_adj, parity);
    REQUIRE(rig.g.well_formed());
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
            REQUIRE(rig.g.has_edge(i, na + j) == (((cross >> (i * nb + j)) & 1) != 0));
    for (int x = 0; x < na + nb; ++x)
        REQUIRE(rig.g.has_edge(x, rig.v) == (((v_adj >> x) & 1) != 0));
    for (int x = 0; x <= na + nb; ++x)
        REQUIRE(degree_in(rig.g, rig.g.vertices(), x) % 2 == static_cast<int>((parity >> x) & 1));
    REQUIRE(absorb_cross_pattern_valid(2, 2, 0b1001));
    REQUIRE_FALSE(absorb_cross_pattern_valid(2, 2, 0b1101)); // a row is complete
    REQUIRE_FALSE(absorb_cross_pattern_valid(2, 2, 0b0000));
}

TEST_CASE("the full lemma suite passes") {
    std::vector<LemmaCaseResult> results = run_lemma_suite();
    REQUIRE_FALSE(results.empty());
    long stage_cases = 0;
    for (const LemmaCaseResult& r : results) {
        INFO(r.name << ": " << r.detail);
        REQUIRE(r.pass);
        if (r.name.find("stage") != std::string::npos) ++stage_cases;
    }
    // 16 signatures x (4 sizes for stage 2, 3 sizes for stage 3), dense and
    // sparse alike.
    REQUIRE(stage_cases == 2 * (16 * 4 + 16 * 3));
}

TEST_CASE("planted instances decompose and verify") {
    for (std::uint32_t i = 0; i < 25; ++i) {
        PlantedUniform pu = planted_uniform_instance(2024, i);
        REQUIRE(pu.g.edge_count() % 2 == 0);
        REQUIRE(packing_valid(pu.g, pu.packing));
        REQUIRE_FALSE(has_clique_of_size(pu.g, pu.t + 1));
        EngineOutcome ou = decompose_uniform(pu.g, pu.packing, pu.t);
        REQUIRE(ou.status == EngineStatus::Decomposed);
        REQUIRE(verify_witness(pu.g, ou.witness));

        PlantedStaged ps = planted_sparse_instance(2024, i);
        REQUIRE(ps.g.edge_count() % 2 == 0);
        EngineOutcome os = decompose_sparse(ps.g, ps.cfg);
        REQUIRE(os.status == EngineStatus::Decomposed);
        REQUIRE(verify_witness(ps.g, os.witness));

        PlantedStaged pd = planted_dense_instance(2024, i);
        REQUIRE(pd.g.edge_count() % 2 == 0);
        EngineOutcome od = decompose_dense(pd.g, pd.cfg);
        REQUIRE(od.status == EngineStatus::Decomposed);
        REQUIRE(verify_witness(pd.g, od.witness));
    }
}

#include <catch2/catch_amalgamated.hpp>

#include "evendec/stats.hpp"

using namespace evendec;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("regularized incomplete gamma against reference values") {
    // Reference values computed with scipy.special.gammaincc.
    REQUIRE_THAT(gamma_q(0.5, 0.25), WithinRel(0.479500122186953, 1e-12));
    REQUIRE_THAT(gamma_q(3.0, 2.0), WithinRel(0.676676416183063, 1e-12));
    REQUIRE_THAT(gamma_q(63.5, 51.7), WithinRel(0.93839350903182, 1e-12));
    REQUIRE_THAT(gamma_q(63.5, 60.0), WithinRel(0.657451329669133, 1e-12));
    REQUIRE_THAT(gamma_q(63.5, 93.25), WithinRel(0.000463737944053149, 1e-10));
    REQUIRE(gamma_q(5.0, 0.0) == 1.0);
    REQUIRE_THROWS_AS(gamma_q(0.0, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(gamma_q(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("chi-squared survival function") {
    // scipy.stats.chi2.sf references.
    REQUIRE_THAT(chi2_sf(0.8, 3), WithinRel(0.849467033391825, 1e-12));
    REQUIRE_THAT(chi2_sf(150.0, 127), WithinRel(0.0799419870174921, 1e-11));
    REQUIRE_THAT(chi2_sf(63.0, 63), WithinRel(0.47630238333813, 1e-12));
    // critical region at significance 1e-3 for df=127 sits near 182.0
    REQUIRE(chi2_sf(181.9, 127) > 1e-3);
    REQUIRE(chi2_sf(182.1, 127) < 1e-3);
}

TEST_CASE("uniform goodness of fit") {
    GofResult flat = chi2_uniform_gof({10, 10, 10, 10});
    REQUIRE(flat.statistic == 0.0);
    REQUIRE(flat.p_value == 1.0);
    GofResult r = chi2_uniform_gof({12, 8, 10, 10});
    REQUIRE_THAT(r.statistic, WithinAbs(0.8, 1e-12));
    REQUIRE(r.dof == 3.0);
    REQUIRE_THAT(r.p_value, WithinRel(0.849467033391825, 1e-12));
    REQUIRE_THROWS_AS(chi2_uniform_gof({5}), std::invalid_argument);
    REQUIRE_THROWS_AS(chi2_uniform_gof({0, 0}), std::invalid_argument);
}

TEST_CASE("binomial standard error") {
    REQUIRE_THAT(binomial_stderr(0.5, 100), WithinAbs(0.05, 1e-12));
    REQUIRE(binomial_stderr(0.0, 1000) == 0.0);
    REQUIRE(binomial_stderr(0.3, 0) == 0.0);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eftlab/sphi.hpp"

using namespace eftlab;

namespace {
const Domain kBall1 = Domain::ball(1, 1.0);
const Domain kBall2 = Domain::ball(2, 1.0);
}  // namespace

TEST_CASE("axiom report for the identity power") {
    const auto rep = phi_axioms_check(PhiFn::power(1.0), 400);
    CHECK(rep.zero_at_zero);
    CHECK(rep.nondecreasing);
    CHECK(rep.positive);
    CHECK(rep.quasi_additive_sampled);
    CHECK(rep.c_estimate == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.doubling_limsup == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rep.midpoint_convex);
    CHECK(rep.all_pass());
}

TEST_CASE("axiom report for the entropy weight") {
    const auto rep = phi_axioms_check(PhiFn::entropy(), 400);
    CHECK(rep.all_pass());
    // the doubling ratio tends to 2 from below near zero
    CHECK(rep.doubling_limsup == doctest::Approx(2.0).epsilon(0.01));
    CHECK(rep.doubling_limsup <= 2.0);
    // t(-ln t) is concave, so quasi-additivity holds with constant 1
    CHECK(rep.c_estimate <= 1.0 + 1e-9);
    CHECK_FALSE(rep.midpoint_convex);
}

TEST_CASE("axiom report for the square power") {
    const auto rep = phi_axioms_check(PhiFn::power(2.0), 400);
    CHECK(rep.all_pass());
    CHECK(rep.midpoint_convex);
    CHECK(rep.c_estimate <= 2.0 + 1e-9);          // (a+b)^2 <= 2a^2 + 2b^2
    CHECK(rep.c_estimate == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(rep.doubling_limsup == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("axiom check input validation") {
    CHECK_THROWS_AS(phi_axioms_check(PhiFn::power(1.0), 50), std::invalid_argument);
    CHECK_THROWS_AS(PhiFn::power(0.0), std::invalid_argument);
}

TEST_CASE("custom tables") {
    const auto phi = PhiFn::custom_table({1e-6, 1e-4, 1e-2, 1.0}, {1e-3, 1e-2, 1e-1, 1.0});
    CHECK(phi(0.0) == 0.0);
    CHECK(phi(1e-4) == doctest::Approx(1e-2));
    CHECK(phi(1e-3) == doctest::Approx(std::sqrt(1e-2 * 1e-1)));  // log-log midpoint
    // power-law extension below the table
    CHECK(phi(1e-8) == doctest::Approx(1e-4).epsilon(1e-9));
    CHECK(phi(1e-8) > 0.0);

    CHECK_THROWS_AS(PhiFn::custom_table({1e-2, 1e-1}, {0.1, 0.2}), std::invalid_argument);
    CHECK_THROWS_AS(PhiFn::custom_table({1e-2, 1e-1, 1.0}, {0.3, 0.2, 0.5}), std::invalid_argument);
}

TEST_CASE("membership thresholds for exponential potentials") {
    // weighted integrand ~ tau^{-N beta / alpha}: finite iff N beta > alpha
    const struct { double alpha, beta; bool finite; } cases[] = {
        {1.0, 1.0, true},  {1.5, 1.0, true},  {2.5, 1.0, false},
        {1.0, 0.4, false}, {1.0, 0.6, true},  {3.0, 2.0, true},
    };
    for (const auto& c : cases) {
        INFO("alpha=", c.alpha, " beta=", c.beta);
        const auto v = sphi_membership(PotentialSpec::radial_exp(c.alpha, kBall2), PhiFn::power(c.beta));
        CHECK((v.status == VerdictStatus::Finite) == c.finite);
        if (!c.finite) CHECK(v.status == VerdictStatus::Divergent);
    }
}

TEST_CASE("membership of the half-dimension exponential under the entropy weight") {
    const auto v = sphi_membership(PotentialSpec::radial_exp(0.5 * kBall2.dimension, kBall2),
                                   PhiFn::entropy());
    CHECK(v.status == VerdictStatus::Finite);
    CHECK(v.blocks_used() >= 8);
}

TEST_CASE("constants are members for every admitted weight") {
    for (const auto& phi : {PhiFn::power(0.5), PhiFn::power(1.0), PhiFn::entropy()}) {
        const auto v = sphi_membership(PotentialSpec::constant(1.0, kBall1), phi);
        CHECK(v.status == VerdictStatus::Finite);
        CHECK(v.value == doctest::Approx(0.0));  // integrand vanishes below the infimum
    }
}

TEST_CASE("closure under scaling and powers") {
    const auto base = PotentialSpec::radial_exp(1.0, kBall2);
    const auto phi = PhiFn::power(1.0);
    REQUIRE(sphi_membership(base, phi).finite());

    for (double lam : {0.1, 10.0}) {
        const auto scaled = PotentialSpec::product(base, PotentialSpec::constant(lam, kBall2));
        CHECK(sphi_membership(scaled, phi).finite());
    }
    for (double kappa : {0.5, 2.0}) {
        // |a|^kappa = exp(-kappa / r): a constant modulus with the same decay rate
        const auto powered =
            PotentialSpec::radial_omega(OmegaFn::constant(kappa), 1.0, kBall2);
        CHECK(sphi_membership(powered, phi).finite());
    }
}

TEST_CASE("product stability on members") {
    const auto phi = PhiFn::power(1.0);
    const auto a = PotentialSpec::radial_exp(0.8, kBall2);
    const auto b = PotentialSpec::radial_exp(1.2, kBall2);
    REQUIRE(sphi_membership(a, phi).finite());
    REQUIRE(sphi_membership(b, phi).finite());
    CHECK(sphi_membership(PotentialSpec::product(a, b), phi).finite());
}

TEST_CASE("membership precondition failure") {
    // a == 0 keeps the sublevel measure at |Omega| > gamma for every cutoff
    CHECK_THROWS_AS(sphi_membership(PotentialSpec::constant(0.0, kBall2), PhiFn::entropy()),
                    std::invalid_argument);
}

TEST_CASE("weight grammar") {
    CHECK(parse_phi("phi:entropy").kind() == PhiKind::Entropy);
    const auto p = parse_phi("phi:power:beta=0.5");
    CHECK(p.kind() == PhiKind::Power);
    CHECK(p(4.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(parse_phi("phi:unknown"), std::invalid_argument);
    CHECK_THROWS_AS(parse_phi("power:beta=1"), std::invalid_argument);
}

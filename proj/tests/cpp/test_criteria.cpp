#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eftlab/criteria.hpp"

using namespace eftlab;

namespace {
constexpr double kInvE = 0.36787944117144233;
const Domain kBall1 = Domain::ball(1, 1.0);
const Domain kBall2 = Domain::ball(2, 1.0);
const Domain kBall3 = Domain::ball(3, 1.0);
}  // namespace

TEST_CASE("classification engine on closed forms") {
    // antiderivative of s^{-1} (-ln s)^{-2} is 1/(-ln s): value 1 at c = 1/e
    auto v = classify_improper_integral(
        [](double s) { return 1.0 / (s * std::pow(-std::log(s), 2.0)); }, kInvE);
    CHECK(v.status == VerdictStatus::Finite);
    CHECK(v.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(v.blocks_used() >= 8);

    // harmonic log scale: iterated-log antiderivative diverges
    v = classify_improper_integral([](double s) { return 1.0 / (s * (-std::log(s))); }, kInvE);
    CHECK(v.status == VerdictStatus::Divergent);

    // slow but convergent: 10 (-ln s)^{-0.1} antiderivative, value 10 at c = 1/e
    v = classify_improper_integral(
        [](double s) { return 1.0 / (s * std::pow(-std::log(s), 1.1)); }, kInvE);
    CHECK(v.status == VerdictStatus::Finite);
    CHECK(v.value == doctest::Approx(10.0).epsilon(1e-6));

    // strong power divergence
    v = classify_improper_integral([](double s) { return std::pow(s, -1.2); }, kInvE);
    CHECK(v.status == VerdictStatus::Divergent);

    // fully integrable endpoint
    v = classify_improper_integral([](double s) { return std::sqrt(s); }, kInvE);
    CHECK(v.status == VerdictStatus::Finite);
    CHECK(v.value == doctest::Approx(std::pow(kInvE, 1.5) * 2.0 / 3.0).epsilon(1e-8));

    // an upper limit past e^{-1} routes the smooth piece through plain
    // quadrature; the total still matches the antiderivative
    v = classify_improper_integral([](double s) { return std::sqrt(s); }, 0.9);
    CHECK(v.status == VerdictStatus::Finite);
    CHECK(v.value == doctest::Approx(std::pow(0.9, 1.5) * 2.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("engine edge behavior") {
    // NaN from the integrand surfaces as an evaluation error with the point
    CHECK_THROWS_AS(classify_improper_integral(
                        [](double s) { return s < 1e-4 ? std::nan("") : 1.0; }, kInvE),
                    IntegrandError);
    CHECK_THROWS_AS(classify_improper_integral([](double) { return 1.0; }, 0.0),
                    std::invalid_argument);

    // near-boundary exponent: decaying too slowly for the decay rule, not
    // monotone growth either -> inconclusive escape
    const auto v = classify_improper_integral(
        [](double s) { return 1.0 / (s * std::pow(-std::log(s), 1.005)); }, kInvE);
    CHECK(v.status == VerdictStatus::Inconclusive);

    // diagnostics always carry the dyadic blocks
    const auto fin = classify_improper_integral([](double s) { return std::sqrt(s); }, kInvE);
    CHECK(fin.blocks.size() >= 8);
    CHECK(fin.block_ratios.size() + 1 == fin.blocks.size());
}

TEST_CASE("criterion parameters") {
    CHECK(CriterionParams(1, 3).theta() == doctest::Approx(2.0 / 3.0));
    CHECK(CriterionParams(2, 3).theta() == doctest::Approx(1.0));
    CHECK(CriterionParams(1, 5).theta() == doctest::Approx(0.4));
    CHECK(CriterionParams(1, 2).critical());
    CHECK_THROWS_AS(CriterionParams(1, 2).theta(), std::logic_error);
    CHECK_THROWS_AS(CriterionParams(0, 1), std::invalid_argument);
}

TEST_CASE("entropy weight") {
    CHECK(entropy_weight(0.0) == 0.0);
    CHECK(entropy_weight(kInvE) == doctest::Approx(kInvE));
    CHECK(entropy_weight(0.9) == doctest::Approx(kInvE));  // clamped
    CHECK(entropy_weight(0.1) == doctest::Approx(0.1 * std::log(10.0)));
}

TEST_CASE("sublevel decay test: nondegenerate potentials") {
    // a >= gamma > 0: integral truncates at gamma, value |Omega|^theta ln(1/gamma)
    const CriterionParams params(1, 3);
    for (double gamma : {0.2, 0.5}) {
        const auto v = eft_criterion(PotentialSpec::constant(gamma, kBall1), params);
        CHECK(v.status == VerdictStatus::Finite);
        const double expect = std::pow(2.0, params.theta()) * std::log(1.0 / gamma);
        CHECK(v.value == doctest::Approx(expect).epsilon(1e-6));
    }
}

TEST_CASE("sublevel decay test: radial exponential thresholds") {
    const CriterionParams params(1, 3);
    CHECK(eft_criterion(PotentialSpec::radial_exp(1.0, kBall3), params).status ==
          VerdictStatus::Finite);
    CHECK(eft_criterion(PotentialSpec::radial_exp(3.0, kBall3), params).status ==
          VerdictStatus::Divergent);

    // the boundary law: finite iff alpha < min(2m, N)
    for (double alpha : {0.5, 1.0, 1.9}) {
        INFO("alpha = ", alpha);
        CHECK(eft_criterion(PotentialSpec::radial_exp(alpha, kBall3), params).status ==
              VerdictStatus::Finite);
    }
    for (double alpha : {2.0, 2.5, 3.5}) {
        INFO("alpha = ", alpha);
        CHECK(eft_criterion(PotentialSpec::radial_exp(alpha, kBall3), params).status ==
              VerdictStatus::Divergent);
    }
}

TEST_CASE("sublevel decay test: critical pairing uses the entropy weight") {
    const CriterionParams params(1, 2);
    CHECK(params.critical());
    CHECK(eft_criterion(PotentialSpec::radial_exp(1.0, kBall2), params).status ==
          VerdictStatus::Finite);
    CHECK(eft_criterion(PotentialSpec::radial_exp(3.0, kBall2), params).status ==
          VerdictStatus::Divergent);

    // the higher-order critical pairing (m = 2, N = 4) behaves the same way
    const CriterionParams fourth(2, 4);
    CHECK(fourth.critical());
    const Domain ball4 = Domain::ball(4, 1.0);
    CHECK(eft_criterion(PotentialSpec::radial_exp(2.0, ball4), fourth).status ==
          VerdictStatus::Finite);
    CHECK(eft_criterion(PotentialSpec::radial_exp(5.0, ball4), fourth).status ==
          VerdictStatus::Divergent);
}

TEST_CASE("verdict is invariant under potential rescaling") {
    const CriterionParams params(1, 3);
    for (double alpha : {1.0, 3.0}) {
        const auto base = PotentialSpec::radial_exp(alpha, kBall3);
        const auto v0 = eft_criterion(base, params).status;
        for (double lam : {0.1, 10.0}) {
            const auto scaled =
                PotentialSpec::product(base, PotentialSpec::constant(lam, kBall3));
            CHECK(eft_criterion(scaled, params).status == v0);
        }
    }
}

TEST_CASE("verdict monotonicity under pointwise domination") {
    // a <= b pointwise: exp(-1/r^1.5) <= exp(-1/r) on r < 1
    const CriterionParams params(1, 3);
    const auto small = PotentialSpec::radial_exp(1.5, kBall3);
    const auto big = PotentialSpec::radial_exp(1.0, kBall3);
    for (double r : {0.2, 0.5, 0.9}) CHECK(small.eval_radial(r) <= big.eval_radial(r));
    REQUIRE(eft_criterion(small, params).status == VerdictStatus::Finite);
    CHECK(eft_criterion(big, params).status == VerdictStatus::Finite);
}

TEST_CASE("log-integrability test") {
    const CriterionParams params(1, 3);
    // |ln a|^p = r^{-p alpha}: integrable over the 3-ball iff p alpha < 3
    auto r = log_lp_criterion(PotentialSpec::radial_exp(1.0, kBall3), 2.0, params);
    CHECK(r.verdict == TriVerdict::Holds);
    CHECK(r.threshold == doctest::Approx(1.5));
    {
        // radial quadrature oracle: integral of r^{-2} over the unit 3-ball
        const double oracle = 3.0 * unit_ball_volume(3) * 1.0;  // N C_N int r^{N-1-2} dr = 4 pi
        CHECK(r.integral_value == doctest::Approx(oracle).epsilon(1e-6));
    }

    r = log_lp_criterion(PotentialSpec::radial_exp(3.0, kBall3), 2.0, params);
    CHECK(r.verdict == TriVerdict::Fails);
    CHECK(r.integral_status == VerdictStatus::Divergent);

    r = log_lp_criterion(PotentialSpec::constant(0.5, kBall3), 2.0, params);
    CHECK(r.verdict == TriVerdict::Holds);
    CHECK(r.integral_value ==
          doctest::Approx(std::pow(std::log(2.0), 2.0) * kBall3.measure()).epsilon(1e-8));

    // the two threshold statements differ; both are exposed
    const auto theta_stmt =
        log_lp_criterion(PotentialSpec::radial_exp(1.0, kBall3), 1.0, params, LogLpThreshold::Theta);
    CHECK(theta_stmt.threshold == doctest::Approx(2.0 / 3.0));
    CHECK(theta_stmt.verdict == TriVerdict::Holds);
    const auto half_stmt = log_lp_criterion(PotentialSpec::radial_exp(1.0, kBall3), 1.0, params,
                                            LogLpThreshold::HalfDimension);
    CHECK(half_stmt.verdict == TriVerdict::Fails);  // 1 < 3/2, integral finite but p too small

    // vanishing on a set of positive measure fails immediately
    std::vector<double> vals(static_cast<size_t>(kBall1.resolution), 0.5);
    for (size_t i = 0; i < vals.size() / 4; ++i) vals[i] = 0.0;
    const auto zeroed = PotentialSpec::grid_sampled(vals, kBall1);
    CHECK(log_lp_criterion(zeroed, 2.0, CriterionParams(1, 1)).verdict == TriVerdict::Fails);
}

TEST_CASE("comparison-function test") {
    const CriterionParams params(1, 3);

    // f(s) = s^{-1/2} with a bounded away from zero: both parts finite
    auto res = f_criterion([](double s) { return std::pow(s, -0.5); },
                           PotentialSpec::constant(1.0, kBall3), params);
    CHECK(res.l1_status == VerdictStatus::Finite);
    CHECK(res.weight.status == VerdictStatus::Finite);
    CHECK(res.overall == VerdictStatus::Finite);
    // s^{-1+theta/2} integrates to c^{theta/2}/(theta/2) over (0, 1)
    CHECK(res.weight.value == doctest::Approx(3.0).epsilon(1e-6));

    // f too flat: integral s^{-1} f^{-theta} = s^{-1} (-ln s)^{-2/3} diverges
    res = f_criterion([](double s) { return -std::log(s); },
                      PotentialSpec::radial_exp(1.0, kBall3), params);
    CHECK(res.weight.status == VerdictStatus::Divergent);
    CHECK(res.overall == VerdictStatus::Divergent);

    // super-polynomial growth on the log scale converges fast
    res = f_criterion(
        [](double s) {
            const double l = -std::log(std::min(s, kInvE));
            return std::exp(l * l);
        },
        PotentialSpec::constant(0.5, kBall3), params);
    CHECK(res.weight.status == VerdictStatus::Finite);
    CHECK(res.overall == VerdictStatus::Finite);

    // f(a(.)) not integrable: f = s^{-1/2} against a doubly-degenerate factor
    res = f_criterion([](double s) { return std::pow(s, -2.0); },
                      PotentialSpec::radial_exp(1.0, kBall3), params);
    CHECK(res.l1_status == VerdictStatus::Divergent);
    CHECK(res.overall == VerdictStatus::Divergent);

    CHECK_THROWS_AS(f_criterion([](double s) { return s; },
                                PotentialSpec::constant(1.0, kBall3), params),
                    std::invalid_argument);
}

TEST_CASE("modulus test") {
    const CriterionParams noncritical(1, 3);
    const CriterionParams critical(1, 2);

    auto v = dini_criterion(OmegaFn::inverse_log_power(2.0), noncritical);
    CHECK(v.status == VerdictStatus::Finite);
    CHECK(v.value == doctest::Approx(1.0).epsilon(1e-6));

    v = dini_criterion(OmegaFn::constant(0.3), noncritical);
    CHECK(v.status == VerdictStatus::Divergent);

    v = dini_criterion(OmegaFn::power(0.5), critical);
    CHECK(v.status == VerdictStatus::Finite);

    CHECK_THROWS_AS(dini_criterion(OmegaFn::custom([](double s) { return 1.0 - s; }, "bad"),
                                   noncritical),
                    std::invalid_argument);
}

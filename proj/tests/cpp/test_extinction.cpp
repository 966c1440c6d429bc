#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eftlab/extinction.hpp"

using namespace eftlab;

namespace {

LambdaCurve sampled_curve(const std::function<double(double)>& f, double h_lo, double h_hi,
                          int per_decade) {
    std::vector<double> hs, ls;
    const double decades = std::log10(h_hi / h_lo);
    const int pts = std::max(8, static_cast<int>(decades * per_decade));
    for (int i = 0; i <= pts; ++i) {
        const double h = h_lo * std::pow(h_hi / h_lo, static_cast<double>(i) / pts);
        hs.push_back(h);
        ls.push_back(f(h));
    }
    return LambdaCurve::from_samples(hs, ls);
}

// independent high-resolution quadrature in log space for the bound oracle
double quad_inv_lambda(const std::function<double(double)>& lambda, double lo, double hi) {
    const int n = 200000;
    const double u0 = std::log(lo), u1 = std::log(hi), du = (u1 - u0) / n;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double u = u0 + i * du;
        const double w = (i == 0 || i == n) ? 0.5 : 1.0;
        const double h = std::exp(u);
        sum += w * h / lambda(h);
    }
    return sum * du;
}

}  // namespace

TEST_CASE("closed-form power-law bound") {
    const auto curve = sampled_curve([](double h) { return std::pow(h, 0.75); }, 1e-8, 1.0, 64);
    const auto bound = extinction_bound(curve, 1.0);
    REQUIRE(bound.has_bound);
    CHECK(bound.time == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(bound.tail.beta == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(bound.tail.kappa == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("linear level has no bound") {
    const auto curve = sampled_curve([](double h) { return M_PI * M_PI * h; }, 1e-8, 1.0, 32);
    const auto bound = extinction_bound(curve, 1.0);
    CHECK_FALSE(bound.has_bound);
    CHECK(bound.tail.beta == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("log-corrected level against a fine quadrature oracle") {
    const auto lambda = [](double h) { return std::pow(h, 0.9) * (-std::log(h)); };
    const double y0 = std::exp(-1.0);
    const auto curve = sampled_curve(lambda, 1e-6, y0, 2000);
    const auto bound = extinction_bound(curve, y0);
    REQUIRE(bound.has_bound);

    // quadrature part: must match the oracle integral over the sampled range
    const double oracle_main = 0.5 * quad_inv_lambda(lambda, curve.h_min(), y0);
    CHECK(bound.main_part == doctest::Approx(oracle_main).epsilon(3e-6));

    // the power-law tail extrapolation is the sole model error in the bound;
    // it tracks the oracle tail to the slowly varying log factor
    const double oracle_tail = 0.5 * quad_inv_lambda(lambda, 1e-30, curve.h_min());
    const double got_tail = 0.5 * bound.tail.contribution;
    CHECK(got_tail == doctest::Approx(oracle_tail).epsilon(0.15));
    CHECK(bound.time == doctest::Approx(oracle_main + oracle_tail).epsilon(0.02));
}

TEST_CASE("bound input validation") {
    const auto curve = sampled_curve([](double h) { return std::pow(h, 0.5); }, 1e-8, 1.0, 16);
    CHECK_THROWS_AS(extinction_bound(curve, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(extinction_bound(curve, 0.0), std::invalid_argument);

    const auto narrow = LambdaCurve::from_samples({0.1, 0.2, 0.4, 0.8}, {1.0, 2.0, 3.0, 4.0});
    CHECK_THROWS_AS(extinction_bound(narrow, 1.0), std::invalid_argument);
}

TEST_CASE("bound monotonicity under level domination") {
    const auto small = sampled_curve([](double h) { return std::pow(h, 0.75); }, 1e-8, 1.0, 32);
    const auto large = sampled_curve([](double h) { return 2.0 * std::pow(h, 0.75); }, 1e-8, 1.0, 32);
    const auto b_small = extinction_bound(small, 1.0);
    const auto b_large = extinction_bound(large, 1.0);
    REQUIRE(b_small.has_bound);
    REQUIRE(b_large.has_bound);
    CHECK(b_large.time <= b_small.time * (1.0 + 1e-12));
}

TEST_CASE("descent trajectory on the power law") {
    const auto curve = sampled_curve([](double h) { return std::pow(h, 0.75); }, 1e-8, 1.0, 32);
    const double dt = 1e-4;
    const auto traj = ode_descent(curve, 1.0, dt, 10.0);
    REQUIRE(traj.vanished);
    CHECK(traj.vanish_time == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(traj.vanish_time <= extinction_bound(curve, 1.0).time + dt);

    // strictly decreasing while positive
    for (size_t i = 1; i < traj.y.size(); ++i) {
        if (traj.y[i - 1] > 0.0) CHECK(traj.y[i] < traj.y[i - 1]);
    }
}

TEST_CASE("linear level descends exponentially and never vanishes") {
    const auto curve = sampled_curve([](double h) { return h; }, 1e-10, 10.0, 32);
    const double dt = 1e-7;
    const auto traj = ode_descent(curve, 1.0, dt, 0.2);
    CHECK_FALSE(traj.vanished);
    CHECK(traj.vanish_time == std::numeric_limits<double>::infinity());
    for (size_t i = 0; i < traj.t.size(); i += 50000) {
        CHECK(traj.y[i] == doctest::Approx(std::exp(-2.0 * traj.t[i])).epsilon(1e-6));
    }
    CHECK(traj.y.back() == doctest::Approx(std::exp(-2.0 * 0.2)).epsilon(1e-6));
}

TEST_CASE("descent stays below the bound on a log-corrected curve") {
    const auto curve = sampled_curve([](double h) { return std::pow(h, 0.9) * (-std::log(h)); },
                                     1e-6, std::exp(-1.0), 64);
    const double dt = 1e-4;
    const auto bound = extinction_bound(curve, std::exp(-1.0));
    const auto traj = ode_descent(curve, std::exp(-1.0), dt, 50.0);
    REQUIRE(bound.has_bound);
    REQUIRE(traj.vanished);
    CHECK(traj.vanish_time <= bound.time + dt);
}

TEST_CASE("term sums: oracle recomputation and statuses") {
    const double q = 0.5;

    // convergent profile: direct recomputation of every term
    const auto lam2 = parse_lambda_profile("logpow:p=2");
    const auto sum2 = kv_sum(lam2, q, 30);
    REQUIRE(sum2.rows.size() == 30);
    double partial = 0.0;
    for (const auto& row : sum2.rows) {
        const int n = row.n;
        const double la = -n * std::log(static_cast<double>(n));
        const double la1 = -(n + 1.0) * std::log(n + 1.0);
        const double lam = lam2(std::exp(0.25 * la));
        const double term = (std::log(lam) + (la - la1) + 1.0) / lam;
        CHECK(row.term == doctest::Approx(term).epsilon(1e-12));
        CHECK(row.alpha_n == doctest::Approx(std::exp(la)).epsilon(1e-12));
        partial += term;
        CHECK(row.partial_sum == doctest::Approx(partial).epsilon(1e-12));
    }
    CHECK(sum2.status == VerdictStatus::Finite);

    // harmonic-type profile diverges
    CHECK(kv_sum(parse_lambda_profile("logpow:p=1"), q, 30).status == VerdictStatus::Divergent);

    // constant level: terms grow, clearly divergent
    CHECK(kv_sum([](double) { return 4.0; }, q, 30).status == VerdictStatus::Divergent);

    // failure of the evaluator is reported with the offending alpha_n
    CHECK_THROWS_WITH_AS(kv_sum([](double) { return -1.0; }, q, 30),
                         doctest::Contains("alpha_n"), std::runtime_error);
    CHECK_THROWS_AS(kv_sum(lam2, 1.5, 30), std::invalid_argument);
}

TEST_CASE("sum/integral equivalence on synthetic profiles") {
    const struct { const char* profile; VerdictStatus expect; } cases[] = {
        {"logpow:p=2", VerdictStatus::Finite},
        {"logpow:p=1", VerdictStatus::Divergent},
        {"logpow:p=1.5", VerdictStatus::Finite},
    };
    for (const auto& c : cases) {
        INFO(c.profile);
        const auto eq = kv_integral_equiv(parse_lambda_profile(c.profile), 0.5, 30);
        CHECK(eq.integral.status == c.expect);
        CHECK(eq.sum.status == c.expect);
        CHECK(eq.agree);
    }
}

TEST_CASE("profile grammar") {
    CHECK(parse_lambda_profile("logpow:p=2")(std::exp(-3.0)) == doctest::Approx(9.0));
    CHECK(parse_lambda_profile("logpow:p=2")(0.9) == doctest::Approx(1.0));  // clamped near 1
    CHECK(parse_lambda_profile("powerlaw:kappa=2,beta=0.5")(0.25) == doctest::Approx(1.0));
    CHECK_THROWS_AS(parse_lambda_profile("nonsense"), std::invalid_argument);
}

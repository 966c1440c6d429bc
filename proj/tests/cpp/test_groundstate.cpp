#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "eftlab/groundstate.hpp"

using namespace eftlab;

namespace {

double dirichlet_level_oracle(int n, int m) {
    // fine-grid matrix eigensolve of the m-fold difference form
    BandedSymmetric a = difference_operator_band(n, 1.0 / n, m);
    std::vector<double> w(static_cast<size_t>(n), 1.0);
    return smallest_eigenvalue(a, w, 1e-12);
}

}  // namespace

TEST_CASE("discrete energy on reference profiles") {
    const auto zero_pot = PotentialSpec::constant(0.0, Domain::interval(1.0));

    GridFunction z = GridFunction::zeros(128, 1.0, 1);
    CHECK(discrete_energy(z, zero_pot, 1, 0.5) == 0.0);

    // sin^2(pi x) vanishes to first order at the walls: clean second-order
    // convergence of the seminorm to pi^2/2
    double errs[2];
    int idx = 0;
    for (int n : {256, 512}) {
        GridFunction v = GridFunction::sample(n, 1.0, 1, [](double x) {
            const double s = std::sin(M_PI * x);
            return s * s;
        });
        errs[idx++] = std::abs(discrete_energy(v, zero_pot, 1, 0.5) - 0.5 * M_PI * M_PI);
    }
    CHECK(errs[0] / errs[1] > 3.0);
    CHECK(errs[0] / errs[1] < 5.0);

    // plain sine carries the first-order wall penalty but the same limit
    GridFunction s = GridFunction::sample(2048, 1.0, 1, [](double x) { return std::sin(M_PI * x); });
    CHECK(discrete_energy(s, zero_pot, 1, 0.5) ==
          doctest::Approx(0.5 * M_PI * M_PI).epsilon(4.0 / 2048.0));

    // quadratic homogeneity of the seminorm part
    GridFunction v = GridFunction::sample(64, 1.0, 1, [](double x) { return x * (1.0 - x); });
    GridFunction cv = v;
    for (auto& x : cv.values) x *= 3.0;
    CHECK(discrete_energy(cv, zero_pot, 1, 0.5) ==
          doctest::Approx(9.0 * discrete_energy(v, zero_pot, 1, 0.5)).epsilon(1e-13));

    CHECK_THROWS_AS(discrete_energy(v, zero_pot, 1, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(discrete_energy(v, zero_pot, 1, 0.0), std::invalid_argument);
}

TEST_CASE("energy matches its band representation") {
    // the banded autocorrelation form and the stencil composition agree
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    for (int m : {1, 2, 3}) {
        const int n = 40;
        std::vector<double> v(static_cast<size_t>(n));
        for (auto& x : v) x = val(rng);
        const double direct = difference_energy(v, 0.025, m);
        BandedSymmetric a = difference_operator_band(n, 0.025, m);
        std::vector<double> av(static_cast<size_t>(n));
        a.multiply(v, av);
        double quad = 0.0;
        for (int i = 0; i < n; ++i) quad += v[static_cast<size_t>(i)] * av[static_cast<size_t>(i)];
        quad *= 0.025;
        CHECK(direct == doctest::Approx(quad).epsilon(1e-12));
    }
}

TEST_CASE("gradient against central differences") {
    const Domain dom = Domain::interval(1.0, 32);
    const auto spec = tilde_transform(PotentialSpec::constant(1.0, dom), 1.0);
    const double q = 0.75;

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> val(1e-3, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 5; ++trial) {
        GridFunction v = GridFunction::zeros(32, 1.0, 1);
        for (auto& x : v.values) x = val(rng);
        const auto grad = discrete_energy_gradient(v, spec, 1, q);
        for (int i = 0; i < 32 && checked < 100; i += 1) {
            const double vi = v.values[static_cast<size_t>(i)];
            if (std::abs(vi) < 1e-8) continue;
            const double delta = 1e-6 * std::max(1.0, std::abs(vi));
            GridFunction plus = v, minus = v;
            plus.values[static_cast<size_t>(i)] += delta;
            minus.values[static_cast<size_t>(i)] -= delta;
            const double fd = (discrete_energy(plus, spec, 1, q) - discrete_energy(minus, spec, 1, q)) /
                              (2.0 * delta);
            CHECK(grad[static_cast<size_t>(i)] == doctest::Approx(fd).epsilon(1e-6));
            ++checked;
        }
    }
    CHECK(checked == 100);
}

TEST_CASE("ground state of the free problem matches the eigensolve oracle") {
    const Domain dom = Domain::interval(1.0, 512);
    const auto spec = PotentialSpec::constant(0.0, dom);
    MinimizeOptions opts;
    opts.extra_starts = 0;
    opts.max_iters = 200000;
    const auto gs = minimize_lambda1(spec, dom, 1, 0.5, 1.0, opts);

    const double oracle = dirichlet_level_oracle(512, 1);
    CHECK(gs.lambda == doctest::Approx(oracle).epsilon(1e-5));
    CHECK(gs.lambda == doctest::Approx(M_PI * M_PI).epsilon(1e-2));
    CHECK(gs.minimizer.l2_norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gs.converged);
}

TEST_CASE("clamped fourth-order ground state") {
    const int n = 64;
    const Domain dom = Domain::interval(1.0, n);
    const auto spec = PotentialSpec::constant(0.0, dom);
    MinimizeOptions opts;
    opts.extra_starts = 0;
    opts.max_iters = 3000000;
    const auto gs = minimize_lambda1(spec, dom, 2, 0.5, 1.0, opts);

    const double oracle = dirichlet_level_oracle(n, 2);
    CHECK(gs.lambda == doctest::Approx(oracle).epsilon(1e-2));
    // the continuum clamped level is (first beam root)^4 ~ 500.55
    CHECK(oracle > 0.8 * 500.5467);
    CHECK(oracle < 1.05 * 500.5467);
}

TEST_CASE("free-problem level is exactly homogeneous in the mass") {
    const Domain dom = Domain::interval(1.0, 64);
    const auto spec = PotentialSpec::constant(0.0, dom);
    MinimizeOptions opts;
    opts.extra_starts = 2;
    opts.max_iters = 100000;
    const double r1 = minimize_lambda1(spec, dom, 1, 0.5, 0.5, opts).lambda / 0.5;
    const double r2 = minimize_lambda1(spec, dom, 1, 0.5, 2.0, opts).lambda / 2.0;
    CHECK(r1 == doctest::Approx(r2).epsilon(1e-9));
}

TEST_CASE("regularized potential lowers the level") {
    const Domain dom = Domain::interval(1.0, 128);
    const auto a = PotentialSpec::constant(1.0, dom);
    const auto tilde = tilde_transform(a, 1.0);
    MinimizeOptions opts;
    opts.extra_starts = 2;
    opts.max_iters = 200000;
    const double lam = minimize_lambda1(a, dom, 1, 0.5, 0.5, opts).lambda;
    const double lam_tilde = minimize_lambda1(tilde, dom, 1, 0.5, 0.5, opts).lambda;
    CHECK(lam_tilde <= lam * (1.0 + 1e-6));
}

TEST_CASE("mesh refinement trend") {
    const auto level = [](int n) {
        const Domain dom = Domain::interval(1.0, n);
        MinimizeOptions opts;
        opts.extra_starts = 0;
        opts.max_iters = 400000;
        return minimize_lambda1(PotentialSpec::constant(0.0, dom), dom, 1, 0.5, 1.0, opts).lambda;
    };
    const double l64 = level(64), l128 = level(128), l256 = level(256);
    CHECK(std::abs(l64 - l128) < 4.0 * std::abs(l128 - l256));
}

TEST_CASE("multi-start surrogate stays within factor two of a denser search") {
    const Domain dom = Domain::interval(1.0, 96);
    const auto spec = tilde_transform(PotentialSpec::constant(1.0, dom), 1.0);
    MinimizeOptions few;
    few.extra_starts = 4;
    few.max_iters = 150000;
    MinimizeOptions many = few;
    many.extra_starts = 40;
    const double best_few = minimize_lambda1(spec, dom, 1, 0.5, 1e-3, few).lambda;
    const double best_many = minimize_lambda1(spec, dom, 1, 0.5, 1e-3, many).lambda;
    CHECK(best_few <= 2.0 * best_many + 1e-14);
    CHECK(best_many <= best_few + 1e-14);
}

TEST_CASE("upper bound from the rescaled bump") {
    const Domain dom = Domain::interval(1.0);
    const auto bump = default_bump(1, 512);
    CHECK(bump.l2_norm_sq() == doctest::Approx(1.0).epsilon(1e-12));

    // m = 1, alpha = 1, h = e^{-10}: radius 0.1 and gradient term 100 h |Db|^2
    const double h = std::exp(-10.0);
    const auto ub = testfn_upper_bound(1.0, 1, 0.5, h, bump, 1.0, dom);
    CHECK(ub.radius == doctest::Approx(0.1).epsilon(1e-12));
    const double seminorm = difference_energy(bump.values, bump.dx, 1);
    CHECK(ub.gradient_term == doctest::Approx(100.0 * h * seminorm).epsilon(1e-12));

    // explicit two-term closed form
    double pnorm = 0.0;
    for (double v : bump.values) pnorm += std::pow(std::abs(v), 1.5) * bump.dx;
    const double absorb = std::pow(h, 0.75) * std::pow(0.1, 0.25) * std::exp(-10.0) * pnorm;
    CHECK(ub.absorption_term == doctest::Approx(absorb).epsilon(1e-12));
    CHECK(ub.value == doctest::Approx(ub.gradient_term + ub.absorption_term));

    // the scaled ratio stays pinned to the seminorm across the sweep
    double lo = 1e300, hi = 0.0;
    for (int k = 2; k <= 8; ++k) {
        const double hh = std::pow(10.0, -k);
        const auto b = testfn_upper_bound(1.0, 1, 0.5, hh, bump, 1.0, dom);
        const double ratio = b.value / (hh * std::pow(-std::log(hh), 2.0));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(hi / lo < 1.05);
    CHECK(lo == doctest::Approx(seminorm).epsilon(1e-2));

    // concentration radius must fit the domain
    CHECK_THROWS_AS(testfn_upper_bound(1.0, 1, 0.5, 0.9, bump, 1.0, dom), std::invalid_argument);
    GridFunction unnormalized = bump;
    for (auto& v : unnormalized.values) v *= 2.0;
    CHECK_THROWS_AS(testfn_upper_bound(1.0, 1, 0.5, h, unnormalized, 1.0, dom),
                    std::invalid_argument);
}

TEST_CASE("linear level: free case and monotonicity") {
    const Domain dom = Domain::interval(1.0, 512);
    const auto zero = PotentialSpec::constant(0.0, dom);
    for (double h : {1.0, 0.1}) {
        CHECK(linear_lambda12(zero, dom, h) == doctest::Approx(M_PI * M_PI).epsilon(5e-3));
    }

    const auto one = PotentialSpec::constant(1.0, dom);
    const double l_half = linear_lambda12(one, dom, 0.5);
    const double l_one = linear_lambda12(one, dom, 1.0);
    CHECK(l_one <= l_half * (1.0 + 1e-12));

    // the regularized constant keeps the logarithmic growth law
    const auto tilde = tilde_transform(one, 1.0);
    double lo = 1e300, hi = 0.0;
    for (int k = 1; k <= 5; ++k) {
        const double h = std::pow(10.0, -k);
        const double ratio = linear_lambda12(tilde, dom, h) / std::pow(-std::log(h), 2.0);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(hi / lo < 25.0);
}

TEST_CASE("radial reduction reproduces the ball level") {
    // first Dirichlet level of the unit 3-ball is pi^2
    const Domain ball = Domain::ball(3, 1.0, 2048);
    const auto zero = PotentialSpec::constant(0.0, ball);
    CHECK(linear_lambda12(zero, ball, 1.0) == doctest::Approx(M_PI * M_PI).epsilon(1e-2));

    MinimizeOptions opts;
    opts.extra_starts = 1;
    opts.max_iters = 150000;
    const Domain coarse = Domain::ball(3, 1.0, 192);
    const auto gs = minimize_lambda1(PotentialSpec::constant(0.0, coarse), coarse, 1, 0.5, 1.0, opts);
    CHECK(gs.lambda == doctest::Approx(M_PI * M_PI).epsilon(2e-2));

    CHECK_THROWS_AS(minimize_lambda1(zero, ball, 2, 0.5, 1.0, opts), std::invalid_argument);
}

TEST_CASE("level curve interpolation and tail fit") {
    std::vector<double> hs, ls;
    for (int i = 0; i <= 40; ++i) {
        const double h = std::pow(10.0, -6.0 + 6.0 * i / 40.0);
        hs.push_back(h);
        ls.push_back(2.5 * std::pow(h, 0.8));
    }
    const auto curve = LambdaCurve::from_samples(hs, ls);
    for (double h : {2e-6, 3.7e-4, 0.21, 1e-7, 0.9}) {
        CHECK(curve(h) == doctest::Approx(2.5 * std::pow(h, 0.8)).epsilon(1e-10));
    }
    const auto fit = curve.tail_fit();
    CHECK(fit.beta == doctest::Approx(0.8).epsilon(1e-8));
    CHECK(fit.kappa == doctest::Approx(2.5).epsilon(1e-8));

    CHECK_THROWS_AS(LambdaCurve::from_samples({1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(LambdaCurve::from_samples({1.0, 1.0}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(LambdaCurve::from_samples({1.0, 2.0}, {1.0, -2.0}), std::invalid_argument);
}

TEST_CASE("lower-bound certificate") {
    const Domain dom = Domain::interval(1.0, 128);
    const auto tilde = tilde_transform(PotentialSpec::constant(1.0, dom), 1.0);

    MinimizeOptions opts;
    opts.extra_starts = 2;
    opts.max_iters = 150000;
    std::vector<double> hs, ls;
    for (int k = 0; k <= 8; ++k) {
        const double h = std::pow(10.0, -5.0 + 3.0 * k / 8.0);
        hs.push_back(h);
        ls.push_back(minimize_lambda1(tilde, dom, 1, 0.5, h, opts).lambda);
    }
    const auto curve = LambdaCurve::from_samples(hs, ls);
    const CriterionParams params(1, 1);  // N = 1, m = 1: theta = 1 branch? N != 2m holds
    const auto rows = lower_bound_certificate(curve, tilde, params, 0.5, 0.5);
    REQUIRE(rows.size() == hs.size());
    double inf_value = 1e300;
    for (const auto& r : rows) {
        CHECK(r.value >= 0.0);
        CHECK(r.sublevel_measure >= 0.0);
        inf_value = std::min(inf_value, r.value);
    }
    CHECK(inf_value > 0.0);

    const CriterionParams critical(1, 2);
    CHECK_THROWS_AS(lower_bound_certificate(curve, tilde, critical, 0.5, 0.5),
                    std::invalid_argument);
    const auto entropy_rows = lower_bound_certificate(curve, tilde, critical, 0.5, 0.5, true);
    CHECK(entropy_rows.size() == hs.size());
    CHECK_THROWS_AS(lower_bound_certificate(curve, tilde, params, 1.5, 0.5),
                    std::invalid_argument);
}

#include "eftlab/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "eftlab/criteria.hpp"
#include "eftlab/extinction.hpp"
#include "eftlab/groundstate.hpp"
#include "eftlab/orlicz.hpp"
#include "eftlab/simulator.hpp"
#include "eftlab/sphi.hpp"

namespace eftlab {

namespace {

// Fitted once from the flagship runs (max residual/dt observed ~0.62); the
// margin keeps the bound meaningful while absorbing grid-to-grid variation.
constexpr double kResidualSlope = 2.0;

struct Check {
    std::string name;
    std::function<bool(std::ostringstream&)> body;
    double budget_seconds = 0.0;  // 0 = no stated budget
};

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

bool check_criterion_thresholds(std::ostringstream& os) {
    const Domain ball = Domain::ball(3, 1.0);
    const CriterionParams params(1, 3);
    bool ok = true;
    for (double alpha : {1.0, 1.5, 1.8}) {
        const auto v = eft_criterion(PotentialSpec::radial_exp(alpha, ball), params);
        os << "alpha=" << alpha << ":" << to_string(v.status) << " ";
        ok = ok && v.status == VerdictStatus::Finite;
    }
    for (double alpha : {2.2, 3.0}) {
        const auto v = eft_criterion(PotentialSpec::radial_exp(alpha, ball), params);
        os << "alpha=" << alpha << ":" << to_string(v.status) << " ";
        ok = ok && v.status == VerdictStatus::Divergent;
    }
    return ok;
}

bool check_ground_state_oracle(std::ostringstream& os) {
    bool ok = true;

    // second-order case against the Dirichlet level
    {
        const Domain dom = Domain::interval(1.0, 2048);
        const auto spec = PotentialSpec::constant(0.0, dom);
        MinimizeOptions opts;
        opts.extra_starts = 0;  // the functional is quadratic; one start suffices
        opts.max_iters = 300000;
        const auto gs = minimize_lambda1(spec, dom, 1, 0.5, 1.0, opts);
        const double err = rel_err(gs.lambda, M_PI * M_PI);
        os << "m1: lambda=" << gs.lambda << " relerr=" << err << " ";
        ok = ok && err < 1e-3;
    }

    // fourth-order clamped case against the same-grid eigensolve oracle
    {
        const int n = 96;
        const Domain dom = Domain::interval(1.0, n);
        const auto spec = PotentialSpec::constant(0.0, dom);
        MinimizeOptions opts;
        opts.extra_starts = 0;
        opts.max_iters = 6000000;
        const auto gs = minimize_lambda1(spec, dom, 2, 0.5, 1.0, opts);

        BandedSymmetric a = difference_operator_band(n, 1.0 / n, 2);
        std::vector<double> w(static_cast<size_t>(n), 1.0);
        const double oracle = smallest_eigenvalue(a, w, 1e-12);
        const double err = rel_err(gs.lambda, oracle);
        os << "m2: lambda=" << gs.lambda << " oracle=" << oracle << " relerr=" << err << " ";
        ok = ok && err < 1e-2;
        // the discrete clamped level sits near the continuum beam constant
        ok = ok && oracle > 0.85 * 500.5467 && oracle < 1.02 * 500.5467;
    }

    // homogeneity of lambda(h)/h for the quadratic functional
    {
        const Domain dom = Domain::interval(1.0, 128);
        const auto spec = PotentialSpec::constant(0.0, dom);
        MinimizeOptions opts;
        opts.extra_starts = 2;
        opts.max_iters = 300000;
        double lo = 0.0, hi = 0.0;
        for (double h : {0.25, 1.0, 4.0}) {
            const auto gs = minimize_lambda1(spec, dom, 1, 0.5, h, opts);
            const double ratio = gs.lambda / h;
            lo = lo == 0.0 ? ratio : std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        os << "homogeneity spread=" << (hi - lo) / lo;
        ok = ok && (hi - lo) / lo < 1e-8;
    }
    return ok;
}

bool check_upper_bound_band(std::ostringstream& os) {
    const int n = 256;
    const Domain dom = Domain::interval(1.0, n);
    const auto tilde = tilde_transform(PotentialSpec::constant(1.0, dom), 1.0);
    const auto bump = default_bump(1, 512);

    MinimizeOptions opts;
    opts.extra_starts = 2;
    opts.max_iters = 400000;

    double ratio_min = 0.0, ratio_max = 0.0;
    bool ok = true;
    for (int k = 2; k <= 8; ++k) {
        const double h = std::pow(10.0, -k);
        const auto gs = minimize_lambda1(tilde, dom, 1, 0.5, h, opts);
        const auto ub = testfn_upper_bound(1.0, 1, 0.5, h, bump, 1.0, dom);
        if (gs.lambda > ub.value) {
            os << "upper bound violated at h=" << h << " ";
            ok = false;
        }
        const double reference = h * std::pow(-std::log(h), 2.0);
        const double ratio = gs.lambda / reference;
        ratio_min = ratio_min == 0.0 ? ratio : std::min(ratio_min, ratio);
        ratio_max = std::max(ratio_max, ratio);
    }
    os << "band=" << ratio_max / ratio_min;
    return ok && ratio_max / ratio_min <= 10.0;
}

SimResult flagship_simulation(int n, double dt) {
    SimConfig cfg;
    cfg.m = 1;
    cfg.q = 0.5;
    cfg.n = n;
    cfg.dt = dt;
    cfg.t_max = 10.0;
    cfg.potential = PotentialSpec::constant(1.0, Domain::interval(1.0, n));
    cfg.u0_profile = "sin";
    return simulate(cfg);
}

bool check_end_to_end(std::ostringstream& os) {
    const SimResult sim = flagship_simulation(256, 5e-4);
    os << "T_num=" << sim.extinction_time << " ";
    if (!sim.extinct) {
        os << "no extinction observed";
        return false;
    }

    const Domain dom = Domain::interval(1.0, 256);
    const auto spec = PotentialSpec::constant(1.0, dom);
    MinimizeOptions opts;
    opts.extra_starts = 2;
    opts.max_iters = 400000;
    std::vector<double> hs, ls;
    for (int k = 0; k <= 12; ++k) {
        const double h = std::pow(10.0, -6.0 + 0.5 * k) * 0.5;  // up to y0
        const auto gs = minimize_lambda1(spec, dom, 1, 0.5, h, opts);
        hs.push_back(h);
        ls.push_back(gs.lambda);
    }
    const auto curve = LambdaCurve::from_samples(hs, ls);
    const auto bound = extinction_bound(curve, sim.l2sq.front());
    os << "bound=" << (bound.has_bound ? bound.time : -1.0);
    return bound.has_bound && sim.extinction_time <= bound.time;
}

bool check_energy_dissipation(std::ostringstream& os) {
    bool ok = true;
    double worst = -1e300;
    const struct { int n; double dt; int m; } runs[] = {{256, 5e-4, 1}, {128, 1e-3, 1}, {64, 1e-3, 2}};
    for (const auto& r : runs) {
        SimConfig cfg;
        cfg.m = r.m;
        cfg.q = 0.5;
        cfg.n = r.n;
        cfg.dt = r.dt;
        cfg.t_max = 4.0;
        cfg.potential = PotentialSpec::constant(1.0, Domain::interval(1.0, r.n));
        cfg.u0_profile = r.m == 2 ? "sin2" : "sin";
        const SimResult sim = simulate(cfg);
        for (size_t i = 1; i < sim.l2sq.size(); ++i) {
            if (sim.l2sq[i] > sim.l2sq[i - 1]) {
                os << "l2 rose at step " << i << " ";
                ok = false;
            }
        }
        for (size_t i = 1; i < sim.residual.size(); ++i) {
            worst = std::max(worst, sim.residual[i]);
            if (sim.residual[i] > 1e-8 + kResidualSlope * r.dt) {
                os << "residual " << sim.residual[i] << " beyond bound at step " << i << " ";
                ok = false;
            }
        }
    }
    os << "max residual=" << worst;
    return ok;
}

bool check_closed_form_bound(std::ostringstream& os) {
    std::vector<double> hs, ls;
    for (int i = 0; i <= 512; ++i) {
        const double h = std::pow(10.0, -8.0 + 8.0 * i / 512.0);
        hs.push_back(h);
        ls.push_back(std::pow(h, 0.75));
    }
    const auto curve = LambdaCurve::from_samples(hs, ls);
    const auto bound = extinction_bound(curve, 1.0);
    os << "T=" << (bound.has_bound ? bound.time : -1.0) << " ";
    bool ok = bound.has_bound && std::abs(bound.time - 2.0) < 1e-6;

    const double dt = 1e-4;
    const auto traj = ode_descent(curve, 1.0, dt, 10.0);
    os << "vanish=" << traj.vanish_time;
    ok = ok && traj.vanished && std::abs(traj.vanish_time - 2.0) <= dt + 1e-9;
    return ok;
}

bool check_orlicz_suite(std::ostringstream& os) {
    bool ok = true;
    const auto B = NFunction::exp_remainder();
    const auto Bhat = NFunction::complementary_exp_remainder();

    // Hoelder ratio on 1000 random piecewise-constant pairs
    {
        std::mt19937_64 rng(20240811);
        std::uniform_real_distribution<double> val(-3.0, 3.0);
        std::uniform_int_distribution<int> coin(0, 3);
        const int n = 48;
        const double w = 1.0 / n;
        double worst = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<double> u(n), v(n);
            std::vector<bool> mask(n);
            int cnt = 0;
            for (int i = 0; i < n; ++i) {
                u[static_cast<size_t>(i)] = val(rng);
                v[static_cast<size_t>(i)] = val(rng);
                mask[static_cast<size_t>(i)] = coin(rng) != 0;
                cnt += mask[static_cast<size_t>(i)];
            }
            if (cnt == 0) mask[0] = true;
            const auto rep = holder_verify(u, v, mask, w, B);
            worst = std::max(worst, rep.ratio);
        }
        os << "max holder ratio=" << worst << " ";
        ok = ok && worst <= 1.0 + 1e-6;
    }

    // square-composition identity and the constant-function equality
    {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> val(0.1, 2.0);
        const auto A = NFunction::exp_poly(2.0);
        const auto M = NFunction::square_composed(A);
        const int n = 32;
        const double w = 1.0 / n;
        std::vector<bool> mask(n, true);
        double worst45 = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> v(n), v2(n);
            for (int i = 0; i < n; ++i) {
                v[static_cast<size_t>(i)] = val(rng);
                v2[static_cast<size_t>(i)] = v[static_cast<size_t>(i)] * v[static_cast<size_t>(i)];
            }
            const double lhs = std::pow(luxemburg_norm(v, mask, w, A), 2.0);
            const double rhs = luxemburg_norm(v2, mask, w, M);
            worst45 = std::max(worst45, std::abs(lhs - rhs) / rhs);
        }
        os << "sq-id err=" << worst45 << " ";
        ok = ok && worst45 < 1e-8;

        std::vector<double> c(n, 1.7);
        const double got = luxemburg_norm(c, mask, w, B);
        const double want = 1.7 / nfn_inverse(B, 1.0);  // meas(E) = 1
        os << "const err=" << std::abs(got - want) / want << " ";
        ok = ok && std::abs(got - want) / want < 1e-8;
    }

    // numeric complementary against the closed form
    {
        const auto Bcustom = NFunction::custom([&B](double t) { return B(t); },
                                               [&B](double t) { return B.derivative(t); },
                                               "exp_remainder_generic");
        const auto numeric = complementary(Bcustom);
        double worst = 0.0;
        for (int i = 1; i <= 20; ++i) {
            const double s = 0.25 * i;
            worst = std::max(worst, std::abs(numeric(s) - Bhat(s)));
        }
        os << "complementary err=" << worst;
        ok = ok && worst < 1e-8;
    }
    return ok;
}

bool check_sphi_calculus(std::ostringstream& os) {
    bool ok = true;
    const Domain ball = Domain::ball(2, 1.0);

    // product stability over the zoo
    {
        std::vector<PotentialSpec> zoo;
        zoo.push_back(PotentialSpec::constant(1.0, ball));
        zoo.push_back(PotentialSpec::constant(0.5, ball));
        zoo.push_back(PotentialSpec::radial_exp(0.8, ball));
        zoo.push_back(PotentialSpec::radial_exp(1.2, ball));
        zoo.push_back(PotentialSpec::radial_omega(OmegaFn::power(1.0), 2.0, ball));
        zoo.push_back(PotentialSpec::product(PotentialSpec::radial_exp(0.8, ball),
                                             PotentialSpec::constant(2.0, ball)));
        const auto phi = PhiFn::power(1.0);
        int finite = 0;
        for (const auto& a : zoo) finite += sphi_membership(a, phi).finite();
        if (finite != static_cast<int>(zoo.size())) {
            os << "zoo not all finite (" << finite << "/6) ";
            ok = false;
        }
        for (size_t i = 0; i < zoo.size() && ok; ++i)
            for (size_t j = i; j < zoo.size(); ++j) {
                const auto v = sphi_membership(PotentialSpec::product(zoo[i], zoo[j]), phi);
                if (!v.finite()) {
                    os << "product " << i << "x" << j << " not finite ";
                    ok = false;
                    break;
                }
            }
        os << "products ok ";
    }

    // power-weight threshold on the alpha-beta grid
    {
        int mismatches = 0;
        for (double alpha : {0.5, 1.0, 1.5, 2.0, 3.0})
            for (double beta : {0.25, 0.5, 1.0, 1.5, 2.0}) {
                const auto v = sphi_membership(PotentialSpec::radial_exp(alpha, ball), PhiFn::power(beta));
                const bool expect_finite = 2.0 * beta / alpha > 1.0;  // N beta / alpha > 1
                const bool got_finite = v.status == VerdictStatus::Finite;
                if (expect_finite != got_finite ||
                    (!expect_finite && v.status != VerdictStatus::Divergent))
                    ++mismatches;
            }
        os << "grid mismatches=" << mismatches << " ";
        ok = ok && mismatches == 0;
    }

    // entropy-weight membership of the half-dimension exponential
    {
        const auto v = sphi_membership(PotentialSpec::radial_exp(0.5 * ball.dimension, ball),
                                       PhiFn::entropy());
        os << "entropy:" << to_string(v.status);
        ok = ok && v.finite();
    }
    return ok;
}

bool check_sum_integral_equivalence(std::ostringstream& os) {
    const struct { const char* profile; VerdictStatus expect; } cases[] = {
        {"logpow:p=2", VerdictStatus::Finite},
        {"logpow:p=1", VerdictStatus::Divergent},
        {"logpow:p=1.5", VerdictStatus::Finite},
    };
    bool ok = true;
    for (const auto& c : cases) {
        const auto eq = kv_integral_equiv(parse_lambda_profile(c.profile), 0.5, 30);
        os << c.profile << ":" << to_string(eq.integral.status) << "/" << to_string(eq.sum.status)
           << (eq.agree ? " agree  " : " DISAGREE  ");
        ok = ok && eq.agree && eq.integral.status == c.expect;
    }
    return ok;
}

}  // namespace

std::vector<AcceptanceOutcome> run_acceptance(std::ostream& log) {
    const Check checks[] = {
        {"criterion-threshold", check_criterion_thresholds, 5.0},
        {"ground-state-oracle", check_ground_state_oracle, 60.0},
        {"upper-bound-band", check_upper_bound_band, 0.0},
        {"extinction-end-to-end", check_end_to_end, 120.0},
        {"energy-dissipation", check_energy_dissipation, 0.0},
        {"closed-form-bound", check_closed_form_bound, 0.0},
        {"orlicz-suite", check_orlicz_suite, 30.0},
        {"sphi-calculus", check_sphi_calculus, 0.0},
        {"sum-integral-equivalence", check_sum_integral_equivalence, 0.0},
    };

    std::vector<AcceptanceOutcome> outcomes;
    for (const auto& check : checks) {
        AcceptanceOutcome oc;
        oc.name = check.name;
        std::ostringstream detail;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            oc.pass = check.body(detail);
        } catch (const std::exception& e) {
            oc.pass = false;
            detail << " exception: " << e.what();
        }
        oc.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (check.budget_seconds > 0.0 && oc.seconds > check.budget_seconds) {
            oc.pass = false;
            detail << " over the " << check.budget_seconds << " s budget";
        }
        oc.detail = detail.str();
        log << (oc.pass ? "PASS" : "FAIL") << "  " << oc.name << "  [" << oc.detail << "]  ("
            << oc.seconds << " s)\n";
        log.flush();
        outcomes.push_back(std::move(oc));
    }
    return outcomes;
}

int count_failures(const std::vector<AcceptanceOutcome>& outcomes) {
    int fails = 0;
    for (const auto& oc : outcomes) fails += oc.pass ? 0 : 1;
    return fails;
}

}  // namespace eftlab

#include "eftlab/extinction.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace eftlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Trapezoid in u = ln h: integral of dh/lambda = integral e^u / lambda(e^u) du.
double log_trapezoid_inv_lambda(const LambdaCurve& curve, double h_lo, double h_hi, int subnodes) {
    if (!(h_hi > h_lo)) return 0.0;
    const double u_lo = std::log(h_lo), u_hi = std::log(h_hi);
    const double du = (u_hi - u_lo) / subnodes;
    auto f = [&](double u) {
        const double h = std::exp(u);
        return h / curve(h);
    };
    double sum = 0.5 * (f(u_lo) + f(u_hi));
    for (int i = 1; i < subnodes; ++i) sum += f(u_lo + i * du);
    return sum * du;
}

}  // namespace

BoundResult extinction_bound(const LambdaCurve& curve, double y0) {
    if (!(y0 > 0.0)) throw std::invalid_argument("extinction_bound: y0 must be > 0");
    if (curve.size() < 4 || curve.h_max() / curve.h_min() < 1e3)
        throw std::invalid_argument("extinction_bound: need >= 4 samples spanning >= 3 decades");

    BoundResult out;
    const auto fit = curve.tail_fit();
    out.tail.kappa = fit.kappa;
    out.tail.beta = fit.beta;
    out.tail.usable = fit.beta < 1.0;
    if (!out.tail.usable) return out;  // the harmonic end diverges

    const double h_join = std::min(curve.h_min(), y0);
    out.tail.contribution = std::pow(h_join, 1.0 - fit.beta) / (fit.kappa * (1.0 - fit.beta));
    out.main_part = 0.5 * log_trapezoid_inv_lambda(curve, h_join, y0, 8192);
    out.has_bound = true;
    out.time = out.main_part + 0.5 * out.tail.contribution;
    return out;
}

OdeTrajectory ode_descent(const LambdaCurve& curve, double y0, double dt, double t_max) {
    if (!(y0 > 0.0)) throw std::invalid_argument("ode_descent: y0 must be > 0");
    if (!(dt > 0.0)) throw std::invalid_argument("ode_descent: dt must be > 0");

    OdeTrajectory traj;
    traj.vanish_time = kInf;
    double t = 0.0, y = y0;
    traj.t.push_back(t);
    traj.y.push_back(y);

    // Each explicit step advances y' = -2 kappa y^beta exactly for the power
    // law of the segment the state sits in; the interpolant is piecewise
    // power, so the only per-step error is segment drift within the step.
    // The closed form reaches an exact zero in finite time when beta < 1.
    while (t < t_max && y > 0.0) {
        const double step = std::min(dt, t_max - t);
        const auto fit = curve.local_fit(y);
        if (std::abs(1.0 - fit.beta) < 1e-12) {
            y *= std::exp(-2.0 * fit.kappa * step);
            t += step;
        } else {
            const double e = 1.0 - fit.beta;
            const double z = std::pow(y, e) - 2.0 * fit.kappa * e * step;
            if (e > 0.0 && z <= 0.0) {
                t += std::pow(y, e) / (2.0 * fit.kappa * e);  // exact crossing
                y = 0.0;
                traj.t.push_back(t);
                traj.y.push_back(0.0);
                traj.vanished = true;
                traj.vanish_time = t;
                break;
            }
            y = std::pow(z, 1.0 / e);
            t += step;
        }
        traj.t.push_back(t);
        traj.y.push_back(y);
        if (y == 0.0) {
            traj.vanished = true;
            traj.vanish_time = t;
            break;
        }
    }
    return traj;
}

// ---------------------------------------------------------------------------
// sum/integral equivalence machinery

KvSumResult kv_sum(const std::function<double(double)>& lambda12,
                   const std::function<double(int)>& log_alpha, double q, int n_max) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("kv_sum: q must lie in (0, 1)");
    if (n_max < 4) throw std::invalid_argument("kv_sum: n_max must be >= 4");

    KvSumResult out;
    double partial = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        const double la = log_alpha(n), la_next = log_alpha(n + 1);
        if (!(la_next < la))
            throw std::invalid_argument("kv_sum: the sequence must be strictly decreasing");
        const double alpha_n = std::exp(la);
        const double arg = std::exp(0.5 * (1.0 - q) * la);
        const double lam = lambda12(arg);
        if (!(lam > 0.0) || !std::isfinite(lam)) {
            std::ostringstream os;
            os << "kv_sum: level evaluator failed at alpha_n = " << alpha_n << " (n = " << n << ")";
            throw std::runtime_error(os.str());
        }
        const double term = (std::log(lam) + (la - la_next) + 1.0) / lam;
        partial += term;
        out.rows.push_back({n, alpha_n, term, partial});
    }

    // dyadic index blocks [2^j, 2^{j+1}) of the term sequence; the final
    // partial block is kept when it covers at least half its range
    for (int j = 0;; ++j) {
        const int lo = 1 << j, hi = (1 << (j + 1)) - 1;
        if (lo > n_max) break;
        const int hi_eff = std::min(hi, n_max);
        if (hi != hi_eff && hi_eff - lo + 1 < (hi - lo + 1) / 2) break;
        double b = 0.0;
        for (int n = lo; n <= hi_eff; ++n) b += out.rows[static_cast<size_t>(n - 1)].term;
        out.block_sums.push_back(b);
    }
    for (size_t j = 1; j < out.block_sums.size(); ++j)
        out.block_ratios.push_back(out.block_sums[j - 1] > 0.0
                                       ? out.block_sums[j] / out.block_sums[j - 1]
                                       : kInf);

    // same flavor of rule as the integral engine, shortened to the block
    // count a 30-term sum affords
    if (out.block_ratios.size() >= 2) {
        const double r1 = out.block_ratios[out.block_ratios.size() - 1];
        const double r2 = out.block_ratios[out.block_ratios.size() - 2];
        if (r1 <= 0.75 && r2 <= 0.75)
            out.status = VerdictStatus::Finite;
        else if (r1 >= 0.85 && r2 >= 0.85)
            out.status = VerdictStatus::Divergent;
        else
            out.status = VerdictStatus::Inconclusive;
    }
    return out;
}

KvSumResult kv_sum(const std::function<double(double)>& lambda12, double q, int n_max) {
    return kv_sum(lambda12, [](int n) { return -static_cast<double>(n) * std::log(static_cast<double>(n)); },
                  q, n_max);
}

KvEquivalence kv_integral_equiv(const std::function<double(double)>& lambda12, double q, int n_max) {
    KvEquivalence out;
    EngineOptions opts;
    opts.inf_is_divergence_evidence = true;
    opts.tau_eval_limit = 690.0;  // the evaluator sees h = e^{-tau}
    out.integral = classify_log_integrand([&](double tau) {
        const double lam = lambda12(std::exp(-tau));
        if (!(lam > 0.0)) throw IntegrandError(std::exp(-tau), "kv_integral_equiv: nonpositive level");
        return 1.0 / lam;
    }, 1.0, opts);
    out.sum = kv_sum(lambda12, q, n_max);
    out.agree = out.integral.status == out.sum.status &&
                out.integral.status != VerdictStatus::Inconclusive;
    return out;
}

std::function<double(double)> parse_lambda_profile(const std::string& text) {
    const std::string prefix = "logpow:p=";
    if (text.rfind(prefix, 0) == 0) {
        const double p = std::stod(text.substr(prefix.size()));
        return [p](double h) { return std::pow(std::max(1.0, -std::log(h)), p); };
    }
    const std::string pl = "powerlaw:kappa=";
    if (text.rfind(pl, 0) == 0) {
        // powerlaw:kappa=K,beta=B
        const auto comma = text.find(",beta=");
        if (comma == std::string::npos)
            throw std::invalid_argument("parse_lambda_profile: powerlaw needs kappa=...,beta=...");
        const double kappa = std::stod(text.substr(pl.size(), comma - pl.size()));
        const double beta = std::stod(text.substr(comma + 6));
        return [kappa, beta](double h) { return kappa * std::pow(h, beta); };
    }
    throw std::invalid_argument("parse_lambda_profile: unknown profile '" + text + "'");
}

}  // namespace eftlab

#include "eftlab/criteria.hpp"

#include <cmath>
#include <limits>

namespace eftlab {

namespace {
constexpr double kInvE = 0.36787944117144233;  // e^{-1}
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

CriterionParams::CriterionParams(int m_, int n_) : m(m_), N(n_) {
    if (m < 1 || N < 1) throw std::invalid_argument("CriterionParams: m, N must be >= 1");
}

double CriterionParams::theta() const {
    if (critical())
        throw std::logic_error("CriterionParams::theta: undefined for N = 2m (entropy branch applies)");
    return std::min(2.0 * m / N, 1.0);
}

double entropy_weight(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= kInvE) return kInvE;
    return s * (-std::log(s));
}

IntegralVerdict eft_criterion(const DistFn& M, const CriterionParams& params) {
    std::function<double(double)> weight;
    if (params.critical()) {
        weight = [](double mval) { return entropy_weight(mval); };
    } else {
        const double theta = params.theta();
        weight = [theta](double mval) { return mval > 0.0 ? std::pow(mval, theta) : 0.0; };
    }

    EngineOptions opts;
    opts.inf_is_divergence_evidence = true;
    auto G = [&](double tau) { return weight(M.at_minus_log(tau)); };
    IntegralVerdict v = classify_log_integrand(G, 1.0, opts);
    if (v.finite()) {
        // smooth remainder of the unit interval
        v.value += adaptive_simpson([&](double s) { return weight(M(s)) / s; }, kInvE, 1.0, 1e-10);
    }
    return v;
}

IntegralVerdict eft_criterion(const PotentialSpec& spec, const CriterionParams& params) {
    return eft_criterion(DistFn::from_spec(spec), params);
}

std::string to_string(TriVerdict v) {
    switch (v) {
        case TriVerdict::Holds: return "holds";
        case TriVerdict::Fails: return "fails";
        default: return "inconclusive";
    }
}

IntegralVerdict domain_integral(const PotentialSpec& spec,
                                const std::function<double(double, double)>& g) {
    const Domain& dom = spec.domain();
    if (spec.kind() == PotentialKind::GridSampled) {
        const auto vols = dom.cell_volumes();
        const auto centers = dom.cell_centers();
        const auto& vals = spec.grid_values();
        IntegralVerdict v;
        v.status = VerdictStatus::Finite;
        for (size_t i = 0; i < vols.size(); ++i) {
            const double neg_log = vals[i] > 0.0 ? -std::log(vals[i]) : kInf;
            const double gi = g(centers[i], neg_log);
            if (std::isnan(gi)) throw IntegrandError(centers[i], "domain_integral: NaN cell value");
            if (std::isinf(gi)) {
                v.status = VerdictStatus::Divergent;
                v.value = 0.0;
                return v;
            }
            v.value += gi * vols[i];
        }
        return v;
    }

    const double R = dom.max_radius();
    const double surf_scale = dom.shape == Shape::Interval
                                  ? 1.0
                                  : dom.dimension * unit_ball_volume(dom.dimension);
    auto surf = [&](double r) {
        return dom.shape == Shape::Interval ? 1.0 : surf_scale * std::pow(r, dom.dimension - 1);
    };
    auto integrand = [&](double r) { return g(r, spec.neg_log_radial(r)) * surf(r); };

    const double r_cut = std::min(R, kInvE);
    EngineOptions opts;
    opts.inf_is_divergence_evidence = true;
    auto G = [&](double sigma) {
        const double r = std::exp(-sigma);
        return integrand(r) * r;
    };
    IntegralVerdict v = classify_log_integrand(G, -std::log(r_cut), opts);
    if (v.finite() && R > r_cut) {
        v.value += adaptive_simpson(integrand, r_cut, R, 1e-10);
    }
    return v;
}

LogLpResult log_lp_criterion(const PotentialSpec& spec, double p, const CriterionParams& params,
                             LogLpThreshold which) {
    if (!(p > 0.0)) throw std::invalid_argument("log_lp_criterion: p must be > 0");
    LogLpResult out;
    out.threshold = which == LogLpThreshold::HalfDimension ? 0.5 * params.N
                                                           : params.theta();
    out.p_above_threshold = p > out.threshold;

    IntegralVerdict integral = domain_integral(
        spec, [&](double, double neg_log) { return std::pow(std::abs(neg_log), p); });
    out.integral_status = integral.status;
    out.integral_value = integral.value;
    out.blocks_used = integral.blocks_used();

    switch (integral.status) {
        case VerdictStatus::Finite:
            out.verdict = out.p_above_threshold ? TriVerdict::Holds : TriVerdict::Fails;
            break;
        case VerdictStatus::Divergent:
            out.verdict = TriVerdict::Fails;
            break;
        default:
            out.verdict = TriVerdict::Inconclusive;
    }
    return out;
}

FCriterionResult f_criterion(const std::function<double(double)>& f, const PotentialSpec& spec,
                             const CriterionParams& params) {
    // positive and nonincreasing on a log-spaced sample of the open interval
    double prev = kInf;
    for (int i = 0; i <= 96; ++i) {
        const double s = 0.95 * std::pow(10.0, -12.0 + 12.0 * i / 96.0);
        const double fs = f(s);
        if (!(fs > 0.0) && std::isfinite(fs))
            throw std::invalid_argument("f_criterion: f must be positive");
        if (std::isfinite(fs) && fs > prev * (1.0 + 1e-10))
            throw std::invalid_argument("f_criterion: f must be nonincreasing");
        if (std::isfinite(fs)) prev = fs;
    }

    FCriterionResult out;
    IntegralVerdict l1 = domain_integral(spec, [&](double, double neg_log) {
        const double a = std::exp(-neg_log);
        return a > 0.0 ? f(a) : kInf;
    });
    out.l1_status = l1.status;
    out.l1_value = l1.value;

    std::function<double(double)> weighted;
    if (params.critical()) {
        weighted = [&f](double s) {
            const double fs = f(s);
            if (std::isnan(fs)) throw IntegrandError(s, "f_criterion: f returned NaN");
            if (std::isinf(fs)) return 0.0;  // ln f / f -> 0
            return std::log(fs) / fs;
        };
    } else {
        const double theta = params.theta();
        weighted = [&f, theta](double s) {
            const double fs = f(s);
            if (std::isnan(fs)) throw IntegrandError(s, "f_criterion: f returned NaN");
            if (std::isinf(fs)) return 0.0;
            return std::pow(fs, -theta);
        };
    }
    EngineOptions opts;
    opts.inf_is_divergence_evidence = true;
    opts.tau_eval_limit = 690.0;  // f is evaluated at s = e^{-tau}
    out.weight = classify_log_integrand([&](double tau) { return weighted(std::exp(-tau)); }, 1.0, opts);
    if (out.weight.finite()) {
        out.weight.value += adaptive_simpson([&](double s) { return weighted(s) / s; }, kInvE, 1.0, 1e-10);
    }

    if (out.l1_status == VerdictStatus::Finite && out.weight.status == VerdictStatus::Finite)
        out.overall = VerdictStatus::Finite;
    else if (out.l1_status == VerdictStatus::Divergent || out.weight.status == VerdictStatus::Divergent)
        out.overall = VerdictStatus::Divergent;
    else
        out.overall = VerdictStatus::Inconclusive;
    return out;
}

IntegralVerdict dini_criterion(const OmegaFn& omega, const CriterionParams& params, double c) {
    if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("dini_criterion: c must lie in (0, 1)");
    omega.validate();  // rejects decreasing tables

    std::function<double(double)> integrand_tau;
    if (params.critical()) {
        integrand_tau = [&omega](double tau) {
            const double w = omega(std::exp(-tau));
            if (w <= 0.0) return 0.0;  // vanishing modulus contributes nothing
            return w * (-std::log(w) + tau);
        };
    } else {
        integrand_tau = [&omega](double tau) { return omega(std::exp(-tau)); };
    }

    EngineOptions opts;
    opts.inf_is_divergence_evidence = true;
    opts.tau_eval_limit = 690.0;  // omega is evaluated at s = e^{-tau}
    const double c_sing = std::min(c, kInvE);
    IntegralVerdict v = classify_log_integrand(integrand_tau, -std::log(c_sing), opts);
    if (v.finite() && c > c_sing) {
        v.value += adaptive_simpson([&](double s) { return integrand_tau(-std::log(s)) / s; }, c_sing, c, 1e-10);
    }
    return v;
}

}  // namespace eftlab

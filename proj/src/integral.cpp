#include "eftlab/integral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace eftlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Signals that a block saturated at +inf (overflow-as-divergence mode).
struct BlockOverflow {};

struct CheckedFn {
    const std::function<double(double)>& f;
    bool tolerate_inf;

    double operator()(double x) const {
        const double v = f(x);
        if (std::isnan(v)) {
            std::ostringstream os;
            os << "integrand returned NaN at " << x;
            throw IntegrandError(x, os.str());
        }
        if (std::isinf(v)) {
            if (tolerate_inf) throw BlockOverflow{};
            std::ostringstream os;
            os << "integrand returned infinity at " << x;
            throw IntegrandError(x, os.str());
        }
        return v;
    }
};

template <typename F>
double simpson_rec(const F& f, double a, double m, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double simpson(const F& f, double a, double b, double rel_tol, int max_depth) {
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double tol = std::max(std::abs(whole) * rel_tol, 1e-300);
    return simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, max_depth);
}

enum class WindowShape { AllZero, Decaying, NonDecreasing, Mixed };

WindowShape window_shape(const std::vector<double>& sums, int window, double decay_ratio,
                         double* rho_out) {
    const int n = static_cast<int>(sums.size());
    const int w = std::min(window, n);
    bool all_zero = true, decaying = true, nondecreasing = true;
    double rho = 0.0;
    for (int i = n - w; i < n; ++i) {
        if (sums[i] != 0.0) all_zero = false;
        if (i > n - w) {
            const double prev = sums[i - 1], cur = sums[i];
            const double ratio = prev > 0.0 ? cur / prev : (cur > 0.0 ? kInf : 0.0);
            rho = std::max(rho, ratio);
            if (!(ratio <= decay_ratio)) decaying = false;
            if (!(cur >= prev * (1.0 - 1e-12))) nondecreasing = false;
        }
    }
    if (rho_out) *rho_out = rho;
    if (all_zero) return WindowShape::AllZero;
    if (decaying) return WindowShape::Decaying;
    if (nondecreasing) return WindowShape::NonDecreasing;
    return WindowShape::Mixed;
}

}  // namespace

std::string to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Finite: return "finite";
        case VerdictStatus::Divergent: return "divergent";
        default: return "inconclusive";
    }
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double rel_tol,
                        int max_depth) {
    CheckedFn cf{f, false};
    return simpson(cf, a, b, rel_tol, max_depth);
}

IntegralVerdict classify_log_integrand(const std::function<double(double)>& G, double tau0,
                                       const EngineOptions& opts) {
    if (!(tau0 > 0.0)) throw std::invalid_argument("classify_log_integrand: tau0 must be > 0");
    CheckedFn cg{G, opts.inf_is_divergence_evidence};

    IntegralVerdict out;
    std::vector<double> sums;
    double acc = 0.0;
    double prev_total = kInf;  // extrapolated total from the previous block
    bool saw_overflow = false;

    for (int k = 0; k < opts.max_blocks; ++k) {
        const double lo = std::ldexp(tau0, k), hi = std::ldexp(tau0, k + 1);
        if (opts.tau_eval_limit > 0.0 && hi > opts.tau_eval_limit && k >= 1) break;
        double s;
        try {
            s = std::max(0.0, simpson(cg, lo, hi, opts.simpson_rel_tol, 30));
        } catch (const BlockOverflow&) {
            s = kInf;
            saw_overflow = true;
        }
        sums.push_back(s);
        out.blocks.push_back({lo, hi, s});
        if (std::isfinite(s)) acc += s;
        if (static_cast<int>(sums.size()) < opts.window) continue;

        double rho = 0.0;
        switch (window_shape(sums, opts.window, opts.decay_ratio, &rho)) {
            case WindowShape::AllZero:
                out.status = VerdictStatus::Finite;
                out.value = acc;
                out.tail_estimate = 0.0;
                goto done;
            case WindowShape::Decaying: {
                rho = std::min(rho, opts.decay_ratio);
                const double tail = sums.back() * rho / (1.0 - rho);
                const double total = acc + tail;
                // finalize once the geometric extrapolation has stabilized
                // (exact for power laws after one clean window), the raw tail
                // is negligible, or the budget is exhausted
                const bool stable = std::isfinite(prev_total) &&
                                    std::abs(total - prev_total) <=
                                        opts.tail_rel * std::max(std::abs(total), 1e-300);
                if (stable || tail <= opts.tail_rel * acc || k + 1 >= opts.max_blocks ||
                    (opts.tau_eval_limit > 0.0 && 2.0 * hi > opts.tau_eval_limit)) {
                    out.status = VerdictStatus::Finite;
                    out.value = total;
                    out.tail_estimate = tail;
                    goto done;
                }
                prev_total = total;
                break;  // keep sharpening the tail
            }
            case WindowShape::NonDecreasing:
                if (sums.back() > 0.0 || saw_overflow) {
                    out.status = VerdictStatus::Divergent;
                    goto done;
                }
                prev_total = kInf;
                break;
            case WindowShape::Mixed:
                prev_total = kInf;
                break;
        }
    }
    out.status = VerdictStatus::Inconclusive;
    // a decaying-but-slow window still yields the best available value
    {
        double rho = 0.0;
        if (!sums.empty() && window_shape(sums, opts.window, opts.decay_ratio, &rho) == WindowShape::Decaying)
            out.value = acc + sums.back() * rho / (1.0 - rho);
    }
done:
    for (size_t i = 1; i < sums.size(); ++i)
        out.block_ratios.push_back(sums[i - 1] > 0.0 ? sums[i] / sums[i - 1]
                                                     : (sums[i] > 0.0 ? kInf : 0.0));
    return out;
}

IntegralVerdict classify_improper_integral(const std::function<double(double)>& g, double c,
                                           const EngineOptions& opts_in) {
    if (!(c > 0.0)) throw std::invalid_argument("classify_improper_integral: c must be > 0");
    EngineOptions opts = opts_in;
    if (opts.tau_eval_limit == 0.0) opts.tau_eval_limit = 690.0;  // keep e^{-tau} well above underflow

    const double c_sing = std::min(c, std::exp(-1.0));
    auto G = [&g](double tau) {
        const double s = std::exp(-tau);
        return g(s) * s;
    };
    IntegralVerdict v = classify_log_integrand(G, -std::log(c_sing), opts);
    if (v.status == VerdictStatus::Finite && c > c_sing) {
        CheckedFn cg{g, opts.inf_is_divergence_evidence};
        v.value += simpson(cg, c_sing, c, opts.simpson_rel_tol, 30);
    }
    return v;
}

}  // namespace eftlab

#include "eftlab/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "eftlab/integral.hpp"

namespace eftlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kExpGuard = 700.0;  // e^x overflows just past this

double guarded_exp(double x) { return x > kExpGuard ? kInf : std::exp(x); }
}  // namespace

NFunction NFunction::exp_poly(double p) {
    if (!(p > 1.0)) throw std::invalid_argument("NFunction::exp_poly: p must be > 1");
    const double q = p / (p - 1.0);
    NFunction f;
    f.kind_ = NFunctionKind::ExpPoly;
    f.name_ = "exp_poly(p=" + std::to_string(p) + ")";
    f.value_ = [q](double t) {
        if (t <= 0.0) return 0.0;
        const double e = std::pow(t, q);
        return guarded_exp(e) - 1.0;
    };
    f.derivative_ = [q](double t) {
        if (t <= 0.0) return 0.0;
        const double e = std::pow(t, q);
        return q * std::pow(t, q - 1.0) * guarded_exp(e);
    };
    return f;
}

NFunction NFunction::exp_remainder() {
    NFunction f;
    f.kind_ = NFunctionKind::ExpRemainder;
    f.name_ = "exp_remainder";
    f.value_ = [](double t) {
        if (t <= 0.0) return 0.0;
        if (t < 1e-4) return 0.5 * t * t * (1.0 + t / 3.0 + t * t / 12.0);  // cancellation guard
        return guarded_exp(t) - 1.0 - t;
    };
    f.derivative_ = [](double t) { return t <= 0.0 ? 0.0 : std::expm1(t); };
    return f;
}

NFunction NFunction::complementary_exp_remainder() {
    NFunction f;
    f.kind_ = NFunctionKind::ComplementaryExpRemainder;
    f.name_ = "complementary_exp_remainder";
    f.value_ = [](double s) {
        if (s <= 0.0) return 0.0;
        return (s + 1.0) * std::log1p(s) - s;
    };
    f.derivative_ = [](double s) { return s <= 0.0 ? 0.0 : std::log1p(s); };
    return f;
}

NFunction NFunction::square_composed(NFunction base) {
    NFunction f;
    f.kind_ = NFunctionKind::SquareComposed;
    f.extended_ = true;
    f.name_ = "square_composed(" + base.name() + ")";
    f.value_ = [b = base](double t) { return t <= 0.0 ? 0.0 : b(std::sqrt(t)); };
    // chain rule keeps a derivative available when the base has one
    if (base.has_derivative()) {
        f.derivative_ = [b = base](double t) {
            if (t <= 0.0) return 0.0;
            const double r = std::sqrt(t);
            return b.derivative(r) * 0.5 / r;
        };
    }
    return f;
}

NFunction NFunction::custom(std::function<double(double)> value, std::function<double(double)> derivative,
                            std::string name) {
    NFunction f;
    f.value_ = std::move(value);
    f.derivative_ = std::move(derivative);
    f.name_ = std::move(name);
    return f;
}

double NFunction::derivative(double t) const {
    if (!derivative_) throw std::logic_error("NFunction: no derivative available for " + name_);
    return derivative_(t);
}

double nfn_inverse(const NFunction& F, double y) {
    if (y <= 0.0) return 0.0;
    if (!std::isfinite(y)) throw std::invalid_argument("nfn_inverse: y must be finite");

    // bracket [lo, hi] with F(lo) < y <= F(hi)
    double hi = 1.0;
    for (int it = 0; it < 4200 && !(F(hi) >= y); ++it) hi *= 2.0;
    if (!(F(hi) >= y)) throw std::runtime_error("nfn_inverse: no upper bracket found");
    double lo = 0.0;

    double t = std::min(hi, std::max(1e-8, 0.5 * hi));
    for (int it = 0; it < 200; ++it) {
        const double ft = F(t);
        if (!std::isfinite(ft) && !std::isinf(ft))
            throw std::runtime_error("nfn_inverse: non-finite evaluation");
        if (ft >= y) hi = t; else lo = t;
        double next = kInf;
        if (F.has_derivative() && std::isfinite(ft)) {
            const double d = F.derivative(t);
            if (d > 0.0 && std::isfinite(d)) next = t - (ft - y) / d;
        }
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection fallback
        if (std::abs(next - t) <= 1e-12 * std::max(1.0, std::abs(t))) return next;
        t = next;
        if (hi - lo <= 1e-14 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

NFunction complementary(const NFunction& F) {
    if (F.kind() == NFunctionKind::ExpRemainder) return NFunction::complementary_exp_remainder();
    if (!F.has_derivative()) throw std::invalid_argument("complementary: derivative required");

    // the derivative must be increasing for the inverse integral to make sense
    double prev = -kInf;
    for (int i = 1; i <= 64; ++i) {
        const double t = 0.25 * i;
        const double d = F.derivative(t);
        if (!(d >= prev * (1.0 - 1e-12)))
            throw std::invalid_argument("complementary: derivative is not increasing");
        if (std::isfinite(d)) prev = d;
    }

    auto inv_deriv = [F](double sigma) {
        if (sigma <= 0.0) return 0.0;
        // invert the derivative by bisection inside a grown bracket
        double hi = 1.0;
        for (int it = 0; it < 2000 && !(F.derivative(hi) >= sigma); ++it) hi *= 2.0;
        double lo = 0.0;
        for (int it = 0; it < 120; ++it) {
            const double mid = 0.5 * (lo + hi);
            (F.derivative(mid) >= sigma ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    };

    auto value = [inv_deriv](double s) {
        if (s <= 0.0) return 0.0;
        return adaptive_simpson(inv_deriv, 0.0, s, 1e-11);
    };
    return NFunction::custom(value, inv_deriv, "complementary(" + F.name() + ")");
}

namespace {

// integral of F(|u|/k) over the mask; +inf when any guarded term overflows
double gauge_integral(const std::vector<double>& u, const std::vector<bool>& mask, double w,
                      const NFunction& F, double k) {
    double total = 0.0;
    for (size_t i = 0; i < u.size(); ++i) {
        if (!mask[i]) continue;
        const double v = F(std::abs(u[i]) / k);
        if (std::isinf(v)) return kInf;
        total += v * w;
    }
    return total;
}

}  // namespace

double luxemburg_norm(const std::vector<double>& u, const std::vector<bool>& mask, double cell_weight,
                      const NFunction& F) {
    if (u.size() != mask.size()) throw std::invalid_argument("luxemburg_norm: size mismatch");
    double meas = 0.0, umax = 0.0;
    for (size_t i = 0; i < u.size(); ++i) {
        if (!mask[i]) continue;
        if (!std::isfinite(u[i])) throw std::invalid_argument("luxemburg_norm: u must be bounded on E");
        meas += cell_weight;
        umax = std::max(umax, std::abs(u[i]));
    }
    if (!(meas > 0.0)) throw std::invalid_argument("luxemburg_norm: mask has measure 0");
    if (umax == 0.0) return 0.0;

    // k_hi = ||u||_inf / F^{-1}(1/meas) satisfies the gauge constraint with
    // equality for constants; halve toward the infimum from there.
    double k_hi = umax / nfn_inverse(F, 1.0 / meas);
    if (!(gauge_integral(u, mask, cell_weight, F, k_hi) <= 1.0)) {
        for (int it = 0; it < 200 && !(gauge_integral(u, mask, cell_weight, F, k_hi) <= 1.0); ++it)
            k_hi *= 2.0;
        if (!(gauge_integral(u, mask, cell_weight, F, k_hi) <= 1.0))
            throw std::runtime_error("luxemburg_norm: no admissible gauge parameter found");
    }
    double k_lo = 0.5 * k_hi;
    int guard = 0;
    while (gauge_integral(u, mask, cell_weight, F, k_lo) <= 1.0) {
        k_hi = k_lo;
        k_lo *= 0.5;
        if (++guard > 2000) return 0.0;  // integral stays <= 1 down to k ~ 0
    }
    for (int it = 0; it < 200 && (k_hi - k_lo) > 1e-10 * k_hi; ++it) {
        const double mid = 0.5 * (k_lo + k_hi);
        (gauge_integral(u, mask, cell_weight, F, mid) <= 1.0 ? k_hi : k_lo) = mid;
    }
    return k_hi;
}

HolderReport holder_verify(const std::vector<double>& u, const std::vector<double>& v,
                           const std::vector<bool>& mask, double cell_weight, const NFunction& A) {
    if (u.size() != v.size() || u.size() != mask.size())
        throw std::invalid_argument("holder_verify: size mismatch");
    HolderReport rep;
    for (size_t i = 0; i < u.size(); ++i)
        if (mask[i]) rep.integral += u[i] * v[i] * cell_weight;

    const NFunction Ahat = complementary(A);
    rep.norm_u = luxemburg_norm(u, mask, cell_weight, A);
    rep.norm_v = luxemburg_norm(v, mask, cell_weight, Ahat);

    const double denom = 2.0 * rep.norm_u * rep.norm_v;
    if (denom == 0.0) {
        if (std::abs(rep.integral) > 0.0)
            throw std::runtime_error("holder_verify: zero norms with a nonzero pairing");
        rep.ratio = 0.0;
        return rep;
    }
    rep.ratio = std::abs(rep.integral) / denom;
    return rep;
}

}  // namespace eftlab

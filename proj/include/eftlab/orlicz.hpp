#pragma once

#include <functional>
#include <string>
#include <vector>

namespace eftlab {

enum class NFunctionKind { ExpPoly, ExpRemainder, ComplementaryExpRemainder, SquareComposed, Custom };

/// Young function backing an Orlicz norm. SquareComposed wraps M(t) = A(sqrt t),
/// which need not be a proper N-function; it is flagged `extended` and only
/// the gauge below is defined for it.
class NFunction {
  public:
    /// A(t) = exp(t^{p/(p-1)}) - 1, p > 1.
    static NFunction exp_poly(double p);
    /// B(t) = e^t - 1 - t.
    static NFunction exp_remainder();
    /// B^(s) = (s+1)ln(s+1) - s, the complementary function of exp_remainder.
    static NFunction complementary_exp_remainder();
    /// M(t) = base(sqrt t); flagged extended.
    static NFunction square_composed(NFunction base);
    static NFunction custom(std::function<double(double)> value, std::function<double(double)> derivative,
                            std::string name);

    double operator()(double t) const { return value_(t); }
    double derivative(double t) const;
    bool has_derivative() const { return static_cast<bool>(derivative_); }
    bool extended() const { return extended_; }
    NFunctionKind kind() const { return kind_; }
    const std::string& name() const { return name_; }

  private:
    NFunction() = default;
    NFunctionKind kind_ = NFunctionKind::Custom;
    bool extended_ = false;
    std::function<double(double)> value_, derivative_;
    std::string name_;
};

/// Solves F(t) = y for t >= 0 to ~1e-10 relative accuracy (Newton inside a
/// geometrically grown bracket, bisection fallback). y <= 0 maps to 0.
double nfn_inverse(const NFunction& F, double y);

/// Complementary N-function via the inverse-derivative integral; the
/// exp_remainder kind returns its closed form exactly. Requires an
/// increasing derivative.
NFunction complementary(const NFunction& F);

/// Luxemburg gauge inf{k > 0 : sum_E F(|u_i|/k) w <= 1} on a uniform grid
/// with cell weight `cell_weight`, over the index mask E. Exponentials are
/// guarded in the log domain: arguments that would overflow count as +inf
/// and push the bisection upward.
double luxemburg_norm(const std::vector<double>& u, const std::vector<bool>& mask, double cell_weight,
                      const NFunction& F);

struct HolderReport {
    double integral = 0.0;   ///< integral of u v over E
    double norm_u = 0.0;     ///< Luxemburg norm of u under A
    double norm_v = 0.0;     ///< Luxemburg norm of v under the complementary function
    double ratio = 0.0;      ///< |integral| / (2 norm_u norm_v); contract: <= 1
};

/// Checks the generalized Hoelder inequality for the pair (A, complementary A).
HolderReport holder_verify(const std::vector<double>& u, const std::vector<double>& v,
                           const std::vector<bool>& mask, double cell_weight, const NFunction& A);

}  // namespace eftlab

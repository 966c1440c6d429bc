#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eftlab/domain.hpp"

namespace eftlab {

/// Nondecreasing modulus omega on (0, 1], omega(0) = 0, bounded by omega_0.
/// Backed either by a closed form or by a monotone table with linear
/// interpolation, clamped outside the tabulated range.
class OmegaFn {
  public:
    static OmegaFn power(double k, double scale = 1.0);           // omega(s) = scale * s^k
    static OmegaFn constant(double w0);                           // omega(s) = w0
    static OmegaFn inverse_log_power(double p);                   // omega(s) = (-ln s)^{-p}, s < 1
    static OmegaFn table(std::vector<double> s, std::vector<double> w);
    static OmegaFn from_csv(const std::string& path);             // columns r,omega
    static OmegaFn custom(std::function<double(double)> fn, std::string name);

    double operator()(double s) const;
    const std::string& name() const { return name_; }

    /// Throws std::invalid_argument unless the sampled values are
    /// nonnegative, nondecreasing and omega(0+) small.
    void validate() const;

  private:
    std::function<double(double)> fn_;
    std::string name_;
    std::vector<double> tab_s_, tab_w_;  // populated for the table variant
};

enum class PotentialKind { Constant, RadialExp, RadialOmega, Product, GridSampled };

/// Symbolic description of a bounded nonnegative absorption coefficient a(x)
/// together with its domain. Immutable after construction; evaluation is pure.
class PotentialSpec {
  public:
    static PotentialSpec constant(double a0, Domain dom);
    /// a(x) = exp(-1 / |x|^alpha), alpha > 0.
    static PotentialSpec radial_exp(double alpha, Domain dom);
    /// a(x) = exp(-omega(|x|) / |x|^e), e > 0.
    static PotentialSpec radial_omega(OmegaFn omega, double exponent, Domain dom);
    static PotentialSpec product(PotentialSpec left, PotentialSpec right);
    /// values >= 0 sampled at the domain's cell centers.
    static PotentialSpec grid_sampled(std::vector<double> values, Domain dom);

    PotentialKind kind() const { return kind_; }
    const Domain& domain() const { return domain_; }

    /// a at a Euclidean point of the domain closure; throws std::domain_error
    /// outside. The radial exponential variants extend continuously by 0 at
    /// the origin.
    double eval(std::span<const double> x) const;
    double eval(double x) const;  // N = 1 convenience

    /// a as a function of the radius (radial variants only).
    double eval_radial(double r) const;

    /// -ln a(r); evaluable without underflow for arbitrarily small a.
    double neg_log_radial(double r) const;

    /// All variants except GridSampled are radial.
    bool is_radial() const { return kind_ != PotentialKind::GridSampled; }

    /// true if a(r) is nondecreasing in r (checked by sampling for the
    /// omega/product forms, exact for the others).
    bool is_radial_monotone() const;

    double sup() const;  ///< sup over the domain closure

    /// Compact string form, parseable by parse_potential.
    std::string to_string() const;

    // variant parameters (meaningful per kind)
    double constant_value() const { return a0_; }
    double alpha() const { return alpha_; }
    double omega_exponent() const { return exponent_; }
    const OmegaFn& omega() const;
    const PotentialSpec& left() const;
    const PotentialSpec& right() const;
    const std::vector<double>& grid_values() const { return grid_values_; }

  private:
    PotentialSpec() = default;

    PotentialKind kind_ = PotentialKind::Constant;
    Domain domain_;
    double a0_ = 0.0;
    double alpha_ = 0.0;
    double exponent_ = 0.0;
    std::optional<OmegaFn> omega_;
    std::shared_ptr<const PotentialSpec> left_, right_;
    std::vector<double> grid_values_;
};

/// a~(x) = a(x) * exp(-1/|x|^alpha). The domain must contain the origin in
/// its closure (true for both admitted shapes).
PotentialSpec tilde_transform(const PotentialSpec& spec, double alpha);

/// Default exponent for the regularizing transform: N*theta/2 = min(2m, N)/2,
/// strictly below the classification threshold N*theta.
double default_tilde_alpha(int m, int n_dim);

/// Parses the compact grammar, e.g. "const:1.0", "radialexp:alpha=1.5",
/// "omega:file=omega.csv,exp=2", "omega:form=pow:k=0.5,exp=2",
/// "prod(radialexp:alpha=1,const:2)". Throws std::invalid_argument on
/// malformed input.
PotentialSpec parse_potential(const std::string& text, const Domain& dom);

}  // namespace eftlab

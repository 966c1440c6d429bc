#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eftlab {

enum class VerdictStatus { Finite, Divergent, Inconclusive };

std::string to_string(VerdictStatus s);

/// Thrown when an integrand comes back NaN (or, in strict mode, infinite) at
/// a quadrature point.
class IntegrandError : public std::runtime_error {
  public:
    IntegrandError(double s, const std::string& what) : std::runtime_error(what), where(s) {}
    double where;
};

struct BlockSum {
    double tau_lo = 0.0, tau_hi = 0.0;
    double sum = 0.0;
};

/// Convergence verdict for an integral with a singular endpoint, together
/// with the dyadic-block diagnostics the decision was made from.
struct IntegralVerdict {
    VerdictStatus status = VerdictStatus::Inconclusive;
    double value = 0.0;          ///< finite total (quadrature + extrapolated tail)
    double tail_estimate = 0.0;  ///< geometric tail added into value
    std::vector<BlockSum> blocks;
    std::vector<double> block_ratios;  ///< consecutive block-sum ratios

    int blocks_used() const { return static_cast<int>(blocks.size()); }
    bool finite() const { return status == VerdictStatus::Finite; }
};

struct EngineOptions {
    int window = 8;             ///< block sums examined by the decision rules
    int max_blocks = 48;
    double decay_ratio = 0.98;  ///< window ratios at or below this count as decay
    double tail_rel = 1e-8;     ///< early stop once tail <= tail_rel * accumulated
    double simpson_rel_tol = 1e-10;
    double tau_eval_limit = 0;  ///< 0 = unlimited; s-space wrappers cap near 690
    bool inf_is_divergence_evidence = false;  ///< internal quadratures tolerate +inf
};

/// Classifies integral_{tau0}^{inf} G(tau) dtau, where G is the already
/// log-substituted integrand (G(tau) = g(e^{-tau}) e^{-tau} for an s-space
/// integral over (0, e^{-tau0}]). Adaptive Simpson over the dyadic blocks
/// [2^k tau0, 2^{k+1} tau0]; a window of decaying block sums with a small
/// extrapolated geometric tail reports Finite, a window of non-decreasing
/// positive sums reports Divergent, anything else Inconclusive.
IntegralVerdict classify_log_integrand(const std::function<double(double)>& G, double tau0,
                                       const EngineOptions& opts = {});

/// Classifies integral_0^c g(s) ds for g >= 0 with the singularity at 0.
/// For c above e^{-1} the smooth piece [e^{-1}, c] is added by plain
/// adaptive quadrature; the status comes from the singular piece. Because g
/// is sampled at s = e^{-tau}, the dyadic blocks stop near the floating
/// range of s; the full 8-block diagnostic window requires c >= ~0.07.
IntegralVerdict classify_improper_integral(const std::function<double(double)>& g, double c,
                                           const EngineOptions& opts = {});

/// Adaptive Simpson with a relative tolerance; throws IntegrandError on NaN.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-10, int max_depth = 30);

}  // namespace eftlab

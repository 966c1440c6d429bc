#pragma once

#include "eftlab/distfn.hpp"
#include "eftlab/integral.hpp"
#include "eftlab/potential.hpp"

namespace eftlab {

/// Operator half-order m and spatial dimension N. The weight exponent
/// theta = min(2m/N, 1) only exists away from the critical pairing N = 2m;
/// the critical case switches to the entropy weight instead.
struct CriterionParams {
    int m = 1;
    int N = 1;

    CriterionParams() = default;
    CriterionParams(int m_, int n_);

    bool critical() const { return N == 2 * m; }
    double theta() const;  ///< throws std::logic_error when N == 2m
};

/// E(s) = s(-ln s) on its monotone stretch [0, e^{-1}], clamped above,
/// with E(0) = 0.
double entropy_weight(double s);

/// Sublevel-measure decay test: classifies s^{-1} M(s)^theta over (0, 1)
/// (or the entropy-weighted form when N = 2m).
IntegralVerdict eft_criterion(const DistFn& M, const CriterionParams& params);
IntegralVerdict eft_criterion(const PotentialSpec& spec, const CriterionParams& params);

enum class TriVerdict { Holds, Fails, Inconclusive };

std::string to_string(TriVerdict v);

/// Which lower bound the integrability exponent must clear: N/2 for the
/// second-order statement, theta for the general-operator one. The two
/// thresholds do not coincide; callers pick the statement under test.
enum class LogLpThreshold { HalfDimension, Theta };

struct LogLpResult {
    TriVerdict verdict = TriVerdict::Inconclusive;
    VerdictStatus integral_status = VerdictStatus::Inconclusive;
    double integral_value = 0.0;  ///< integral of |ln a|^p when finite
    double threshold = 0.0;
    bool p_above_threshold = false;
    int blocks_used = 0;
};

/// Integrability test for ln(1/a): holds when |ln a|^p has a finite integral
/// and p clears the selected threshold.
LogLpResult log_lp_criterion(const PotentialSpec& spec, double p, const CriterionParams& params,
                             LogLpThreshold which = LogLpThreshold::HalfDimension);

struct FCriterionResult {
    VerdictStatus l1_status = VerdictStatus::Inconclusive;  ///< f(a(.)) integrable?
    double l1_value = 0.0;
    IntegralVerdict weight;  ///< the theta- or log-weighted s-integral
    VerdictStatus overall = VerdictStatus::Inconclusive;
};

/// Comparison-function test: f positive, continuous, nonincreasing. Passes
/// only when f(a(.)) is integrable and the weighted integral of f^{-theta}
/// (or the log-weighted variant when N = 2m) converges.
FCriterionResult f_criterion(const std::function<double(double)>& f, const PotentialSpec& spec,
                             const CriterionParams& params);

/// Dini test on a radial modulus: classifies s^{-1} omega(s) over (0, c],
/// or s^{-1} omega(s) (-ln omega(s) - ln s) when N = 2m, with vanishing
/// omega contributing zero.
IntegralVerdict dini_criterion(const OmegaFn& omega, const CriterionParams& params,
                               double c = 0.36787944117144233);

/// Convergence-classified integral over the domain of g(r, -ln a(r)), with
/// the singular origin handled by the dyadic engine for radial specs and a
/// plain weighted cell sum for grid-sampled ones. The -ln a argument stays
/// representable long after a itself underflows.
IntegralVerdict domain_integral(const PotentialSpec& spec,
                                const std::function<double(double, double)>& g);

}  // namespace eftlab

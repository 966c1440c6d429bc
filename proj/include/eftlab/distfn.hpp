#pragma once

#include <vector>

#include "eftlab/potential.hpp"

namespace eftlab {

/// Distribution function M_a(s) = meas{x in Omega : a(x) <= s}.
///
/// Radial monotone specs get the closed-form path: the sublevel radius is
/// recovered from -ln a(r) = -ln s (log-domain inversion, so arbitrarily
/// small s stay representable) and turned into a measure. Everything else is
/// a sampled monotone table built by cell counting.
class DistFn {
  public:
    static DistFn closed_form(const PotentialSpec& spec);
    static DistFn grid_counting(const PotentialSpec& spec);
    /// Picks the closed-form path when the spec is radial monotone.
    static DistFn from_spec(const PotentialSpec& spec);

    double operator()(double s) const;

    /// M_a(e^{-tau}); safe for tau far past the underflow range of s.
    double at_minus_log(double tau) const;

    double total_measure() const { return total_measure_; }
    bool is_closed_form() const { return closed_form_; }

  private:
    DistFn() = default;

    bool closed_form_ = false;
    double total_measure_ = 0.0;
    Domain domain_;
    // closed-form path
    std::shared_ptr<const PotentialSpec> spec_;
    // table path: sublevel thresholds (as -ln a, ascending) with cumulative
    // measures of {a <= corresponding value}, largest first.
    std::vector<double> tab_neg_log_;   // ascending
    std::vector<double> tab_measure_;   // matching cumulative measure

    double invert_radius(double tau) const;
};

/// M_a(s) for a one-off query (builds the DistFn internally).
double measure_below(const PotentialSpec& spec, double s);

}  // namespace eftlab

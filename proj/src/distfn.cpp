#include "eftlab/distfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace eftlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

DistFn DistFn::closed_form(const PotentialSpec& spec) {
    if (!spec.is_radial_monotone())
        throw std::invalid_argument("DistFn::closed_form: spec is not radial monotone");
    DistFn d;
    d.closed_form_ = true;
    d.domain_ = spec.domain();
    d.total_measure_ = spec.domain().measure();
    d.spec_ = std::make_shared<PotentialSpec>(spec);
    return d;
}

DistFn DistFn::grid_counting(const PotentialSpec& spec) {
    DistFn d;
    d.closed_form_ = false;
    d.domain_ = spec.domain();
    d.total_measure_ = spec.domain().measure();

    const auto centers = spec.domain().cell_centers();
    const auto volumes = spec.domain().cell_volumes();
    const size_t n = centers.size();

    std::vector<double> neg_log(n);
    if (spec.kind() == PotentialKind::GridSampled) {
        const auto& vals = spec.grid_values();
        for (size_t i = 0; i < n; ++i)
            neg_log[i] = vals[i] > 0.0 ? -std::log(vals[i]) : kInf;
    } else {
        for (size_t i = 0; i < n; ++i) neg_log[i] = spec.neg_log_radial(centers[i]);
    }

    // sort cells by value descending <=> by -ln a ascending
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return neg_log[a] < neg_log[b]; });

    // cumulative measure of {a >= value}: walk from the largest value down,
    // recording meas{a <= s} as s sweeps downward.
    double cum = d.total_measure_;
    for (size_t k = 0; k < n; ++k) {
        const size_t i = order[k];
        d.tab_neg_log_.push_back(neg_log[i]);
        d.tab_measure_.push_back(cum);
        cum -= volumes[i];
    }
    return d;
}

DistFn DistFn::from_spec(const PotentialSpec& spec) {
    if (spec.is_radial() && spec.is_radial_monotone()) return closed_form(spec);
    return grid_counting(spec);
}

double DistFn::invert_radius(double tau) const {
    // largest r with -ln a(r) >= tau (a nondecreasing => -ln a nonincreasing)
    const double rmax = domain_.max_radius();
    if (spec_->neg_log_radial(rmax) >= tau) return rmax;
    double lo = 0.0, hi = rmax;  // invariant: -ln a(lo) >= tau > -ln a(hi)
    for (int it = 0; it < 200 && hi - lo > 1e-16 * rmax; ++it) {
        const double mid = 0.5 * (lo + hi);
        (spec_->neg_log_radial(mid) >= tau ? lo : hi) = mid;
    }
    return lo;  // the certified side; exactly 0 when the sublevel set is null
}

double DistFn::at_minus_log(double tau) const {
    if (closed_form_) {
        // -ln a is nonincreasing with supremum at the origin; if even that
        // limit stays below tau, the sublevel set is empty.
        if (spec_->neg_log_radial(0.0) < tau) return 0.0;
        const double r = invert_radius(tau);
        return domain_.radial_sublevel_measure(r);
    }
    // cells with -ln a >= tau are exactly the entries from the first one at
    // or past tau; the cumulative measure there is meas{a <= s}.
    const size_t idx = static_cast<size_t>(std::lower_bound(tab_neg_log_.begin(), tab_neg_log_.end(), tau) -
                                           tab_neg_log_.begin());
    if (idx >= tab_neg_log_.size()) return 0.0;
    return tab_measure_[idx];
}

double DistFn::operator()(double s) const {
    if (s < 0.0) return 0.0;
    const double tau = s == 0.0 ? kInf : -std::log(s);  // meas{a <= 0} = meas{a = 0}
    return std::min(at_minus_log(tau), total_measure_);
}

double measure_below(const PotentialSpec& spec, double s) {
    if (s < 0.0) throw std::invalid_argument("measure_below: s must be >= 0");
    return DistFn::from_spec(spec)(s);
}

}  // namespace eftlab

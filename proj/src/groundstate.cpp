#include "eftlab/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace eftlab {

namespace {

// Shared between the interval and radial paths: cell coordinates, quadrature
// weights, and the quadratic-part band (A v gives the variational gradient
// after dividing by the cell weight).
struct DiscreteProblem {
    std::vector<double> radii;     // cell centers
    std::vector<double> weights;   // quadrature weights (dx or shell volumes)
    std::vector<double> a_vals;    // potential at the cells
    BandedSymmetric quad;          // band of the quadratic form
    double dx = 0.0;
    int m = 1;

    double mass(const std::vector<double>& v) const {
        double s = 0.0;
        for (size_t i = 0; i < v.size(); ++i) s += v[i] * v[i] * weights[i];
        return s;
    }

    double energy(const std::vector<double>& v, double q) const {
        std::vector<double> av(v.size());
        quad.multiply(v, av);
        double e = 0.0;
        for (size_t i = 0; i < v.size(); ++i) {
            e += v[i] * av[i];
            if (a_vals[i] != 0.0) e += a_vals[i] * std::pow(std::abs(v[i]), 1.0 + q) * weights[i];
        }
        return e;
    }

    // variational (per-measure) gradient: (2 A v)_i / w_i + (1+q) a_i |v_i|^q sgn v_i
    void variational_gradient(const std::vector<double>& v, double q, std::vector<double>& g) const {
        quad.multiply(v, g);
        for (size_t i = 0; i < v.size(); ++i) {
            const double nonlin = (v[i] == 0.0 || a_vals[i] == 0.0)
                                      ? 0.0
                                      : (1.0 + q) * a_vals[i] * std::pow(std::abs(v[i]), q) *
                                            (v[i] > 0.0 ? 1.0 : -1.0);
            g[i] = 2.0 * g[i] / weights[i] + nonlin;
        }
    }
};

BandedSymmetric radial_stiffness_band(const Domain& dom) {
    // flux form sum_j S(r_j) ((v_j - v_{j-1})/dr)^2 dr with a reflecting
    // origin (S-weighted flux vanishes there) and a Dirichlet ghost at R
    const int n = dom.resolution;
    const double dr = dom.extent / n;
    const double s_scale = dom.dimension * unit_ball_volume(dom.dimension);
    auto surf = [&](double r) { return s_scale * std::pow(r, dom.dimension - 1); };

    BandedSymmetric a(n, 1);
    for (int j = 1; j <= n; ++j) {
        const double s = surf(j * dr) / dr;
        if (j < n) {
            a.at(0, j - 1) += s;
            a.at(0, j) += s;
            a.at(1, j - 1) -= s;
        } else {
            a.at(0, n - 1) += s;  // wall edge against the zero ghost
        }
    }
    return a;
}

DiscreteProblem build_problem(const PotentialSpec& spec, const Domain& dom, int m) {
    if (dom.shape == Shape::Ball && m != 1)
        throw std::invalid_argument("minimize_lambda1: the radial reduction is limited to m = 1");
    if (dom.shape == Shape::Ball && dom.dimension > 1 && !spec.is_radial() &&
        spec.kind() != PotentialKind::GridSampled)
        throw std::invalid_argument("minimize_lambda1: ball domains need radial potentials");

    const int n = dom.resolution;
    if (n < min_grid_size(m)) throw std::invalid_argument("minimize_lambda1: grid too small");

    DiscreteProblem p{dom.cell_centers(), dom.cell_volumes(), {}, BandedSymmetric(1, 0),
                      dom.extent / n, m};
    p.a_vals.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        p.a_vals[static_cast<size_t>(i)] =
            spec.kind() == PotentialKind::GridSampled ? spec.grid_values()[static_cast<size_t>(i)]
                                                      : spec.eval_radial(p.radii[static_cast<size_t>(i)]);
    }
    if (dom.shape == Shape::Interval) {
        BandedSymmetric band = difference_operator_band(n, p.dx, m);
        // fold the quadrature weight into the band so v^T A v is the integral
        for (int d = 0; d <= band.half_bandwidth(); ++d)
            for (int i = 0; i + d < n; ++i) band.at(d, i) *= p.dx;
        p.quad = std::move(band);
    } else {
        p.quad = radial_stiffness_band(dom);
    }
    return p;
}

}  // namespace

double discrete_energy(const GridFunction& v, const PotentialSpec& spec, int m, double q) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("discrete_energy: q must lie in (0, 1)");
    double e = difference_energy(v.values, v.dx, m);
    for (int i = 0; i < v.size(); ++i) {
        const double x = (i + 0.5) * v.dx;
        const double a = spec.kind() == PotentialKind::GridSampled
                             ? spec.grid_values()[static_cast<size_t>(i)]
                             : spec.eval_radial(x);
        e += a * std::pow(std::abs(v.values[static_cast<size_t>(i)]), 1.0 + q) * v.dx;
    }
    return e;
}

std::vector<double> discrete_energy_gradient(const GridFunction& v, const PotentialSpec& spec, int m,
                                             double q) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("discrete_energy_gradient: q must lie in (0, 1)");
    const int n = v.size();
    BandedSymmetric band = difference_operator_band(n, v.dx, m);
    std::vector<double> g(static_cast<size_t>(n));
    band.multiply(v.values, g);
    for (int i = 0; i < n; ++i) {
        const double x = (i + 0.5) * v.dx;
        const double a = spec.kind() == PotentialKind::GridSampled
                             ? spec.grid_values()[static_cast<size_t>(i)]
                             : spec.eval_radial(x);
        const double vi = v.values[static_cast<size_t>(i)];
        const double nonlin = vi == 0.0 ? 0.0
                                        : (1.0 + q) * a * std::pow(std::abs(vi), q) * (vi > 0.0 ? 1.0 : -1.0);
        g[static_cast<size_t>(i)] = (2.0 * g[static_cast<size_t>(i)] + nonlin) * v.dx;
    }
    return g;
}

GroundStateResult minimize_lambda1(const PotentialSpec& spec, const Domain& dom, int m, double q,
                                   double h, const MinimizeOptions& opts) {
    if (!(h > 0.0)) throw std::invalid_argument("minimize_lambda1: h must be > 0");
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("minimize_lambda1: q must lie in (0, 1)");
    DiscreteProblem prob = build_problem(spec, dom, m);
    const int n = static_cast<int>(prob.radii.size());
    const double tau0 = std::pow(prob.dx, 2.0 * m) / 4.0;

    auto project = [&](std::vector<double>& v) {
        const double ms = prob.mass(v);
        const double scale = std::sqrt(h / ms);
        for (auto& vi : v) vi *= scale;
    };

    // centered bump profile with the clamp order's boundary flatness, so the
    // start carries no spurious wall energy
    std::vector<double> base(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = prob.radii[static_cast<size_t>(i)] / dom.extent;  // (0,1)
        const double profile = dom.shape == Shape::Interval ? std::cos(M_PI * (t - 0.5))
                                                            : std::cos(0.5 * M_PI * t);
        base[static_cast<size_t>(i)] = std::pow(profile, m);
    }

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);

    GroundStateResult best;
    best.h = h;
    best.lambda = std::numeric_limits<double>::infinity();

    const int starts = 1 + std::max(0, opts.extra_starts);
    std::vector<double> grad(static_cast<size_t>(n)), trial(static_cast<size_t>(n));
    for (int s = 0; s < starts; ++s) {
        std::vector<double> v = base;
        if (s > 0) {
            for (auto& vi : v) vi = std::abs(vi + 0.5 * unif(rng));  // nonnegative starts
        }
        project(v);

        // ring buffer of the last tol_window+1 functional values
        std::vector<double> f_ring(static_cast<size_t>(opts.tol_window) + 1, 0.0);
        double f = prob.energy(v, q);
        bool converged = false;
        long it = 0;
        for (; it < opts.max_iters; ++it) {
            prob.variational_gradient(v, q, grad);
            double tau = tau0;
            bool accepted = false;
            for (int bt = 0; bt < 60; ++bt) {
                for (int i = 0; i < n; ++i)
                    trial[static_cast<size_t>(i)] = v[static_cast<size_t>(i)] - tau * grad[static_cast<size_t>(i)];
                project(trial);
                const double ft = prob.energy(trial, q);
                if (ft <= f) {
                    v.swap(trial);
                    f = ft;
                    accepted = true;
                    break;
                }
                tau *= 0.5;
            }
            if (!accepted) {
                converged = true;  // no descent direction left at float resolution
                break;
            }

            f_ring[static_cast<size_t>(it % (opts.tol_window + 1))] = f;
            if (it >= opts.tol_window) {
                const double f_old = f_ring[static_cast<size_t>((it + 1) % (opts.tol_window + 1))];
                if (std::abs(f_old - f) <= opts.rel_tol * std::max(std::abs(f), 1e-300)) {
                    converged = true;
                    break;
                }
            }
        }

        if (f < best.lambda) {
            best.lambda = f;
            best.converged = converged;
            best.iterations = it;
            best.minimizer.values = v;
            best.minimizer.dx = prob.dx;
            best.minimizer.clamp_order = m;
        }
    }
    best.starts_used = starts;

    // exact mass constraint on the reported minimizer
    {
        const double ms = prob.mass(best.minimizer.values);
        const double scale = std::sqrt(h / ms);
        for (auto& vi : best.minimizer.values) vi *= scale;
    }
    return best;
}

GridFunction default_bump(int m, int n) {
    GridFunction g = GridFunction::sample(n, 1.0, m, [m](double x) {
        const double s = std::sin(M_PI * x);
        return m == 1 ? s : s * s;  // sin^2 keeps the first derivative flat at the walls
    });
    const double nrm = std::sqrt(g.l2_norm_sq());
    for (auto& v : g.values) v /= nrm;
    return g;
}

TestFnBound testfn_upper_bound(double alpha, int m, double q, double h, const GridFunction& bump,
                               double sup_a, const Domain& dom) {
    if (!(alpha > 0.0)) throw std::invalid_argument("testfn_upper_bound: alpha must be > 0");
    if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("testfn_upper_bound: need h in (0, 1)");
    const double mass = bump.l2_norm_sq();
    if (std::abs(mass - 1.0) > 1e-8)
        throw std::invalid_argument("testfn_upper_bound: bump must have unit L2 norm");

    TestFnBound out;
    out.radius = std::pow(-std::log(h), -1.0 / alpha);
    if (out.radius > dom.max_radius())
        throw std::invalid_argument("testfn_upper_bound: concentration radius exceeds the domain");

    const int N = dom.dimension;
    const double seminorm = difference_energy(bump.values, bump.dx, m);
    double pnorm = 0.0;
    for (double v : bump.values) pnorm += std::pow(std::abs(v), 1.0 + q) * bump.dx;

    const double sup_tilde = sup_a * std::exp(-1.0 / std::pow(out.radius, alpha));
    out.gradient_term = h * std::pow(out.radius, -2.0 * m) * seminorm;
    out.absorption_term = std::pow(h, 0.5 * (1.0 + q)) * std::pow(out.radius, 0.5 * N * (1.0 - q)) *
                          sup_tilde * pnorm;
    out.value = out.gradient_term + out.absorption_term;
    return out;
}

double linear_lambda12(const PotentialSpec& spec, const Domain& dom, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("linear_lambda12: h must be > 0");
    DiscreteProblem prob = build_problem(spec, dom, 1);
    const int n = static_cast<int>(prob.radii.size());
    // quadratic band already carries the quadrature weight; the Schroedinger
    // term adds a_i / h^2 on the weighted diagonal. Cells whose coupling
    // leaves the floating range act as hard walls through a finite cap.
    constexpr double kDiagCap = 1e200;
    BandedSymmetric a = prob.quad;
    for (int i = 0; i < n; ++i) {
        double add = prob.a_vals[static_cast<size_t>(i)] / (h * h);
        if (!(add <= kDiagCap)) add = kDiagCap;
        a.at(0, i) += add * prob.weights[static_cast<size_t>(i)];
    }
    return smallest_eigenvalue(a, prob.weights, 1e-10);
}

// ---------------------------------------------------------------------------
// LambdaCurve

LambdaCurve LambdaCurve::from_samples(std::vector<double> h, std::vector<double> lambda) {
    if (h.size() != lambda.size() || h.size() < 2)
        throw std::invalid_argument("LambdaCurve: need >= 2 matching samples");
    std::vector<size_t> order(h.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return h[a] < h[b]; });
    LambdaCurve c;
    for (size_t k : order) {
        if (!(h[k] > 0.0) || !(lambda[k] > 0.0))
            throw std::invalid_argument("LambdaCurve: samples must be positive");
        if (!c.h_.empty() && h[k] == c.h_.back())
            throw std::invalid_argument("LambdaCurve: duplicate h sample");
        c.h_.push_back(h[k]);
        c.lambda_.push_back(lambda[k]);
    }
    c.fit_tail();
    return c;
}

double LambdaCurve::operator()(double h) const {
    if (!(h > 0.0)) throw std::invalid_argument("LambdaCurve: h must be > 0");
    const auto seg_value = [&](size_t i, double hh) {
        const double beta = std::log(lambda_[i + 1] / lambda_[i]) / std::log(h_[i + 1] / h_[i]);
        return lambda_[i] * std::pow(hh / h_[i], beta);
    };
    if (h < h_.front()) {
        // below the samples the curve follows the fitted decade power law,
        // the same law the decay-time tail integral uses
        const auto fit = tail_fit();
        return fit.kappa * std::pow(h, fit.beta);
    }
    if (h >= h_.back()) return seg_value(h_.size() - 2, h);
    const size_t i = static_cast<size_t>(std::upper_bound(h_.begin(), h_.end(), h) - h_.begin()) - 1;
    return seg_value(std::min(i, h_.size() - 2), h);
}

LambdaCurve::PowerFit LambdaCurve::local_fit(double h) const {
    if (h < h_.front()) return tail_;
    size_t i = h >= h_.back()
                   ? h_.size() - 2
                   : static_cast<size_t>(std::upper_bound(h_.begin(), h_.end(), h) - h_.begin()) - 1;
    i = std::min(i, h_.size() - 2);
    PowerFit fit;
    fit.beta = std::log(lambda_[i + 1] / lambda_[i]) / std::log(h_[i + 1] / h_[i]);
    fit.kappa = lambda_[i] / std::pow(h_[i], fit.beta);
    return fit;
}

void LambdaCurve::fit_tail() {
    // least squares on (ln h, ln lambda) over the lowest decade
    const double cutoff = h_.front() * 10.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (size_t i = 0; i < h_.size(); ++i) {
        if (h_[i] > cutoff && cnt >= 2) break;
        const double x = std::log(h_[i]), y = std::log(lambda_[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++cnt;
    }
    const double denom = cnt * sxx - sx * sx;
    if (cnt < 2 || std::abs(denom) < 1e-30) {
        tail_.beta = 0.0;
        tail_.kappa = lambda_.front();
        return;
    }
    tail_.beta = (cnt * sxy - sx * sy) / denom;
    tail_.kappa = std::exp((sy - tail_.beta * sx) / cnt);
}

std::vector<CertificateRow> lower_bound_certificate(const LambdaCurve& curve,
                                                    const PotentialSpec& tilde_spec,
                                                    const CriterionParams& params, double gamma_exp,
                                                    double q, bool entropy_weighted) {
    if (!(gamma_exp > 0.0 && gamma_exp < 1.0))
        throw std::invalid_argument("lower_bound_certificate: gamma must lie in (0, 1)");
    if (params.critical() && !entropy_weighted)
        throw std::invalid_argument(
            "lower_bound_certificate: N = 2m requires the entropy-weighted variant");

    const double eta = gamma_exp * (1.0 - q) / 2.0;
    const auto& hs = curve.h_samples();
    const auto& ls = curve.lambda_samples();

    double cprime = 0.0;
    for (size_t i = 0; i < hs.size(); ++i)
        cprime = std::max(cprime, ls[i] / std::pow(hs[i], 1.0 - eta));
    cprime *= 2.0;

    DistFn M = DistFn::from_spec(tilde_spec);
    std::vector<CertificateRow> rows;
    rows.reserve(hs.size());
    for (size_t i = 0; i < hs.size(); ++i) {
        CertificateRow row;
        row.h = hs[i];
        row.lambda = ls[i];
        row.threshold = cprime * std::pow(hs[i], eta);
        row.sublevel_measure = M(row.threshold);
        const double weight = entropy_weighted ? entropy_weight(row.sublevel_measure)
                                               : std::pow(row.sublevel_measure, params.theta());
        row.value = ls[i] / hs[i] * weight;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace eftlab

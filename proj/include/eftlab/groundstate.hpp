#pragma once

#include <cstdint>
#include <optional>

#include "eftlab/criteria.hpp"
#include "eftlab/distfn.hpp"
#include "eftlab/grid_function.hpp"
#include "eftlab/potential.hpp"

namespace eftlab {

/// F(v) = |D^m v|_2^2 + integral a(x) |v|^{1+q}: the constrained functional
/// whose infimum over ||v||_2^2 = h is the nonlinear ground-state level.
double discrete_energy(const GridFunction& v, const PotentialSpec& spec, int m, double q);

/// Coordinate gradient dF/dv_i (carries the cell weight dx); the |v|^{1+q}
/// term is differentiable at 0 with derivative 0.
std::vector<double> discrete_energy_gradient(const GridFunction& v, const PotentialSpec& spec, int m,
                                             double q);

struct MinimizeOptions {
    int extra_starts = 4;       ///< random perturbations of the cosine start
    std::uint64_t seed = 1;
    long max_iters = 2000000;
    double rel_tol = 1e-10;     ///< relative F change over tol_window iterations
    int tol_window = 100;
};

struct GroundStateResult {
    double h = 0.0;
    double lambda = 0.0;   ///< best value of the constrained functional
    GridFunction minimizer;
    long iterations = 0;   ///< iterations spent on the winning start
    int starts_used = 0;
    bool converged = false;
};

/// Projected descent for the mass-constrained functional: step along the
/// variational gradient with backtracking from dx^{2m}/4, renormalize to
/// ||v||_2^2 = h, keep the best start. Deterministic for a fixed seed.
GroundStateResult minimize_lambda1(const PotentialSpec& spec, const Domain& dom, int m, double q,
                                   double h, const MinimizeOptions& opts = {});

struct TestFnBound {
    double value = 0.0;
    double radius = 0.0;      ///< concentration radius (-ln h)^{-1/alpha}
    double gradient_term = 0.0;
    double absorption_term = 0.0;
};

/// Two-term upper bound from the rescaled bump v_r = sqrt(h/r^N) b(x/r):
/// h r^{-2m} |D^m b|^2 + h^{(1+q)/2} r^{N(1-q)/2} sup_{B_r} a~ * |b|_{1+q}^{1+q},
/// with sup a~ bounded by sup_a * exp(-1/r^alpha).
TestFnBound testfn_upper_bound(double alpha, int m, double q, double h, const GridFunction& bump,
                               double sup_a, const Domain& dom);

/// Mass-normalized polynomial-free default profile on (0,1) with the clamp
/// order's boundary flatness (sin for m = 1, sin^2 for m = 2).
GridFunction default_bump(int m, int n);

/// Smallest eigenvalue of the Schroedinger discretization -Lap_h + a/h^2
/// with Dirichlet walls (inverse power iteration). m = 1 only; the ball
/// shape uses the radial reduction with shell weights.
double linear_lambda12(const PotentialSpec& spec, const Domain& dom, double h);

/// Monotone piecewise power-law interpolant (linear in log-log) through
/// ground-state samples; extrapolates with the edge exponents.
class LambdaCurve {
  public:
    static LambdaCurve from_samples(std::vector<double> h, std::vector<double> lambda);

    double operator()(double h) const;
    double h_min() const { return h_.front(); }
    double h_max() const { return h_.back(); }
    std::size_t size() const { return h_.size(); }
    const std::vector<double>& h_samples() const { return h_; }
    const std::vector<double>& lambda_samples() const { return lambda_; }

    struct PowerFit { double kappa = 0.0, beta = 0.0; };
    /// log-log least squares over the lowest decade of samples.
    const PowerFit& tail_fit() const { return tail_; }
    /// power law of the segment containing h (the tail fit below the samples).
    PowerFit local_fit(double h) const;

  private:
    std::vector<double> h_, lambda_;  // ascending in h
    PowerFit tail_;

    void fit_tail();
};

struct CertificateRow {
    double h = 0.0;
    double lambda = 0.0;
    double threshold = 0.0;          ///< C' h^eta
    double sublevel_measure = 0.0;   ///< M_a~(C' h^eta)
    double value = 0.0;              ///< (lambda/h) * weight(measure)
};

/// Positivity certificate for the ground-state lower bound: with
/// eta = gamma (1-q)/2 and C' = 2 sup_sweep lambda/h^{1-eta}, tabulates
/// (lambda(h)/h) M_a~(C' h^eta)^theta per sample (entropy-weighted variant on
/// request; mandatory information for N = 2m, which this routine refuses
/// without it).
std::vector<CertificateRow> lower_bound_certificate(const LambdaCurve& curve,
                                                    const PotentialSpec& tilde_spec,
                                                    const CriterionParams& params, double gamma_exp,
                                                    double q, bool entropy_weighted = false);

}  // namespace eftlab

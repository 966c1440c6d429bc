#pragma once

#include "eftlab/groundstate.hpp"
#include "eftlab/integral.hpp"

namespace eftlab {

struct PowerTail {
    double kappa = 0.0;        ///< fitted prefactor of lambda ~ kappa h^beta near 0
    double beta = 0.0;         ///< fitted exponent
    double contribution = 0.0; ///< analytic tail integral below the smallest sample
    bool usable = false;       ///< beta < 1
};

struct BoundResult {
    bool has_bound = false;
    double time = 0.0;       ///< decay-time bound T when has_bound
    double main_part = 0.0;  ///< half-integral of 1/lambda over [h_min, y0]
    PowerTail tail;
};

/// T <= 1/2 integral_0^{y0} dh / lambda(h): trapezoid in log h on the
/// interpolant plus the analytic power-law tail below the smallest sample;
/// no bound when the fitted tail exponent reaches 1.
BoundResult extinction_bound(const LambdaCurve& curve, double y0);

struct OdeTrajectory {
    std::vector<double> t, y;
    double vanish_time = 0.0;  ///< +inf sentinel when y stays positive
    bool vanished = false;
};

/// Explicit descent for y' = -2 lambda(y): one evaluation per step, each
/// step advancing the local power-law segment of the curve exactly, so the
/// trajectory reaches an exact zero in finite time whenever the local
/// exponent allows it and the crossing time is closed analytically.
OdeTrajectory ode_descent(const LambdaCurve& curve, double y0, double dt, double t_max = 100.0);

struct KvTermRow {
    int n = 0;
    double alpha_n = 0.0;
    double term = 0.0;
    double partial_sum = 0.0;
};

struct KvSumResult {
    std::vector<KvTermRow> rows;
    VerdictStatus status = VerdictStatus::Inconclusive;
    std::vector<double> block_sums;    ///< dyadic index blocks of the terms
    std::vector<double> block_ratios;
};

/// Partial sums of 1/lambda(alpha_n^{(1-q)/2}) (ln lambda + ln(alpha_n/alpha_{n+1}) + 1)
/// with the dyadic-block decay heuristic applied to the term sequence.
/// The default sequence is alpha_n = n^{-n}.
KvSumResult kv_sum(const std::function<double(double)>& lambda12, double q, int n_max);
KvSumResult kv_sum(const std::function<double(double)>& lambda12,
                   const std::function<double(int)>& log_alpha, double q, int n_max);

struct KvEquivalence {
    IntegralVerdict integral;  ///< verdict on integral dh / (h lambda(h))
    KvSumResult sum;
    bool agree = false;
};

/// Runs both sides of the sum/integral equivalence on the same evaluator and
/// reports whether the verdicts agree.
KvEquivalence kv_integral_equiv(const std::function<double(double)>& lambda12, double q,
                                int n_max = 30);

/// Synthetic level profiles for the equivalence checks:
/// "logpow:p=X" gives lambda(h) = max(1, -ln h)^X.
std::function<double(double)> parse_lambda_profile(const std::string& text);

}  // namespace eftlab

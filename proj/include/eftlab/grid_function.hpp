#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "eftlab/banded.hpp"
#include "eftlab/domain.hpp"

namespace eftlab {

/// Values on a uniform cell-centered grid over (0, L) with clamp order m:
/// every ghost value beyond either wall is zero, which encodes vanishing
/// traces up to order m-1 (first-order accurate at the wall).
struct GridFunction {
    std::vector<double> values;
    double dx = 0.0;
    int clamp_order = 1;

    int size() const { return static_cast<int>(values.size()); }
    double l2_norm_sq() const;  ///< dx * sum v_i^2

    static GridFunction zeros(int n, double length, int m);
    /// samples f at the cell centers of (0, length)
    static GridFunction sample(int n, double length, int m, const std::function<double(double)>& f);
};

/// m-fold forward/backward difference of the zero-extended values; the
/// result has n + m entries covering the full stencil support.
std::vector<double> apply_difference(const std::vector<double>& v, double dx, int m);

/// dx * sum of squares of the m-th difference: the discrete seminorm
/// |D^m v|^2 integrated over the interval.
double difference_energy(const std::vector<double>& v, double dx, int m);

/// Stiffness band of the m-th difference form: the autocorrelation of the
/// m-th difference stencil, n x n, half-bandwidth m. Encodes the clamped
/// boundary through plain zero extension (no boundary rows).
BandedSymmetric difference_operator_band(int n, double dx, int m);

/// Minimal interior size so the stencils fit.
int min_grid_size(int m);

}  // namespace eftlab

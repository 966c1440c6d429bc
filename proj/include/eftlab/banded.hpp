#pragma once

#include <span>
#include <vector>

namespace eftlab {

/// Symmetric banded matrix, lower storage: diag(d)[i] = A(i+d, i) for
/// d = 0..half_bandwidth.
class BandedSymmetric {
  public:
    BandedSymmetric(int n, int half_bandwidth);

    int size() const { return n_; }
    int half_bandwidth() const { return bw_; }

    double& at(int d, int i) { return bands_[static_cast<size_t>(d)][static_cast<size_t>(i)]; }
    double at(int d, int i) const { return bands_[static_cast<size_t>(d)][static_cast<size_t>(i)]; }

    void multiply(std::span<const double> x, std::span<double> y) const;

    /// A + scale * I
    BandedSymmetric shifted(double scale) const;

  private:
    int n_, bw_;
    std::vector<std::vector<double>> bands_;
};

/// Banded Cholesky factorization (A = L L^T) reusable across solves; throws
/// std::runtime_error if A is not positive definite.
class BandedCholesky {
  public:
    explicit BandedCholesky(const BandedSymmetric& a);
    void solve(std::span<double> rhs_to_solution) const;

  private:
    int n_, bw_;
    std::vector<std::vector<double>> l_;  // lower bands, same layout
};

/// Smallest eigenvalue of the pencil A x = lambda D x (D diagonal positive)
/// by inverse power iteration with a reused factorization. Tolerance applies
/// to the Rayleigh-quotient increment; throws on stagnation.
double smallest_eigenvalue(const BandedSymmetric& a, std::span<const double> diag_weights,
                           double tol = 1e-10, int max_iters = 20000,
                           std::vector<double>* eigenvector = nullptr);

}  // namespace eftlab

#include "eftlab/banded.hpp"

#include <cmath>
#include <stdexcept>

namespace eftlab {

BandedSymmetric::BandedSymmetric(int n, int half_bandwidth) : n_(n), bw_(half_bandwidth) {
    if (n < 1 || half_bandwidth < 0) throw std::invalid_argument("BandedSymmetric: bad shape");
    bands_.assign(static_cast<size_t>(bw_) + 1, std::vector<double>(static_cast<size_t>(n_), 0.0));
}

void BandedSymmetric::multiply(std::span<const double> x, std::span<double> y) const {
    for (int i = 0; i < n_; ++i) y[i] = bands_[0][static_cast<size_t>(i)] * x[i];
    for (int d = 1; d <= bw_; ++d) {
        const auto& band = bands_[static_cast<size_t>(d)];
        for (int i = 0; i + d < n_; ++i) {
            y[i + d] += band[static_cast<size_t>(i)] * x[i];
            y[i] += band[static_cast<size_t>(i)] * x[i + d];
        }
    }
}

BandedSymmetric BandedSymmetric::shifted(double scale) const {
    BandedSymmetric out = *this;
    for (int i = 0; i < n_; ++i) out.at(0, i) += scale;
    return out;
}

BandedCholesky::BandedCholesky(const BandedSymmetric& a) : n_(a.size()), bw_(a.half_bandwidth()) {
    l_.assign(static_cast<size_t>(bw_) + 1, std::vector<double>(static_cast<size_t>(n_), 0.0));
    for (int d = 0; d <= bw_; ++d)
        for (int i = 0; i + d < n_; ++i) l_[static_cast<size_t>(d)][static_cast<size_t>(i)] = a.at(d, i);

    // L(i+d, i) stored at l_[d][i]; classic banded left-looking update
    for (int j = 0; j < n_; ++j) {
        double diag = l_[0][static_cast<size_t>(j)];
        for (int k = std::max(0, j - bw_); k < j; ++k) {
            const double ljk = l_[static_cast<size_t>(j - k)][static_cast<size_t>(k)];
            diag -= ljk * ljk;
        }
        if (!(diag > 0.0)) throw std::runtime_error("BandedCholesky: matrix not positive definite");
        const double ljj = std::sqrt(diag);
        l_[0][static_cast<size_t>(j)] = ljj;
        for (int i = j + 1; i <= std::min(n_ - 1, j + bw_); ++i) {
            double v = l_[static_cast<size_t>(i - j)][static_cast<size_t>(j)];
            for (int k = std::max(0, i - bw_); k < j; ++k)
                v -= l_[static_cast<size_t>(i - k)][static_cast<size_t>(k)] *
                     l_[static_cast<size_t>(j - k)][static_cast<size_t>(k)];
            l_[static_cast<size_t>(i - j)][static_cast<size_t>(j)] = v / ljj;
        }
    }
}

void BandedCholesky::solve(std::span<double> x) const {
    // forward: L y = b
    for (int i = 0; i < n_; ++i) {
        double v = x[i];
        for (int k = std::max(0, i - bw_); k < i; ++k)
            v -= l_[static_cast<size_t>(i - k)][static_cast<size_t>(k)] * x[k];
        x[i] = v / l_[0][static_cast<size_t>(i)];
    }
    // backward: L^T x = y
    for (int i = n_ - 1; i >= 0; --i) {
        double v = x[i];
        for (int k = i + 1; k <= std::min(n_ - 1, i + bw_); ++k)
            v -= l_[static_cast<size_t>(k - i)][static_cast<size_t>(i)] * x[k];
        x[i] = v / l_[0][static_cast<size_t>(i)];
    }
}

double smallest_eigenvalue(const BandedSymmetric& a, std::span<const double> diag_weights,
                           double tol, int max_iters, std::vector<double>* eigenvector) {
    const int n = a.size();
    if (static_cast<int>(diag_weights.size()) != n)
        throw std::invalid_argument("smallest_eigenvalue: weight size mismatch");
    BandedCholesky chol(a);

    std::vector<double> v(static_cast<size_t>(n)), av(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = 1.0 + 1e-3 * std::sin(2.7 * i);

    auto weighted_norm2 = [&](const std::vector<double>& x) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += x[static_cast<size_t>(i)] * x[static_cast<size_t>(i)] * diag_weights[i];
        return s;
    };

    double rq_prev = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        // x <- A^{-1} D v, normalized in the D-weighted norm
        std::vector<double> x(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = diag_weights[i] * v[static_cast<size_t>(i)];
        chol.solve(x);
        const double nrm = std::sqrt(weighted_norm2(x));
        if (!(nrm > 0.0)) throw std::runtime_error("smallest_eigenvalue: iteration collapsed");
        for (auto& xi : x) xi /= nrm;

        a.multiply(x, av);
        double num = 0.0;
        for (int i = 0; i < n; ++i) num += x[static_cast<size_t>(i)] * av[static_cast<size_t>(i)];
        const double rq = num;  // denominator is 1 by normalization
        v = std::move(x);
        if (it > 2 && std::abs(rq - rq_prev) <= tol * std::max(1.0, std::abs(rq))) {
            if (eigenvector) *eigenvector = v;
            return rq;
        }
        rq_prev = rq;
    }
    throw std::runtime_error("smallest_eigenvalue: stagnation, last Rayleigh quotient " +
                             std::to_string(rq_prev));
}

}  // namespace eftlab

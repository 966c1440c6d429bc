#include "eftlab/grid_function.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace eftlab {

double GridFunction::l2_norm_sq() const {
    double s = 0.0;
    for (double v : values) s += v * v;
    return s * dx;
}

GridFunction GridFunction::zeros(int n, double length, int m) {
    if (n < min_grid_size(m)) throw std::invalid_argument("GridFunction: grid too small for the clamp order");
    GridFunction g;
    g.values.assign(static_cast<size_t>(n), 0.0);
    g.dx = length / n;
    g.clamp_order = m;
    return g;
}

GridFunction GridFunction::sample(int n, double length, int m, const std::function<double(double)>& f) {
    GridFunction g = zeros(n, length, m);
    for (int i = 0; i < n; ++i) g.values[static_cast<size_t>(i)] = f((i + 0.5) * g.dx);
    return g;
}

int min_grid_size(int m) { return 2 * m + 1; }

std::vector<double> apply_difference(const std::vector<double>& v, double dx, int m) {
    std::vector<double> cur = v;
    for (int step = 0; step < m; ++step) {
        std::vector<double> next(cur.size() + 1);
        for (size_t j = 0; j < next.size(); ++j) {
            const double right = j < cur.size() ? cur[j] : 0.0;
            const double left = j > 0 ? cur[j - 1] : 0.0;
            next[j] = (right - left) / dx;
        }
        cur = std::move(next);
    }
    return cur;
}

double difference_energy(const std::vector<double>& v, double dx, int m) {
    const auto d = apply_difference(v, dx, m);
    double s = 0.0;
    for (double x : d) s += x * x;
    return s * dx;
}

BandedSymmetric difference_operator_band(int n, double dx, int m) {
    // m-th difference stencil: alternating binomial coefficients / dx^m
    std::vector<double> stencil(static_cast<size_t>(m) + 1);
    double c = 1.0;
    for (int k = 0; k <= m; ++k) {
        stencil[static_cast<size_t>(k)] = ((m - k) % 2 == 0 ? c : -c);
        c = c * (m - k) / (k + 1);
    }
    const double scale = std::pow(dx, -m);
    for (auto& s : stencil) s *= scale;

    BandedSymmetric a(n, m);
    for (int d = 0; d <= m; ++d) {
        double corr = 0.0;
        for (int k = 0; k + d <= m; ++k) corr += stencil[static_cast<size_t>(k)] * stencil[static_cast<size_t>(k + d)];
        for (int i = 0; i + d < n; ++i) a.at(d, i) = corr;
    }
    return a;
}

}  // namespace eftlab

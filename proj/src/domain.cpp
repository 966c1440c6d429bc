#include "eftlab/domain.hpp"

#include <cmath>

namespace eftlab {

double unit_ball_volume(int n) {
    if (n < 1) throw std::invalid_argument("unit_ball_volume: dimension must be >= 1");
    return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double radius_of_point(std::span<const double> x) {
    double s = 0.0;
    for (double xi : x) s += xi * xi;
    return std::sqrt(s);
}

Domain::Domain(Shape s, int n_dim, double ext, int res)
    : shape(s), dimension(n_dim), extent(ext), resolution(res) {
    if (dimension < 1) throw std::invalid_argument("Domain: dimension must be >= 1");
    if (extent <= 0.0) throw std::invalid_argument("Domain: extent must be > 0");
    if (resolution < 16) throw std::invalid_argument("Domain: resolution must be >= 16");
    if (shape == Shape::Interval && dimension != 1)
        throw std::invalid_argument("Domain: interval shape requires N = 1");
}

Domain Domain::interval(double length, int res) { return Domain(Shape::Interval, 1, length, res); }

Domain Domain::ball(int n_dim, double radius, int res) { return Domain(Shape::Ball, n_dim, radius, res); }

double Domain::measure() const {
    if (shape == Shape::Interval) return extent;
    return unit_ball_volume(dimension) * std::pow(extent, dimension);
}

double Domain::radial_sublevel_measure(double r) const {
    if (r <= 0.0) return 0.0;
    if (r >= extent) return measure();
    if (shape == Shape::Interval) return r;
    return unit_ball_volume(dimension) * std::pow(r, dimension);
}

bool Domain::contains(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dimension) return false;
    if (shape == Shape::Interval) return x[0] >= 0.0 && x[0] <= extent;
    return radius_of_point(x) <= extent;
}

std::vector<double> Domain::cell_centers() const {
    std::vector<double> r(resolution);
    const double dr = extent / resolution;
    for (int i = 0; i < resolution; ++i) r[i] = (i + 0.5) * dr;
    return r;
}

std::vector<double> Domain::cell_volumes() const {
    std::vector<double> v(resolution);
    const double dr = extent / resolution;
    if (shape == Shape::Interval) {
        for (int i = 0; i < resolution; ++i) v[i] = dr;
        return v;
    }
    const double cn = unit_ball_volume(dimension);
    for (int i = 0; i < resolution; ++i) {
        const double r0 = i * dr, r1 = (i + 1) * dr;
        v[i] = cn * (std::pow(r1, dimension) - std::pow(r0, dimension));
    }
    return v;
}

}  // namespace eftlab

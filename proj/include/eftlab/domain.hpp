#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace eftlab {

/// Geometry the potentials live on. Two shapes are supported: the interval
/// (0, L), which is what the time stepper uses (N must be 1), and the
/// origin-centered ball B_R in R^N, used by the radial analysis paths.
enum class Shape { Interval, Ball };

struct Domain {
    Shape shape = Shape::Ball;
    int dimension = 1;       // N
    double extent = 1.0;     // L for Interval, R for Ball
    int resolution = 256;    // cells per axis / radius for sampled evaluation

    Domain() = default;
    Domain(Shape s, int n_dim, double ext, int res = 256);

    static Domain interval(double length, int res = 256);
    static Domain ball(int n_dim, double radius, int res = 256);

    /// Lebesgue measure |Omega|.
    double measure() const;

    /// Largest |x| over the closure (L for the interval, R for the ball).
    double max_radius() const { return extent; }

    /// Measure of {|x| <= r} intersected with the domain, clamped to |Omega|.
    /// Interval: r (one-sided from the origin). Ball: C_N r^N.
    double radial_sublevel_measure(double r) const;

    /// true if the Euclidean point lies in the closure of the domain.
    bool contains(std::span<const double> x) const;

    /// Cell-centered sample radii; never include the origin exactly.
    std::vector<double> cell_centers() const;

    /// Quadrature weight of cell i (length or shell volume), matching
    /// cell_centers(); the weights sum to measure().
    std::vector<double> cell_volumes() const;
};

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

double radius_of_point(std::span<const double> x);

}  // namespace eftlab

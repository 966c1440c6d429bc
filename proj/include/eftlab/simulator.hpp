#pragma once

#include <optional>
#include <string>

#include "eftlab/grid_function.hpp"
#include "eftlab/potential.hpp"

namespace eftlab {

/// Raised on numerical breakdown (NaN state, solver failure) as opposed to
/// precondition violations.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SimConfig {
    int m = 1;            // operator half-order, 1 or 2
    double q = 0.5;       // absorption exponent, (0, 1)
    int n = 256;          // grid cells
    double dt = 1e-3;
    double t_max = 10.0;
    double eps_rel = 0.0;  // 0 = exact-zero extinction detection
    std::optional<PotentialSpec> potential;  // interval domain
    std::string u0_profile = "sin";          // sin | sin2 | zero, unless values given
    std::vector<double> u0_values;           // overrides the named profile

    double length() const;
    GridFunction initial_state() const;
    void validate() const;
};

struct SimResult {
    std::vector<double> times;   // 0, dt, 2dt, ...
    std::vector<double> l2sq;    // ||u||_2^2 per step
    std::vector<double> energy;  // F(u) per step
    std::vector<double> residual;  // discrete energy-identity residual (index i: step i-1 -> i)
    double dt = 0.0;
    double extinction_time = 0.0;  // +inf sentinel when no extinction occurred
    bool extinct = false;
    GridFunction final_state;
};

/// One backward-Euler diffusion substep (I + dt A_m) u+ = u.
GridFunction step_diffusion(const GridFunction& u, double dt, int m);

/// Exact absorption substep: pointwise solution of u_t = -a |u|^{q-1} u,
/// which reaches an exact zero in finite time.
GridFunction step_absorption(const GridFunction& u, double dt, const PotentialSpec& spec, double q);

/// Lie splitting (diffusion then absorption), energy trace per step, exact
/// extinction detection. Deterministic. Throws NumericalError on NaN states.
SimResult simulate(const SimConfig& config);

/// residual_i = [ (||u_i||^2 - ||u_{i-1}||^2) / (2 dt) + F(u_i) ] normalized
/// by F(u_i) + ||u_{i-1}||^2 / dt; the one-sided contract is <= 0 + O(dt).
std::vector<double> energy_identity_residual(const SimResult& result);

}  // namespace eftlab

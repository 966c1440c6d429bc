#include "eftlab/simulator.hpp"

#include <cmath>
#include <limits>

#include "eftlab/groundstate.hpp"

namespace eftlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

BandedSymmetric backward_euler_matrix(int n, double dx, double dt, int m) {
    BandedSymmetric a = difference_operator_band(n, dx, m);
    for (int d = 0; d <= a.half_bandwidth(); ++d)
        for (int i = 0; i + d < n; ++i) a.at(d, i) *= dt;
    for (int i = 0; i < n; ++i) a.at(0, i) += 1.0;
    return a;
}

std::vector<double> potential_on_cells(const PotentialSpec& spec, int n, double dx) {
    std::vector<double> a(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        a[static_cast<size_t>(i)] = spec.kind() == PotentialKind::GridSampled
                                        ? spec.grid_values()[static_cast<size_t>(i)]
                                        : spec.eval_radial((i + 0.5) * dx);
    return a;
}

void absorb_in_place(std::vector<double>& u, const std::vector<double>& a, double dt, double q) {
    const double e = 1.0 - q;
    for (size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0.0 || a[i] == 0.0) continue;
        const double mag = std::pow(std::abs(u[i]), e) - e * a[i] * dt;
        u[i] = mag <= 0.0 ? 0.0 : (u[i] > 0.0 ? 1.0 : -1.0) * std::pow(mag, 1.0 / e);
    }
}

}  // namespace

double SimConfig::length() const {
    return potential ? potential->domain().extent : 1.0;
}

void SimConfig::validate() const {
    if (m != 1 && m != 2) throw std::invalid_argument("SimConfig: m must be 1 or 2");
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("SimConfig: q must lie in (0, 1)");
    if (n < min_grid_size(m)) throw std::invalid_argument("SimConfig: grid too small");
    if (!(dt > 0.0) || !(t_max > 0.0) || dt > t_max)
        throw std::invalid_argument("SimConfig: need 0 < dt <= t_max");
    if (eps_rel < 0.0) throw std::invalid_argument("SimConfig: eps_rel must be >= 0");
    if (!potential) throw std::invalid_argument("SimConfig: potential missing");
    if (potential->domain().shape != Shape::Interval)
        throw std::invalid_argument("SimConfig: the time stepper runs on interval domains only");
    if (!u0_values.empty() && static_cast<int>(u0_values.size()) != n)
        throw std::invalid_argument("SimConfig: u0 values must match the grid");
}

GridFunction SimConfig::initial_state() const {
    const double L = length();
    if (!u0_values.empty()) {
        GridFunction g = GridFunction::zeros(n, L, m);
        g.values = u0_values;
        return g;
    }
    if (u0_profile == "zero") return GridFunction::zeros(n, L, m);
    if (u0_profile == "sin")
        return GridFunction::sample(n, L, m, [L](double x) { return std::sin(M_PI * x / L); });
    if (u0_profile == "sin2")
        return GridFunction::sample(n, L, m, [L](double x) {
            const double s = std::sin(M_PI * x / L);
            return s * s;
        });
    throw std::invalid_argument("SimConfig: unknown u0 profile '" + u0_profile + "'");
}

GridFunction step_diffusion(const GridFunction& u, double dt, int m) {
    if (m != 1 && m != 2) throw std::invalid_argument("step_diffusion: m must be 1 or 2");
    BandedCholesky solver(backward_euler_matrix(u.size(), u.dx, dt, m));
    GridFunction out = u;
    solver.solve(out.values);
    return out;
}

GridFunction step_absorption(const GridFunction& u, double dt, const PotentialSpec& spec, double q) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("step_absorption: q must lie in (0, 1)");
    GridFunction out = u;
    absorb_in_place(out.values, potential_on_cells(spec, u.size(), u.dx), dt, q);
    return out;
}

SimResult simulate(const SimConfig& config) {
    config.validate();
    const double L = config.length();
    const int n = config.n;
    const double dx = L / n;

    GridFunction u = config.initial_state();
    const auto a = potential_on_cells(*config.potential, n, dx);
    BandedCholesky solver(backward_euler_matrix(n, dx, config.dt, config.m));

    SimResult res;
    res.dt = config.dt;
    res.extinction_time = kInf;

    auto record = [&](double t) {
        res.times.push_back(t);
        res.l2sq.push_back(u.l2_norm_sq());
        res.energy.push_back(discrete_energy(u, *config.potential, config.m, config.q));
    };
    record(0.0);
    const double l2sq0 = res.l2sq.front();
    if (l2sq0 == 0.0) {
        res.extinct = true;
        res.extinction_time = 0.0;
        res.final_state = u;
        res.residual.assign(1, 0.0);
        return res;
    }

    const long steps = static_cast<long>(std::ceil(config.t_max / config.dt - 1e-9));
    for (long k = 0; k < steps; ++k) {
        solver.solve(u.values);
        absorb_in_place(u.values, a, config.dt, config.q);

        bool all_zero = true;
        for (double v : u.values) {
            if (std::isnan(v))
                throw NumericalError("simulate: NaN state at step " + std::to_string(k + 1));
            if (v != 0.0) all_zero = false;
        }
        record((k + 1) * config.dt);

        const bool thresholded = config.eps_rel > 0.0 && res.l2sq.back() <= config.eps_rel * l2sq0;
        if (all_zero || thresholded) {
            res.extinct = true;
            res.extinction_time = (k + 1) * config.dt;
            break;
        }
    }

    res.final_state = u;
    res.residual = energy_identity_residual(res);
    return res;
}

std::vector<double> energy_identity_residual(const SimResult& result) {
    if (result.times.size() < 2)
        throw std::invalid_argument("energy_identity_residual: need at least 2 trace entries");
    std::vector<double> out(result.times.size(), 0.0);
    for (size_t i = 1; i < result.times.size(); ++i) {
        const double num =
            0.5 * (result.l2sq[i] - result.l2sq[i - 1]) / result.dt + result.energy[i];
        const double den = result.energy[i] + result.l2sq[i - 1] / result.dt;
        out[i] = den > 0.0 ? num / den : 0.0;
    }
    return out;
}

}  // namespace eftlab

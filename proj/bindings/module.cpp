#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eftlab/criteria.hpp"
#include "eftlab/extinction.hpp"
#include "eftlab/groundstate.hpp"
#include "eftlab/orlicz.hpp"
#include "eftlab/simulator.hpp"
#include "eftlab/sphi.hpp"
#include "eftlab/version.hpp"

namespace py = pybind11;
using namespace eftlab;

namespace {

Domain make_domain(const std::string& shape, int dim, double extent, int resolution) {
    if (shape == "interval") return Domain::interval(extent, resolution);
    if (shape == "ball") return Domain::ball(dim, extent, resolution);
    throw std::invalid_argument("domain shape must be 'interval' or 'ball'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "numerical toolkit for extinction-time analysis of degenerate absorption problems";
    m.attr("__version__") = kVersion;

    py::class_<Domain>(m, "Domain")
        .def(py::init(&make_domain), py::arg("shape"), py::arg("dim") = 1, py::arg("extent") = 1.0,
             py::arg("resolution") = 256)
        .def_readonly("dimension", &Domain::dimension)
        .def_readonly("extent", &Domain::extent)
        .def_readonly("resolution", &Domain::resolution)
        .def("measure", &Domain::measure);

    py::class_<PotentialSpec>(m, "PotentialSpec")
        .def_static("parse", &parse_potential, py::arg("text"), py::arg("domain"))
        .def("eval", static_cast<double (PotentialSpec::*)(double) const>(&PotentialSpec::eval))
        .def("eval_radial", &PotentialSpec::eval_radial)
        .def("sup", &PotentialSpec::sup)
        .def("__str__", &PotentialSpec::to_string);

    m.def("measure_below", &measure_below, py::arg("spec"), py::arg("s"),
          "Lebesgue measure of the sublevel set {a <= s}");
    m.def("tilde_transform", &tilde_transform, py::arg("spec"), py::arg("alpha"));
    m.def("default_tilde_alpha", &default_tilde_alpha, py::arg("m"), py::arg("dim"));

    py::enum_<VerdictStatus>(m, "VerdictStatus")
        .value("finite", VerdictStatus::Finite)
        .value("divergent", VerdictStatus::Divergent)
        .value("inconclusive", VerdictStatus::Inconclusive);

    py::class_<IntegralVerdict>(m, "IntegralVerdict")
        .def_readonly("status", &IntegralVerdict::status)
        .def_readonly("value", &IntegralVerdict::value)
        .def_readonly("tail_estimate", &IntegralVerdict::tail_estimate)
        .def_readonly("block_ratios", &IntegralVerdict::block_ratios)
        .def_property_readonly("blocks_used", &IntegralVerdict::blocks_used)
        .def_property_readonly("finite", &IntegralVerdict::finite);

    py::class_<CriterionParams>(m, "CriterionParams")
        .def(py::init<int, int>(), py::arg("m"), py::arg("dim"))
        .def_readonly("m", &CriterionParams::m)
        .def_readonly("N", &CriterionParams::N)
        .def_property_readonly("critical", &CriterionParams::critical)
        .def_property_readonly("theta", &CriterionParams::theta);

    m.def("classify_improper_integral",
          [](const std::function<double(double)>& g, double c) {
              return classify_improper_integral(g, c);
          },
          py::arg("g"), py::arg("c"), "convergence verdict for integral_0^c g(s) ds");
    m.def("eft_criterion",
          static_cast<IntegralVerdict (*)(const PotentialSpec&, const CriterionParams&)>(
              &eft_criterion),
          py::arg("spec"), py::arg("params"));

    py::class_<PhiFn>(m, "PhiFn")
        .def_static("parse", &parse_phi)
        .def_static("power", &PhiFn::power)
        .def_static("entropy", &PhiFn::entropy)
        .def("__call__", &PhiFn::operator());
    m.def("sphi_membership", &sphi_membership, py::arg("spec"), py::arg("phi"));

    py::class_<NFunction>(m, "NFunction")
        .def_static("exp_poly", &NFunction::exp_poly)
        .def_static("exp_remainder", &NFunction::exp_remainder)
        .def_static("complementary_exp_remainder", &NFunction::complementary_exp_remainder)
        .def_static("square_composed", &NFunction::square_composed)
        .def("__call__", &NFunction::operator());
    m.def("nfn_inverse", &nfn_inverse, py::arg("F"), py::arg("y"));
    m.def("luxemburg_norm",
          [](const std::vector<double>& u, double cell_weight, const NFunction& F) {
              return luxemburg_norm(u, std::vector<bool>(u.size(), true), cell_weight, F);
          },
          py::arg("u"), py::arg("cell_weight"), py::arg("F"),
          "Luxemburg gauge of grid values over the full mask");
    m.def("holder_ratio",
          [](const std::vector<double>& u, const std::vector<double>& v, double cell_weight,
             const NFunction& A) {
              return holder_verify(u, v, std::vector<bool>(u.size(), true), cell_weight, A).ratio;
          },
          py::arg("u"), py::arg("v"), py::arg("cell_weight"), py::arg("A"));

    py::class_<GroundStateResult>(m, "GroundStateResult")
        .def_readonly("h", &GroundStateResult::h)
        .def_readonly("lambda_", &GroundStateResult::lambda)
        .def_readonly("iterations", &GroundStateResult::iterations)
        .def_readonly("converged", &GroundStateResult::converged)
        .def_property_readonly("minimizer",
                               [](const GroundStateResult& r) { return r.minimizer.values; });

    m.def("minimize_lambda1",
          [](const PotentialSpec& spec, const Domain& dom, int m_ord, double q, double h,
             int extra_starts, long max_iters, std::uint64_t seed) {
              MinimizeOptions opts;
              opts.extra_starts = extra_starts;
              opts.max_iters = max_iters;
              opts.seed = seed;
              return minimize_lambda1(spec, dom, m_ord, q, h, opts);
          },
          py::arg("spec"), py::arg("domain"), py::arg("m"), py::arg("q"), py::arg("h"),
          py::arg("extra_starts") = 4, py::arg("max_iters") = 400000, py::arg("seed") = 1);
    m.def("linear_lambda12", &linear_lambda12, py::arg("spec"), py::arg("domain"), py::arg("h"));

    py::class_<BoundResult>(m, "BoundResult")
        .def_readonly("has_bound", &BoundResult::has_bound)
        .def_readonly("time", &BoundResult::time)
        .def_property_readonly("tail_beta", [](const BoundResult& b) { return b.tail.beta; });
    m.def("extinction_bound",
          [](const std::vector<double>& h, const std::vector<double>& lam, double y0) {
              return extinction_bound(LambdaCurve::from_samples(h, lam), y0);
          },
          py::arg("h"), py::arg("lambda_"), py::arg("y0"));
    m.def("ode_vanish_time",
          [](const std::vector<double>& h, const std::vector<double>& lam, double y0, double dt,
             double t_max) {
              return ode_descent(LambdaCurve::from_samples(h, lam), y0, dt, t_max).vanish_time;
          },
          py::arg("h"), py::arg("lambda_"), py::arg("y0"), py::arg("dt"), py::arg("t_max") = 100.0);
    m.def("kv_agree",
          [](const std::string& profile, double q, int n_max) {
              const auto eq = kv_integral_equiv(parse_lambda_profile(profile), q, n_max);
              return py::make_tuple(to_string(eq.integral.status), to_string(eq.sum.status),
                                    eq.agree);
          },
          py::arg("profile"), py::arg("q") = 0.5, py::arg("n_max") = 30);

    py::class_<SimResult>(m, "SimResult")
        .def_readonly("times", &SimResult::times)
        .def_readonly("l2sq", &SimResult::l2sq)
        .def_readonly("energy", &SimResult::energy)
        .def_readonly("residual", &SimResult::residual)
        .def_readonly("extinct", &SimResult::extinct)
        .def_readonly("extinction_time", &SimResult::extinction_time)
        .def_property_readonly("final_state",
                               [](const SimResult& r) { return r.final_state.values; });

    m.def("simulate",
          [](const std::string& potential, int m_ord, double q, int n, double dt, double t_max,
             const std::string& u0, double eps_rel, double length) {
              SimConfig cfg;
              cfg.m = m_ord;
              cfg.q = q;
              cfg.n = n;
              cfg.dt = dt;
              cfg.t_max = t_max;
              cfg.u0_profile = u0;
              cfg.eps_rel = eps_rel;
              cfg.potential = parse_potential(potential, Domain::interval(length, n));
              return simulate(cfg);
          },
          py::arg("potential"), py::arg("m") = 1, py::arg("q") = 0.5, py::arg("n") = 128,
          py::arg("dt") = 1e-3, py::arg("t_max") = 10.0, py::arg("u0") = "sin",
          py::arg("eps_rel") = 0.0, py::arg("length") = 1.0);
}

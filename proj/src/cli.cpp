#include "eftlab/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <future>
#include <iostream>

#include "eftlab/acceptance.hpp"
#include "eftlab/criteria.hpp"
#include "eftlab/csv_io.hpp"
#include "eftlab/extinction.hpp"
#include "eftlab/groundstate.hpp"
#include "eftlab/orlicz.hpp"
#include "eftlab/simulator.hpp"
#include "eftlab/sphi.hpp"
#include "eftlab/version.hpp"

namespace eftlab {

namespace {

namespace fs = std::filesystem;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t task_seed(std::uint64_t root, std::uint64_t index) {
    // splitmix64 of the root/index pair: stable per-task streams
    std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::string out_path(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    return (fs::path(dir) / name).string();
}

std::vector<double> parse_h_grid(const std::string& text) {
    // lo:hi:pts, log-spaced
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::invalid_argument("expected lo:hi:pts for --h-grid, got '" + text + "'");
    const double lo = std::stod(text.substr(0, c1));
    const double hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    const int pts = std::stoi(text.substr(c2 + 1));
    if (!(lo > 0.0) || !(hi > lo) || pts < 2)
        throw std::invalid_argument("--h-grid needs 0 < lo < hi and pts >= 2");
    std::vector<double> h(static_cast<size_t>(pts));
    for (int i = 0; i < pts; ++i)
        h[static_cast<size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / (pts - 1));
    return h;
}

struct DomainFlags {
    int dim = 1;
    double radius = 1.0;
    double length = 1.0;
    int grid = 256;
    bool interval = false;

    Domain build() const {
        return interval ? Domain::interval(length, grid) : Domain::ball(dim, radius, grid);
    }
};

std::string theta_cell(const CriterionParams& p) {
    return p.critical() ? "" : format_double(p.theta());
}

// --- subcommand bodies -----------------------------------------------------

int cmd_criterion(const std::string& potential, int m, int n_dim, const std::string& variant,
                  double p_exp, const std::string& f_spec, const std::string& omega_spec,
                  const DomainFlags& dflags, const std::string& out) {
    CriterionParams params(m, n_dim);
    DomainFlags df = dflags;
    df.dim = n_dim;
    const Domain dom = df.build();

    RunManifest man;
    man.subcommand = "criterion";
    man.add("potential", potential);
    man.add("m", static_cast<long>(m));
    man.add("n", static_cast<long>(n_dim));
    man.add("variant", variant);
    if (variant == "log") man.add("p", p_exp);
    if (variant == "f") man.add("f", f_spec);
    if (variant == "dini") man.add("omega", omega_spec);
    man.add("grid", static_cast<long>(dom.resolution));
    man.outputs = {"verdict.csv"};
    write_manifest(out_path(out, "manifest.txt"), man);

    std::string status;
    double value = kNaN;
    long blocks = 0;

    if (variant == "eft") {
        const auto spec = parse_potential(potential, dom);
        const auto v = eft_criterion(spec, params);
        status = to_string(v.status);
        if (v.finite()) value = v.value;
        blocks = v.blocks_used();
    } else if (variant == "log") {
        const auto spec = parse_potential(potential, dom);
        const auto r = log_lp_criterion(spec, p_exp, params);
        status = to_string(r.verdict);
        if (r.integral_status == VerdictStatus::Finite) value = r.integral_value;
        blocks = r.blocks_used;
    } else if (variant == "f") {
        const auto spec = parse_potential(potential, dom);
        std::function<double(double)> f;
        if (f_spec.rfind("powneg:k=", 0) == 0) {
            const double k = std::stod(f_spec.substr(9));
            f = [k](double s) { return std::pow(s, -k); };
        } else if (f_spec == "neglog") {
            f = [](double s) { return -std::log(s); };
        } else if (f_spec == "exploglog2") {
            f = [](double s) {
                const double l = -std::log(std::min(s, 0.36787944117144233));
                return std::exp(l * l);
            };
        } else {
            throw std::invalid_argument("--f expects powneg:k=..., neglog or exploglog2");
        }
        const auto r = f_criterion(f, spec, params);
        status = to_string(r.overall);
        if (r.overall == VerdictStatus::Finite) value = r.weight.value;
        blocks = r.weight.blocks_used();
    } else if (variant == "dini") {
        OmegaFn w = omega_spec.rfind("file=", 0) == 0 ? OmegaFn::from_csv(omega_spec.substr(5))
                                                      : [&] {
                                                            const auto spec = parse_potential(
                                                                "omega:form=" + omega_spec + ",exp=1", dom);
                                                            return spec.omega();
                                                        }();
        const auto v = dini_criterion(w, params);
        status = to_string(v.status);
        if (v.finite()) value = v.value;
        blocks = v.blocks_used();
    } else {
        throw std::invalid_argument("--variant must be eft, log, f or dini");
    }

    write_csv_text(out_path(out, "verdict.csv"),
                   {"criterion", "m", "N", "theta", "status", "value", "blocks_used"},
                   {{variant, std::to_string(m), std::to_string(n_dim), theta_cell(params), status,
                     std::isnan(value) ? "" : format_double(value), std::to_string(blocks)}});
    std::cout << "criterion " << variant << ": " << status << "\n";
    return 0;
}

int cmd_sphi(const std::string& potential, const std::string& phi_text, int n_dim,
             const DomainFlags& dflags, const std::string& out) {
    DomainFlags df = dflags;
    df.dim = n_dim;
    const Domain dom = df.build();

    RunManifest man;
    man.subcommand = "sphi";
    man.add("potential", potential);
    man.add("phi", phi_text);
    man.add("n", static_cast<long>(n_dim));
    man.add("grid", static_cast<long>(dom.resolution));
    man.outputs = {"verdict.csv"};
    write_manifest(out_path(out, "manifest.txt"), man);

    const auto spec = parse_potential(potential, dom);
    const auto phi = parse_phi(phi_text);
    const auto v = sphi_membership(spec, phi);

    CriterionParams params(1, n_dim);
    write_csv_text(out_path(out, "verdict.csv"),
                   {"criterion", "m", "N", "theta", "status", "value", "blocks_used"},
                   {{"sphi(" + phi.name() + ")", "", std::to_string(n_dim), "",
                     to_string(v.status), v.finite() ? format_double(v.value) : "",
                     std::to_string(v.blocks_used())}});
    std::cout << "sphi " << phi.name() << ": " << to_string(v.status) << "\n";
    return 0;
}

NFunction parse_nfunction(const std::string& text) {
    if (text == "B" || text == "exp_remainder") return NFunction::exp_remainder();
    if (text == "Bhat" || text == "complementary") return NFunction::complementary_exp_remainder();
    if (text.rfind("exppoly:p=", 0) == 0) return NFunction::exp_poly(std::stod(text.substr(10)));
    if (text == "M2") return NFunction::square_composed(NFunction::exp_poly(2.0));
    throw std::invalid_argument("--fn expects B, Bhat, exppoly:p=... or M2");
}

int cmd_orlicz_norm(const std::string& fn_text, const std::string& profile, int grid,
                    const std::string& out) {
    RunManifest man;
    man.subcommand = "orlicz-norm";
    man.add("fn", fn_text);
    man.add("profile", profile);
    man.add("grid", static_cast<long>(grid));
    man.outputs = {"norm.csv"};
    write_manifest(out_path(out, "manifest.txt"), man);

    const auto F = parse_nfunction(fn_text);
    std::vector<double> u(static_cast<size_t>(grid));
    for (int i = 0; i < grid; ++i) {
        const double x = (i + 0.5) / grid;
        if (profile.rfind("const:", 0) == 0)
            u[static_cast<size_t>(i)] = std::stod(profile.substr(6));
        else if (profile == "sin")
            u[static_cast<size_t>(i)] = std::sin(M_PI * x);
        else
            throw std::invalid_argument("--profile expects const:VALUE or sin");
    }
    std::vector<bool> mask(static_cast<size_t>(grid), true);
    const double norm = luxemburg_norm(u, mask, 1.0 / grid, F);

    write_csv_text(out_path(out, "norm.csv"), {"fn", "profile", "grid", "norm"},
                   {{fn_text, profile, std::to_string(grid), format_double(norm)}});
    std::cout << "norm = " << format_double(norm) << "\n";
    return 0;
}

int cmd_lambda1(const std::string& potential, int m, double q, const std::string& h_grid,
                double tilde_alpha, std::uint64_t seed, int extra_starts, long max_iters, int jobs,
                const DomainFlags& dflags, const std::string& out) {
    const Domain dom = dflags.build();
    auto spec = parse_potential(potential, dom);
    if (tilde_alpha > 0.0) spec = tilde_transform(spec, tilde_alpha);
    const double sup_a = tilde_alpha > 0.0 ? parse_potential(potential, dom).sup() : spec.sup();

    RunManifest man;
    man.subcommand = "lambda1";
    man.add("potential", potential);
    man.add("m", static_cast<long>(m));
    man.add("q", q);
    man.add("h_grid", h_grid);
    man.add("tilde_alpha", tilde_alpha);
    man.add("grid", static_cast<long>(dom.resolution));
    man.add("extra_starts", static_cast<long>(extra_starts));
    man.add("max_iters", max_iters);
    man.add("jobs", static_cast<long>(jobs));
    man.seed = seed;
    man.outputs = {"curve.csv"};
    write_manifest(out_path(out, "manifest.txt"), man);

    const auto hs = parse_h_grid(h_grid);
    const auto bump = default_bump(m, 512);

    struct Row {
        double h, lambda, upper, converged, starts, iters;
    };
    std::vector<Row> rows(hs.size());

    auto work = [&](size_t i) {
        MinimizeOptions opts;
        opts.extra_starts = extra_starts;
        opts.max_iters = max_iters;
        opts.seed = task_seed(seed, i);
        const auto gs = minimize_lambda1(spec, dom, m, q, hs[i], opts);
        double upper = kNaN;
        if (tilde_alpha > 0.0 && hs[i] < 1.0) {
            try {
                upper = testfn_upper_bound(tilde_alpha, m, q, hs[i], bump, sup_a, dom).value;
            } catch (const std::invalid_argument&) {
            }
        }
        rows[i] = {hs[i], gs.lambda, upper, gs.converged ? 1.0 : 0.0,
                   static_cast<double>(gs.starts_used), static_cast<double>(gs.iterations)};
    };

    if (jobs <= 1) {
        for (size_t i = 0; i < hs.size(); ++i) work(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::future<void>> pool;
        for (int j = 0; j < jobs; ++j)
            pool.push_back(std::async(std::launch::async, [&] {
                for (size_t i = next.fetch_add(1); i < hs.size(); i = next.fetch_add(1)) work(i);
            }));
        for (auto& f : pool) f.get();
    }

    std::vector<std::vector<double>> cells;
    for (const auto& r : rows) cells.push_back({r.h, r.lambda, r.upper, r.converged, r.starts, r.iters});
    write_csv(out_path(out, "curve.csv"), {"h", "lambda", "upper_bound", "converged", "starts", "iters"},
              cells);
    std::cout << "lambda1 curve: " << rows.size() << " samples\n";
    return 0;
}

int cmd_lambda12(const std::string& potential, const std::string& h_grid, int jobs,
                 const DomainFlags& dflags, const std::string& out) {
    const Domain dom = dflags.build();
    const auto spec = parse_potential(potential, dom);

    RunManifest man;
    man.subcommand = "lambda12";
    man.add("potential", potential);
    man.add("h_grid", h_grid);
    man.add("grid", static_cast<long>(dom.resolution));
    man.add("jobs", static_cast<long>(jobs));
    man.outputs = {"curve12.csv"};
    write_manifest(out_path(out, "manifest.txt"), man);

    const auto hs = parse_h_grid(h_grid);
    std::vector<std::vector<double>> cells(hs.size());
    auto work = [&](size_t i) { cells[i] = {hs[i], linear_lambda12(spec, dom, hs[i])}; };
    if (jobs <= 1) {
        for (size_t i = 0; i < hs.size(); ++i) work(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::future<void>> pool;
        for (int j = 0; j < jobs; ++j)
            pool.push_back(std::async(std::launch::async, [&] {
                for (size_t i = next.fetch_add(1); i < hs.size(); i = next.fetch_add(1)) work(i);
            }));
        for (auto& f : pool) f.get();
    }
    write_csv(out_path(out, "curve12.csv"), {"h", "lambda12"}, cells);
    std::cout << "lambda12 curve: " << cells.size() << " samples\n";
    return 0;
}

LambdaCurve load_curve(const std::string& text) {
    if (text.rfind("powerlaw:", 0) == 0) {
        const auto profile = parse_lambda_profile(text);
        std::vector<double> hs, ls;
        for (int i = 0; i <= 512; ++i) {
            const double h = std::pow(10.0, -8.0 + 8.0 * i / 512.0);
            hs.push_back(h);
            ls.push_back(profile(h));
        }
        return LambdaCurve::from_samples(hs, ls);
    }
    std::vector<double> hs, ls;
    read_two_column_csv(text, hs, ls);
    return LambdaCurve::from_samples(hs, ls);
}

int cmd_bound(const std::string& curve_text, double y0, const std::string& out) {
    RunManifest man;
    man.subcommand = "bound";
    man.add("curve", curve_text);
    man.add("y0", y0);
    man.outputs = {"bound.csv", "integrand.csv"};
    write_manifest(out_path(out, "manifest.txt"), man);

    const auto curve = load_curve(curve_text);
    const auto bound = extinction_bound(curve, y0);

    write_csv_text(out_path(out, "bound.csv"),
                   {"status", "T", "main_part", "tail_beta", "tail_kappa", "tail_contribution"},
                   {{bound.has_bound ? "bound" : "nobound",
                     bound.has_bound ? format_double(bound.time) : "", format_double(bound.main_part),
                     format_double(bound.tail.beta), format_double(bound.tail.kappa),
                     format_double(bound.tail.contribution)}});

    std::vector<std::vector<double>> cells;
    for (size_t i = 0; i < curve.size(); ++i) {
        const double h = curve.h_samples()[i], l = curve.lambda_samples()[i];
        cells.push_back({h, l, 1.0 / l});
    }
    write_csv(out_path(out, "integrand.csv"), {"h", "lambda", "inv_lambda"}, cells);

    if (bound.has_bound)
        std::cout << "bound: T = " << format_double(bound.time) << "\n";
    else
        std::cout << "bound: none (tail exponent " << format_double(bound.tail.beta) << ")\n";
    return 0;
}

int cmd_kv(const std::string& profile, double q, int n_max, const std::string& potential,
           const DomainFlags& dflags, const std::string& out) {
    RunManifest man;
    man.subcommand = "kv";
    man.add("profile", profile);
    man.add("q", q);
    man.add("n_max", static_cast<long>(n_max));
    if (profile == "computed") man.add("potential", potential);
    man.outputs = {"kv_terms.csv", "kv_summary.csv"};
    write_manifest(out_path(out, "manifest.txt"), man);

    std::function<double(double)> evaluator;
    if (profile.rfind("synthetic:", 0) == 0) {
        evaluator = parse_lambda_profile(profile.substr(10));
    } else if (profile == "computed") {
        const Domain dom = dflags.build();
        const auto spec = parse_potential(potential, dom);
        // measure the level over the range the grid resolves and extend it
        // below with the fitted log-power growth law
        const double h_min = 1e-6;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int cnt = 0;
        for (int j = 0; j <= 12; ++j) {
            const double h = std::pow(10.0, -6.0 + 6.0 * j / 12.0);
            if (h > 1e-3) continue;  // fit the steep half only
            const double x = std::log(-std::log(h));
            const double y = std::log(linear_lambda12(spec, dom, h));
            sx += x; sy += y; sxx += x * x; sxy += x * y;
            ++cnt;
        }
        const double denom = cnt * sxx - sx * sx;
        const double p_hat = denom != 0.0 ? (cnt * sxy - sx * sy) / denom : 0.0;
        const double k_hat = std::exp((sy - p_hat * sx) / cnt);
        evaluator = [spec, dom, h_min, p_hat, k_hat](double h) {
            if (h >= h_min) return linear_lambda12(spec, dom, h);
            return k_hat * std::pow(-std::log(h), p_hat);
        };
    } else {
        throw std::invalid_argument("--profile expects synthetic:... or computed");
    }

    const auto eq = kv_integral_equiv(evaluator, q, n_max);
    std::vector<std::vector<double>> cells;
    for (const auto& r : eq.sum.rows)
        cells.push_back({static_cast<double>(r.n), r.alpha_n, r.term, r.partial_sum});
    write_csv(out_path(out, "kv_terms.csv"), {"n", "alpha_n", "term", "partial_sum"}, cells);
    // no semiclassical lower bound is computed, so the verdict classifies the
    // levels rather than certifying a decay time
    write_csv_text(out_path(out, "kv_summary.csv"),
                   {"integral_status", "sum_status", "agree", "verdict_class"},
                   {{to_string(eq.integral.status), to_string(eq.sum.status),
                     eq.agree ? "yes" : "no", "criterion-level"}});
    std::cout << "kv: integral " << to_string(eq.integral.status) << ", sum "
              << to_string(eq.sum.status) << (eq.agree ? " (agree)" : " (disagree)")
              << " [criterion-level]\n";
    return 0;
}

int cmd_simulate(const std::string& config_path, std::vector<std::string> overrides,
                 const std::string& out) {
    std::map<std::string, std::string> kv;
    if (!config_path.empty()) kv = read_config(config_path);
    for (const auto& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--set expects key=value, got '" + ov + "'");
        kv[ov.substr(0, eq)] = ov.substr(eq + 1);
    }

    SimConfig cfg;
    double length = 1.0;
    if (kv.count("length")) length = std::stod(kv["length"]);
    if (kv.count("m")) cfg.m = std::stoi(kv["m"]);
    if (kv.count("q")) cfg.q = std::stod(kv["q"]);
    if (kv.count("n")) cfg.n = std::stoi(kv["n"]);
    if (kv.count("dt")) cfg.dt = std::stod(kv["dt"]);
    if (kv.count("tmax")) cfg.t_max = std::stod(kv["tmax"]);
    if (kv.count("eps_rel")) cfg.eps_rel = std::stod(kv["eps_rel"]);
    if (kv.count("u0")) cfg.u0_profile = kv["u0"];
    const std::string pot = kv.count("potential") ? kv["potential"] : "const:1.0";
    cfg.potential = parse_potential(pot, Domain::interval(length, cfg.n));

    RunManifest man;
    man.subcommand = "simulate";
    if (!config_path.empty()) man.add("config", config_path);
    man.add("potential", pot);
    man.add("m", static_cast<long>(cfg.m));
    man.add("q", cfg.q);
    man.add("n", static_cast<long>(cfg.n));
    man.add("dt", cfg.dt);
    man.add("tmax", cfg.t_max);
    man.add("eps_rel", cfg.eps_rel);
    man.add("u0", cfg.u0_profile);
    man.outputs = {"trace.csv", "final.csv"};
    write_manifest(out_path(out, "manifest.txt"), man);

    const SimResult res = simulate(cfg);

    std::vector<std::vector<double>> trace;
    for (size_t i = 0; i < res.times.size(); ++i)
        trace.push_back({res.times[i], res.l2sq[i], res.energy[i],
                         i < res.residual.size() ? res.residual[i] : 0.0});
    write_csv(out_path(out, "trace.csv"), {"t", "l2sq", "energy", "residual"}, trace);

    std::vector<std::vector<double>> final_rows;
    for (int i = 0; i < res.final_state.size(); ++i)
        final_rows.push_back({(i + 0.5) * res.final_state.dx, res.final_state.values[static_cast<size_t>(i)]});
    write_csv(out_path(out, "final.csv"), {"x", "u"}, final_rows);

    if (res.extinct)
        std::cout << "simulate: extinction at t = " << format_double(res.extinction_time) << "\n";
    else
        std::cout << "simulate: no extinction before t = " << format_double(cfg.t_max) << "\n";
    return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args) {
    CLI::App app{"extinction-time analysis toolkit"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    // shared flags per subcommand, bound into plain locals
    std::string potential, phi_text = "phi:power:beta=1", variant = "eft";
    std::string f_spec, omega_spec, h_grid = "1e-6:0.5:12";
    std::string curve_text, profile = "sin", kv_profile = "synthetic:logpow:p=2";
    std::string config_path, fn_text = "B", out = ".";
    std::vector<std::string> overrides;
    int m = 1, n_dim = 1, grid = 256, n_max = 30, jobs = 1, extra_starts = 4;
    long max_iters = 400000;
    double q = 0.5, p_exp = 2.0, tilde_alpha = 0.0, y0 = 1.0, radius = 1.0, length = 1.0;
    std::uint64_t seed = 1;

    auto* criterion = app.add_subcommand("criterion", "classify a sublevel-decay test");
    criterion->add_option("--potential", potential)->required();
    criterion->add_option("--m", m);
    criterion->add_option("--n", n_dim);
    criterion->add_option("--variant", variant)->check(CLI::IsMember({"eft", "log", "f", "dini"}));
    criterion->add_option("--p", p_exp);
    criterion->add_option("--f", f_spec);
    criterion->add_option("--omega", omega_spec);
    criterion->add_option("--grid", grid);
    criterion->add_option("--radius", radius);
    criterion->add_option("--out", out);

    auto* sphi = app.add_subcommand("sphi", "weighted sublevel-class membership");
    sphi->add_option("--potential", potential)->required();
    sphi->add_option("--phi", phi_text);
    sphi->add_option("--n", n_dim);
    sphi->add_option("--grid", grid);
    sphi->add_option("--radius", radius);
    sphi->add_option("--out", out);

    auto* onorm = app.add_subcommand("orlicz-norm", "Luxemburg norm of a profile");
    onorm->add_option("--fn", fn_text);
    onorm->add_option("--profile", profile);
    onorm->add_option("--grid", grid);
    onorm->add_option("--out", out);

    auto* l1 = app.add_subcommand("lambda1", "nonlinear ground-state sweep");
    l1->add_option("--potential", potential)->required();
    l1->add_option("--m", m);
    l1->add_option("--q", q);
    l1->add_option("--h-grid", h_grid);
    l1->add_option("--tilde-alpha", tilde_alpha);
    l1->add_option("--seed", seed);
    l1->add_option("--extra-starts", extra_starts);
    l1->add_option("--max-iters", max_iters);
    l1->add_option("--jobs", jobs);
    l1->add_option("--grid", grid);
    l1->add_option("--length", length);
    l1->add_option("--out", out);

    auto* l12 = app.add_subcommand("lambda12", "linear Schroedinger level sweep");
    l12->add_option("--potential", potential)->required();
    l12->add_option("--h-grid", h_grid);
    l12->add_option("--grid", grid);
    l12->add_option("--jobs", jobs);
    l12->add_option("--length", length);
    l12->add_option("--out", out);

    auto* bound = app.add_subcommand("bound", "decay-time bound from a level curve");
    bound->add_option("--curve", curve_text)->required();
    bound->add_option("--y0", y0);
    bound->add_option("--out", out);

    auto* kv = app.add_subcommand("kv", "sum/integral equivalence report");
    kv->add_option("--profile", kv_profile);
    kv->add_option("--q", q);
    kv->add_option("--n-max", n_max);
    kv->add_option("--potential", potential);
    kv->add_option("--grid", grid);
    kv->add_option("--length", length);
    kv->add_option("--out", out);

    auto* sim = app.add_subcommand("simulate", "time-step the absorption problem");
    sim->add_option("--config", config_path);
    sim->add_option("--set", overrides, "key=value override (repeatable)");
    sim->add_option("--out", out);

    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    (void)verify;

    std::vector<char*> argv;
    std::vector<std::string> storage = args;
    std::string prog = "eftlab";
    argv.push_back(prog.data());
    for (auto& a : storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        DomainFlags dflags;
        dflags.dim = n_dim;
        dflags.radius = radius;
        dflags.length = length;
        dflags.grid = grid;

        if (criterion->parsed())
            return cmd_criterion(potential, m, n_dim, variant, p_exp, f_spec, omega_spec, dflags, out);
        if (sphi->parsed()) return cmd_sphi(potential, phi_text, n_dim, dflags, out);
        if (onorm->parsed()) return cmd_orlicz_norm(fn_text, profile, grid, out);
        if (l1->parsed()) {
            dflags.interval = true;
            return cmd_lambda1(potential, m, q, h_grid, tilde_alpha, seed, extra_starts, max_iters,
                               jobs, dflags, out);
        }
        if (l12->parsed()) {
            dflags.interval = true;
            return cmd_lambda12(potential, h_grid, jobs, dflags, out);
        }
        if (bound->parsed()) return cmd_bound(curve_text, y0, out);
        if (kv->parsed()) {
            dflags.interval = true;
            return cmd_kv(kv_profile, q, n_max, potential, dflags, out);
        }
        if (sim->parsed()) return cmd_simulate(config_path, overrides, out);
        if (verify->parsed()) {
            const auto outcomes = run_acceptance(std::cout);
            return count_failures(outcomes) == 0 ? 0 : 3;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace eftlab

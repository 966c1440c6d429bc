#include "eftlab/sphi.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace eftlab {

namespace {
constexpr double kInvE = 0.36787944117144233;
}

PhiFn PhiFn::power(double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("PhiFn::power: beta must be > 0");
    PhiFn p;
    p.kind_ = PhiKind::Power;
    p.beta_ = beta;
    p.gamma_ = std::numeric_limits<double>::infinity();
    std::ostringstream os;
    os << "phi:power:beta=" << beta;
    p.name_ = os.str();
    return p;
}

PhiFn PhiFn::entropy() {
    PhiFn p;
    p.kind_ = PhiKind::Entropy;
    p.gamma_ = kInvE;
    p.name_ = "phi:entropy";
    return p;
}

PhiFn PhiFn::custom_table(std::vector<double> t, std::vector<double> phi) {
    if (t.size() != phi.size() || t.size() < 3)
        throw std::invalid_argument("PhiFn::custom_table: need >= 3 matching samples");
    for (size_t i = 0; i < t.size(); ++i) {
        if (!(t[i] > 0.0) || !(phi[i] > 0.0))
            throw std::invalid_argument("PhiFn::custom_table: abscissae and values must be > 0");
        if (i > 0 && (!(t[i] > t[i - 1]) || phi[i] < phi[i - 1]))
            throw std::invalid_argument("PhiFn::custom_table: table must be strictly increasing in t, nondecreasing in phi");
    }
    // roughly log-spaced abscissae keep the power-law extension toward 0 honest
    const double span = std::log(t.back() / t.front());
    if (!(span > 0.5))
        throw std::invalid_argument("PhiFn::custom_table: abscissae must span a log range");
    PhiFn p;
    p.kind_ = PhiKind::Custom;
    p.gamma_ = t.back();
    p.tab_t_ = std::move(t);
    p.tab_phi_ = std::move(phi);
    p.name_ = "phi:custom";
    return p;
}

double PhiFn::operator()(double t) const {
    if (t <= 0.0) return 0.0;
    switch (kind_) {
        case PhiKind::Power:
            return std::pow(t, beta_);
        case PhiKind::Entropy:
            if (t > gamma_) throw std::domain_error("PhiFn: argument beyond the validity interval");
            return t * (-std::log(t));
        case PhiKind::Custom: {
            if (t > gamma_) throw std::domain_error("PhiFn: argument beyond the validity interval");
            const auto& ts = tab_t_;
            size_t i = 1;
            while (i + 1 < ts.size() && t > ts[i]) ++i;
            // log-log linear between nodes; first segment extends to 0
            const double lt0 = std::log(ts[i - 1]), lt1 = std::log(ts[i]);
            const double lp0 = std::log(tab_phi_[i - 1]), lp1 = std::log(tab_phi_[i]);
            const double w = (std::log(t) - lt0) / (lt1 - lt0);
            return std::exp(lp0 + w * (lp1 - lp0));
        }
    }
    return 0.0;
}

PhiFn parse_phi(const std::string& text) {
    if (text == "phi:entropy") return PhiFn::entropy();
    const std::string prefix = "phi:power:beta=";
    if (text.rfind(prefix, 0) == 0) {
        try {
            return PhiFn::power(std::stod(text.substr(prefix.size())));
        } catch (const std::invalid_argument&) {
        }
    }
    throw std::invalid_argument("parse_phi: expected phi:entropy or phi:power:beta=..., got '" + text + "'");
}

PhiAxiomReport phi_axioms_check(const PhiFn& phi, int samples) {
    if (samples < 100) throw std::invalid_argument("phi_axioms_check: need >= 100 samples");
    PhiAxiomReport rep;
    rep.samples = samples;

    const double gamma = std::isfinite(phi.gamma()) ? phi.gamma() : 1.0;

    // keep the sampled weight values comfortably inside the normal range so
    // steep weights do not underflow into meaningless ratios
    double lo_exp = -290.0;
    const double hi_exp = std::log10(gamma);
    while (lo_exp < hi_exp - 4.0 && !(phi(std::pow(10.0, lo_exp)) > 1e-260)) lo_exp += 4.0;

    rep.zero_at_zero = phi(0.0) == 0.0;

    std::vector<double> ts(samples), ps(samples);
    bool positive = true, nondecreasing = true;
    for (int i = 0; i < samples; ++i) {
        ts[i] = std::min(gamma, std::pow(10.0, lo_exp + (hi_exp - lo_exp) * i / (samples - 1)));
        ps[i] = phi(ts[i]);
        if (!(ps[i] > 0.0)) positive = false;
        if (i > 0 && ps[i] + 1e-15 * std::abs(ps[i]) < ps[i - 1]) nondecreasing = false;
    }
    rep.positive = positive;
    rep.nondecreasing = nondecreasing;

    // axiom 4 on [0, gamma'] with gamma' = gamma/2
    double cmax = 0.0;
    const double gp = gamma / 2.0;
    for (int i = 0; i < samples; ++i) {
        const double a = gp * ts[i] / gamma;  // rescale the grid into (0, gamma']
        for (int j = i; j < samples; j += 7) {
            const double b = gp * ts[j] / gamma;
            if (a + b > gamma) continue;
            const double num = phi(a + b), den = phi(a) + phi(b);
            if (den > 0.0) cmax = std::max(cmax, num / den);
        }
    }
    rep.c_estimate = cmax;
    rep.quasi_additive_sampled = std::isfinite(cmax) && cmax > 0.0;

    // axiom 4': midpoint convexity plus a bounded doubling ratio near 0
    bool convex = true;
    for (int i = 0; i + 2 < samples; ++i) {
        const double x = ts[i], y = ts[i + 2];
        if (phi(0.5 * (x + y)) > 0.5 * (phi(x) + phi(y)) * (1.0 + 1e-9)) convex = false;
    }
    rep.midpoint_convex = convex;

    // doubling ratio over the lowest sampled decades
    double doubling = 0.0;
    const double near_zero = std::pow(10.0, lo_exp + 0.25 * (hi_exp - lo_exp));
    for (int i = 0; i < samples; ++i) {
        if (2.0 * ts[i] > gamma || ts[i] > near_zero) break;
        if (ps[i] > 0.0) doubling = std::max(doubling, phi(2.0 * ts[i]) / ps[i]);
    }
    rep.doubling_limsup = doubling;
    return rep;
}

IntegralVerdict sphi_membership(const PotentialSpec& spec, const PhiFn& phi) {
    DistFn M = DistFn::from_spec(spec);

    // largest admissible upper limit: M_a(c) must stay inside [0, gamma]
    double tau0 = 1.0;  // c = e^{-1}
    if (M.at_minus_log(tau0) > phi.gamma()) {
        double lo = tau0, hi = 1000.0;
        if (M.at_minus_log(hi) > phi.gamma())
            throw std::invalid_argument("sphi_membership: phi is undefined at the needed arguments "
                                        "(sublevel measure exceeds its validity interval)");
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (M.at_minus_log(mid) > phi.gamma() ? lo : hi) = mid;
        }
        tau0 = hi;
    }

    EngineOptions opts;
    opts.inf_is_divergence_evidence = true;
    return classify_log_integrand([&](double tau) { return phi(M.at_minus_log(tau)); }, tau0, opts);
}

}  // namespace eftlab

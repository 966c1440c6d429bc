#include "eftlab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace eftlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double lerp_table(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const size_t i = static_cast<size_t>(it - xs.begin());
    const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + t * (ys[i] - ys[i - 1]);
}

}  // namespace

// ---------------------------------------------------------------------------
// OmegaFn

OmegaFn OmegaFn::power(double k, double scale) {
    if (k <= 0.0 || scale <= 0.0) throw std::invalid_argument("OmegaFn::power: k and scale must be > 0");
    OmegaFn w;
    std::ostringstream name;
    name << "pow:k=" << k;
    if (scale != 1.0) name << ",scale=" << scale;
    w.name_ = name.str();
    w.fn_ = [k, scale](double s) { return s <= 0.0 ? 0.0 : scale * std::pow(s, k); };
    return w;
}

OmegaFn OmegaFn::constant(double w0) {
    if (w0 < 0.0) throw std::invalid_argument("OmegaFn::constant: w0 must be >= 0");
    OmegaFn w;
    std::ostringstream name;
    name << "const:" << w0;
    w.name_ = name.str();
    w.fn_ = [w0](double) { return w0; };
    return w;
}

OmegaFn OmegaFn::inverse_log_power(double p) {
    if (p <= 0.0) throw std::invalid_argument("OmegaFn::inverse_log_power: p must be > 0");
    OmegaFn w;
    std::ostringstream name;
    name << "logpowinv:p=" << p;
    w.name_ = name.str();
    w.fn_ = [p](double s) {
        if (s <= 0.0) return 0.0;
        if (s >= std::exp(-1.0)) return 1.0;  // keep the modulus nondecreasing and bounded
        return std::pow(-std::log(s), -p);
    };
    return w;
}

OmegaFn OmegaFn::table(std::vector<double> s, std::vector<double> w) {
    if (s.size() != w.size() || s.size() < 2)
        throw std::invalid_argument("OmegaFn::table: need >= 2 matching samples");
    for (size_t i = 1; i < s.size(); ++i) {
        if (!(s[i] > s[i - 1])) throw std::invalid_argument("OmegaFn::table: abscissae must be strictly increasing");
        if (w[i] < w[i - 1]) throw std::invalid_argument("OmegaFn::table: values must be nondecreasing");
    }
    if (w.front() < 0.0) throw std::invalid_argument("OmegaFn::table: values must be nonnegative");
    OmegaFn out;
    out.name_ = "table";
    out.tab_s_ = s;
    out.tab_w_ = w;
    out.fn_ = [s = std::move(s), w = std::move(w)](double x) { return lerp_table(s, w, x); };
    return out;
}

OmegaFn OmegaFn::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("OmegaFn::from_csv: cannot open " + path);
    std::vector<double> s, w;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double a, b;
        if (!(ls >> a >> b)) {
            if (first) { first = false; continue; }  // header row
            throw std::invalid_argument("OmegaFn::from_csv: malformed line '" + line + "'");
        }
        first = false;
        s.push_back(a);
        w.push_back(b);
    }
    auto out = table(std::move(s), std::move(w));
    out.name_ = "file=" + path;
    return out;
}

OmegaFn OmegaFn::custom(std::function<double(double)> fn, std::string name) {
    OmegaFn w;
    w.fn_ = std::move(fn);
    w.name_ = std::move(name);
    return w;
}

double OmegaFn::operator()(double s) const { return fn_(s); }

void OmegaFn::validate() const {
    double prev = -1.0;
    for (int i = 0; i <= 64; ++i) {
        const double s = std::pow(10.0, -12.0 + 12.0 * i / 64.0);  // 1e-12 .. 1
        const double v = fn_(s);
        if (!(v >= 0.0)) throw std::invalid_argument("OmegaFn: negative or NaN value at s=" + std::to_string(s));
        if (v + 1e-12 < prev) throw std::invalid_argument("OmegaFn: not nondecreasing near s=" + std::to_string(s));
        prev = std::max(prev, v);
    }
}

// ---------------------------------------------------------------------------
// PotentialSpec

PotentialSpec PotentialSpec::constant(double a0, Domain dom) {
    if (a0 < 0.0) throw std::invalid_argument("PotentialSpec::constant: a0 must be >= 0");
    PotentialSpec p;
    p.kind_ = PotentialKind::Constant;
    p.domain_ = dom;
    p.a0_ = a0;
    return p;
}

PotentialSpec PotentialSpec::radial_exp(double alpha, Domain dom) {
    if (alpha <= 0.0) throw std::invalid_argument("PotentialSpec::radial_exp: alpha must be > 0");
    PotentialSpec p;
    p.kind_ = PotentialKind::RadialExp;
    p.domain_ = dom;
    p.alpha_ = alpha;
    return p;
}

PotentialSpec PotentialSpec::radial_omega(OmegaFn omega, double exponent, Domain dom) {
    if (exponent <= 0.0) throw std::invalid_argument("PotentialSpec::radial_omega: exponent must be > 0");
    omega.validate();
    PotentialSpec p;
    p.kind_ = PotentialKind::RadialOmega;
    p.domain_ = dom;
    p.exponent_ = exponent;
    p.omega_ = std::move(omega);
    return p;
}

PotentialSpec PotentialSpec::product(PotentialSpec left, PotentialSpec right) {
    PotentialSpec p;
    p.kind_ = PotentialKind::Product;
    p.domain_ = left.domain();
    p.left_ = std::make_shared<PotentialSpec>(std::move(left));
    p.right_ = std::make_shared<PotentialSpec>(std::move(right));
    return p;
}

PotentialSpec PotentialSpec::grid_sampled(std::vector<double> values, Domain dom) {
    if (static_cast<int>(values.size()) != dom.resolution)
        throw std::invalid_argument("PotentialSpec::grid_sampled: need one value per domain cell");
    for (double v : values)
        if (!(v >= 0.0)) throw std::invalid_argument("PotentialSpec::grid_sampled: values must be >= 0");
    PotentialSpec p;
    p.kind_ = PotentialKind::GridSampled;
    p.domain_ = dom;
    p.grid_values_ = std::move(values);
    return p;
}

const OmegaFn& PotentialSpec::omega() const {
    if (!omega_) throw std::logic_error("PotentialSpec: no omega for this variant");
    return *omega_;
}

const PotentialSpec& PotentialSpec::left() const {
    if (!left_) throw std::logic_error("PotentialSpec: not a product");
    return *left_;
}

const PotentialSpec& PotentialSpec::right() const {
    if (!right_) throw std::logic_error("PotentialSpec: not a product");
    return *right_;
}

double PotentialSpec::neg_log_radial(double r) const {
    switch (kind_) {
        case PotentialKind::Constant:
            return a0_ > 0.0 ? -std::log(a0_) : kInf;
        case PotentialKind::RadialExp:
            return r > 0.0 ? std::pow(r, -alpha_) : kInf;
        case PotentialKind::RadialOmega: {
            if (r <= 0.0) return kInf;
            const double w = (*omega_)(r);
            if (w <= 0.0) return 0.0;
            return w / std::pow(r, exponent_);
        }
        case PotentialKind::Product:
            return left_->neg_log_radial(r) + right_->neg_log_radial(r);
        case PotentialKind::GridSampled:
            throw std::logic_error("PotentialSpec: grid-sampled potential is not radial");
    }
    return kInf;
}

double PotentialSpec::eval_radial(double r) const {
    if (kind_ == PotentialKind::GridSampled)
        throw std::logic_error("PotentialSpec: grid-sampled potential is not radial");
    const double nl = neg_log_radial(r);
    return nl == kInf ? 0.0 : std::exp(-nl);
}

double PotentialSpec::eval(std::span<const double> x) const {
    if (!domain_.contains(x)) throw std::domain_error("PotentialSpec::eval: point outside the domain");
    if (kind_ == PotentialKind::GridSampled) {
        const double dr = domain_.extent / domain_.resolution;
        const double r = domain_.shape == Shape::Interval ? x[0] : radius_of_point(x);
        int i = static_cast<int>(r / dr);
        i = std::clamp(i, 0, domain_.resolution - 1);
        return grid_values_[static_cast<size_t>(i)];
    }
    const double r = domain_.shape == Shape::Interval ? x[0] : radius_of_point(x);
    return eval_radial(r);
}

double PotentialSpec::eval(double x) const { return eval(std::span<const double>(&x, 1)); }

bool PotentialSpec::is_radial_monotone() const {
    switch (kind_) {
        case PotentialKind::Constant:
        case PotentialKind::RadialExp:
            return true;
        case PotentialKind::GridSampled:
            return false;
        default:
            break;
    }
    // a nondecreasing in r <=> -ln a nonincreasing; check on a dense grid.
    const double rmax = domain_.max_radius();
    double prev = kInf;
    for (int i = 0; i <= 512; ++i) {
        const double r = rmax * std::pow(10.0, -8.0 + 8.0 * i / 512.0);
        const double nl = neg_log_radial(r);
        if (nl > prev * (1.0 + 1e-12) + 1e-12) return false;
        prev = nl;
    }
    return true;
}

double PotentialSpec::sup() const {
    switch (kind_) {
        case PotentialKind::Constant:
            return a0_;
        case PotentialKind::GridSampled:
            return grid_values_.empty() ? 0.0 : *std::max_element(grid_values_.begin(), grid_values_.end());
        default:
            break;
    }
    const double rmax = domain_.max_radius();
    if (is_radial_monotone()) return eval_radial(rmax);
    double best = 0.0;
    for (int i = 1; i <= 2048; ++i) best = std::max(best, eval_radial(rmax * i / 2048.0));
    return best;
}

std::string PotentialSpec::to_string() const {
    std::ostringstream os;
    switch (kind_) {
        case PotentialKind::Constant:
            os << "const:" << a0_;
            break;
        case PotentialKind::RadialExp:
            os << "radialexp:alpha=" << alpha_;
            break;
        case PotentialKind::RadialOmega:
            os << "omega:" << omega_->name() << ",exp=" << exponent_;
            break;
        case PotentialKind::Product:
            os << "prod(" << left_->to_string() << "," << right_->to_string() << ")";
            break;
        case PotentialKind::GridSampled:
            os << "grid[" << grid_values_.size() << "]";
            break;
    }
    return os.str();
}

PotentialSpec tilde_transform(const PotentialSpec& spec, double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("tilde_transform: alpha must be > 0");
    // Both admitted shapes contain the origin in their closure; nothing to
    // reject here, but grid-sampled inputs keep their domain unchanged.
    return PotentialSpec::product(spec, PotentialSpec::radial_exp(alpha, spec.domain()));
}

double default_tilde_alpha(int m, int n_dim) {
    if (m < 1 || n_dim < 1) throw std::invalid_argument("default_tilde_alpha: m, N must be >= 1");
    return 0.5 * std::min(2.0 * m, static_cast<double>(n_dim));
}

// ---------------------------------------------------------------------------
// Parser for the compact potential grammar.

namespace {

struct Cursor {
    const std::string& s;
    size_t pos = 0;

    bool eof() const { return pos >= s.size(); }
    char peek() const { return s[pos]; }
    bool consume(char c) {
        if (!eof() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    void expect(char c) {
        if (!consume(c))
            throw std::invalid_argument("parse_potential: expected '" + std::string(1, c) + "' at position " +
                                        std::to_string(pos) + " in '" + s + "'");
    }
    std::string take_while(auto pred) {
        size_t start = pos;
        while (!eof() && pred(s[pos])) ++pos;
        return s.substr(start, pos - start);
    }
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool value_char(char c) { return ident_char(c) || c == '.' || c == '-' || c == '+' || c == '/' || c == '~'; }

double parse_num(const std::string& v, const std::string& what) {
    try {
        size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_potential: bad number '" + v + "' for " + what);
    }
}

PotentialSpec parse_spec(Cursor& c, const Domain& dom);

bool key_in(const std::string& key, std::initializer_list<const char*> keys) {
    for (const char* k : keys)
        if (key == k) return true;
    return false;
}

// At a position that may start `key=`, returns the key if it is one of
// `keys`, without consuming anything otherwise.
bool peek_param(Cursor& c, std::initializer_list<const char*> keys, std::string& key_out) {
    const size_t mark = c.pos;
    std::string key = c.take_while(ident_char);
    const bool ok = !key.empty() && !c.eof() && c.peek() == '=' && key_in(key, keys);
    c.pos = mark;
    if (ok) key_out = key;
    return ok;
}

// key=value pairs separated by ',' as long as the key is in `keys`; a comma
// not followed by such a key is left unconsumed (it belongs to the caller).
std::vector<std::pair<std::string, std::string>> parse_kv_list(Cursor& c, std::initializer_list<const char*> keys) {
    std::vector<std::pair<std::string, std::string>> out;
    std::string key;
    while (peek_param(c, keys, key)) {
        c.pos += key.size() + 1;  // key and '='
        out.emplace_back(key, c.take_while(value_char));
        const size_t before_comma = c.pos;
        if (!c.consume(',')) break;
        if (!peek_param(c, keys, key)) {
            c.pos = before_comma;
            break;
        }
    }
    return out;
}

OmegaFn parse_omega_form(const std::string& text) {
    Cursor c{text};
    std::string head = c.take_while(ident_char);
    if (head == "pow") {
        c.expect(':');
        auto kv = parse_kv_list(c, {"k", "scale"});
        double k = 1.0, scale = 1.0;
        for (auto& [key, val] : kv) (key == "k" ? k : scale) = parse_num(val, "omega " + key);
        return OmegaFn::power(k, scale);
    }
    if (head == "const") {
        c.expect(':');
        return OmegaFn::constant(parse_num(c.take_while(value_char), "omega const"));
    }
    if (head == "logpowinv") {
        c.expect(':');
        auto kv = parse_kv_list(c, {"p"});
        if (kv.size() != 1) throw std::invalid_argument("parse_potential: logpowinv needs p=...");
        return OmegaFn::inverse_log_power(parse_num(kv[0].second, "omega p"));
    }
    throw std::invalid_argument("parse_potential: unknown omega form '" + head + "'");
}

PotentialSpec parse_spec(Cursor& c, const Domain& dom) {
    std::string head = c.take_while(ident_char);
    if (head == "const") {
        c.expect(':');
        return PotentialSpec::constant(parse_num(c.take_while(value_char), "const"), dom);
    }
    if (head == "radialexp") {
        c.expect(':');
        auto kv = parse_kv_list(c, {"alpha"});
        if (kv.size() != 1) throw std::invalid_argument("parse_potential: radialexp needs alpha=...");
        return PotentialSpec::radial_exp(parse_num(kv[0].second, "alpha"), dom);
    }
    if (head == "omega") {
        c.expect(':');
        double exponent = 0.0;
        std::optional<OmegaFn> w;
        std::string key;
        while (peek_param(c, {"exp", "file", "form"}, key)) {
            c.pos += key.size() + 1;
            if (key == "exp") {
                exponent = parse_num(c.take_while(value_char), "omega exp");
            } else if (key == "file") {
                w = OmegaFn::from_csv(c.take_while(value_char));
            } else {
                // form=NAME:params — runs up to ',exp=' / ',file=' or end/paren
                size_t start = c.pos;
                while (!c.eof() && c.peek() != ')') {
                    if (c.peek() == ',') {
                        const size_t mark = c.pos;
                        c.pos += 1;
                        std::string next;
                        const bool stop = peek_param(c, {"exp", "file"}, next);
                        c.pos = mark;
                        if (stop) break;
                    }
                    ++c.pos;
                }
                w = parse_omega_form(c.s.substr(start, c.pos - start));
            }
            const size_t before_comma = c.pos;
            if (!c.consume(',')) break;
            if (!peek_param(c, {"exp", "file", "form"}, key)) {
                c.pos = before_comma;
                break;
            }
        }
        if (!w || exponent <= 0.0)
            throw std::invalid_argument("parse_potential: omega needs file=|form= and exp=");
        return PotentialSpec::radial_omega(std::move(*w), exponent, dom);
    }
    if (head == "prod") {
        c.expect('(');
        PotentialSpec l = parse_spec(c, dom);
        c.expect(',');
        PotentialSpec r = parse_spec(c, dom);
        c.expect(')');
        return PotentialSpec::product(std::move(l), std::move(r));
    }
    throw std::invalid_argument("parse_potential: unknown potential '" + head + "'");
}

}  // namespace

PotentialSpec parse_potential(const std::string& text, const Domain& dom) {
    Cursor c{text};
    PotentialSpec p = parse_spec(c, dom);
    if (!c.eof())
        throw std::invalid_argument("parse_potential: trailing input '" + text.substr(c.pos) + "'");
    return p;
}

}  // namespace eftlab

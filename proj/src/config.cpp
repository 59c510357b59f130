#include "kdvbbm/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "kdvbbm/error.hpp"
#include "kdvbbm/norms.hpp"
#include "kdvbbm/spectral.hpp"

namespace kdvbbm {

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s{
        {"coefficients",
         {"mode", "gamma1", "gamma2", "delta1", "delta2", "gamma", "a", "b", "c", "d", "a1", "b1", "c1", "d1", "rho"}},
        {"grid", {"n_modes", "half_length", "half_length_pi"}},
        {"datum", {"family", "k", "amplitude", "width", "sigma0", "s"}},
        {"solver", {"method", "T", "dt", "tol", "max_iter", "nodes", "record_stride", "blowup_factor"}},
        {"analyticity", {"sigma0", "noise_floor", "variant", "calibration_fraction", "max_rel_change"}},
        {"estimates",
         {"trials", "s", "sigma", "profile", "campaigns", "failure_s", "failure_ks", "splitting_r"}},
        {"output", {"dir", "name"}},
        {"run", {"seed", "threads"}},
    };
    return s;
}

void check_key(const std::string& key) {
    const auto dot = key.find('.');
    if (dot == std::string::npos) throw ConfigError("key '" + key + "' is not of the form section.key");
    const auto sec = schema().find(key.substr(0, dot));
    if (sec == schema().end()) throw ConfigError("unknown section [" + key.substr(0, dot) + "]");
    if (!sec->second.count(key.substr(dot + 1)))
        throw ConfigError("unknown key '" + key.substr(dot + 1) + "' in section [" + sec->first + "]");
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Inline comments: a ';' or '#' preceded by whitespace.
std::string strip_inline_comment(const std::string& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if ((v[i] == ';' || v[i] == '#') && (v[i - 1] == ' ' || v[i - 1] == '\t')) return trim(v.substr(0, i));
    return trim(v);
}

double parse_plain(const std::string& key, const std::string& text) {
    double v = 0;
    const char* b = text.data();
    const char* e = b + text.size();
    const auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e) throw ConfigError(key + ": '" + text + "' is not a number");
    return v;
}

// Accepts a decimal or a fraction "p/q".
double parse_real(const std::string& key, const std::string& text) {
    double v;
    if (const auto slash = text.find('/'); slash != std::string::npos) {
        const double den = parse_plain(key, trim(text.substr(slash + 1)));
        if (den == 0) throw ConfigError(key + ": zero denominator");
        v = parse_plain(key, trim(text.substr(0, slash))) / den;
    } else {
        v = parse_plain(key, text);
    }
    if (!std::isfinite(v)) throw ConfigError(key + ": value must be finite");
    return v;
}

long long parse_int(const std::string& key, const std::string& text) {
    long long v = 0;
    const char* b = text.data();
    const char* e = b + text.size();
    const auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e) throw ConfigError(key + ": '" + text + "' is not an integer");
    return v;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

class Reader {
public:
    explicit Reader(const RawConfig& raw) : raw_(raw) {}

    const std::string* find(const std::string& key) const {
        const auto it = raw_.find(key);
        return it == raw_.end() ? nullptr : &it->second;
    }
    void real(const std::string& key, double& out) const {
        if (auto v = find(key)) out = parse_real(key, *v);
    }
    template <class I>
    void integer(const std::string& key, I& out) const {
        if (auto v = find(key)) {
            const long long x = parse_int(key, *v);
            if (x < 0 && std::is_unsigned_v<I>) throw ConfigError(key + ": must be non-negative");
            out = static_cast<I>(x);
        }
    }
    void text(const std::string& key, std::string& out) const {
        if (auto v = find(key)) out = *v;
    }

private:
    const RawConfig& raw_;
};

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

CoefficientSet read_coefficients(const Reader& r) {
    std::string mode = "direct";
    r.text("coefficients.mode", mode);
    static const char* direct_keys[] = {"gamma1", "gamma2", "delta1", "delta2", "gamma"};
    static const char* abcd_keys[] = {"a", "b", "c", "d", "a1", "b1", "c1", "d1", "rho"};
    try {
        if (mode == "direct") {
            for (auto k : abcd_keys)
                require(!r.find(std::string("coefficients.") + k),
                        std::string("coefficients.") + k + " is only valid with mode = abcd");
            double g1 = 1.0 / 12.0, d1 = 1.0 / 20.0;
            r.real("coefficients.gamma1", g1);
            r.real("coefficients.delta1", d1);
            CoefficientSet c = CoefficientSet::from_free(g1, d1);
            r.real("coefficients.gamma2", c.gamma2);
            r.real("coefficients.delta2", c.delta2);
            r.real("coefficients.gamma", c.gamma);
            require_valid(c);
            return c;
        }
        if (mode == "abcd") {
            for (auto k : direct_keys)
                require(!r.find(std::string("coefficients.") + k),
                        std::string("coefficients.") + k + " is only valid with mode = direct");
            ABCDParams p;
            double* fields[] = {&p.a, &p.b, &p.c, &p.d, &p.a1, &p.b1, &p.c1, &p.d1};
            for (std::size_t i = 0; i < 8; ++i) {
                const std::string key = std::string("coefficients.") + abcd_keys[i];
                require(r.find(key) != nullptr, key + " is required with mode = abcd");
                r.real(key, *fields[i]);
            }
            p = ABCDParams::with_rho(p.a, p.b, p.c, p.d, p.a1, p.b1, p.c1, p.d1);
            r.real("coefficients.rho", p.rho);
            return derive_coefficients(p);
        }
    } catch (const ConstraintViolation& e) {
        throw ConfigError(std::string("coefficients: ") + e.what());
    }
    throw ConfigError("coefficients.mode must be direct or abcd, got '" + mode + "'");
}

}  // namespace

RawConfig parse_ini(const std::string& text) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream is(text);
    try {
        pt::ini_parser::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("malformed INI: ") + e.what());
    }
    RawConfig raw;
    for (const auto& [section, body] : tree) {
        if (!body.data().empty()) throw ConfigError("key '" + section + "' appears outside any section");
        if (!schema().count(section)) throw ConfigError("unknown section [" + section + "]");
        for (const auto& [key, value] : body) {
            const std::string full = section + "." + key;
            check_key(full);
            raw[full] = strip_inline_comment(value.data());
        }
    }
    return raw;
}

RawConfig load_ini(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_ini(ss.str());
}

std::string to_ini(const RawConfig& raw) {
    std::ostringstream os;
    std::string current;
    for (const auto& [key, value] : raw) {
        const auto dot = key.find('.');
        const std::string sec = key.substr(0, dot);
        if (sec != current) {
            if (!current.empty()) os << '\n';
            os << '[' << sec << "]\n";
            current = sec;
        }
        os << key.substr(dot + 1) << " = " << value << '\n';
    }
    return os.str();
}

void apply_override(RawConfig& raw, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' is not of the form key=value");
    const std::string key = trim(assignment.substr(0, eq));
    check_key(key);
    raw[key] = trim(assignment.substr(eq + 1));
}

const std::vector<std::string>& known_campaigns() {
    static const std::vector<std::string> c{"bilinear_omega", "bilinear_tau", "trilinear_psi", "derivsq_psi",
                                            "interpolation",  "splitting",    "antisymmetry",  "failure"};
    return c;
}

GridPtr RunConfig::grid() const { return SpectralGrid::make(n_modes, half_length); }

RunConfig build_config(const RawConfig& raw, const std::string& source) {
    for (const auto& [key, value] : raw) check_key(key);
    const Reader r(raw);
    RunConfig cfg;
    cfg.raw = raw;
    cfg.source = source;

    cfg.coeffs = read_coefficients(r);

    r.integer("grid.n_modes", cfg.n_modes);
    require(!(r.find("grid.half_length") && r.find("grid.half_length_pi")),
            "grid: give half_length or half_length_pi, not both");
    double hl_pi = 16.0;
    r.real("grid.half_length_pi", hl_pi);
    cfg.half_length = hl_pi * std::numbers::pi;
    r.real("grid.half_length", cfg.half_length);
    require(cfg.half_length > 0, "grid: half length must be positive");
    GridPtr grid;
    try {
        grid = cfg.grid();
    } catch (const RangeError& e) {
        throw ConfigError(std::string("grid: ") + e.what());
    }

    auto& d = cfg.datum;
    r.text("datum.family", d.family);
    r.integer("datum.k", d.k);
    r.real("datum.amplitude", d.amplitude);
    r.real("datum.width", d.width);
    r.real("datum.sigma0", d.sigma0);
    r.real("datum.s", d.s);
    require(d.family == "cos_mode" || d.family == "gaussian" || d.family == "gevrey_synthetic",
            "datum.family must be cos_mode, gaussian or gevrey_synthetic");
    require(d.k >= 1 && d.k < cfg.n_modes / 2, "datum.k must lie in [1, n_modes/2)");
    require(d.width > 0, "datum.width must be positive");
    require(d.sigma0 >= 0, "datum.sigma0 must be non-negative");

    auto& s = cfg.solver;
    r.text("solver.method", s.method);
    require(s.method == "ifrk4", "solver.method must be ifrk4");
    if (auto t = r.find("solver.T")) {
        if (*t == "auto") s.T.reset();
        else s.T = parse_real("solver.T", *t);
    }
    r.real("solver.dt", s.dt);
    r.real("solver.tol", s.tol);
    r.integer("solver.max_iter", s.max_iter);
    r.integer("solver.nodes", s.nodes);
    r.integer("solver.record_stride", s.record_stride);
    r.real("solver.blowup_factor", s.blowup_factor);
    require(s.dt > 0, "solver.dt must be positive");
    require(!s.T || *s.T > 0, "solver.T must be positive or auto");
    if (s.T) {
        const double ratio = *s.T / s.dt;
        require(std::abs(ratio - std::round(ratio)) <= 1e-9 * std::max(1.0, ratio),
                "solver.T must be an integer multiple of solver.dt");
    }
    require(s.tol > 0, "solver.tol must be positive");
    require(s.max_iter >= 1, "solver.max_iter must be at least 1");
    require(s.nodes >= 3, "solver.nodes must be at least 3");
    require(s.record_stride >= 1, "solver.record_stride must be at least 1");
    require(s.blowup_factor > 1, "solver.blowup_factor must exceed 1");

    auto& a = cfg.analyticity;
    r.real("analyticity.sigma0", a.sigma0);
    r.real("analyticity.noise_floor", a.noise_floor);
    r.real("analyticity.calibration_fraction", a.calibration_fraction);
    r.real("analyticity.max_rel_change", a.max_rel_change);
    if (auto v = r.find("analyticity.variant")) {
        try {
            a.variant = lower_variant_from_string(*v);
        } catch (const RangeError& e) {
            throw ConfigError(std::string("analyticity.variant: ") + e.what());
        }
    }
    require(a.sigma0 > 0, "analyticity.sigma0 must be positive");
    require(a.noise_floor > 0 && a.noise_floor < 1, "analyticity.noise_floor must lie in (0, 1)");
    require(a.calibration_fraction > 0 && a.calibration_fraction <= 1,
            "analyticity.calibration_fraction must lie in (0, 1]");
    require(a.max_rel_change > 0 && a.max_rel_change < 1, "analyticity.max_rel_change must lie in (0, 1)");
    const double bracket_max = 1.0 + grid->xi_max();
    require(2.0 * a.sigma0 * bracket_max <= kMaxGevreyExponent,
            "analyticity.sigma0 is too large for this grid: Gevrey weights would overflow");

    auto& e = cfg.estimates;
    r.integer("estimates.trials", e.trials);
    r.real("estimates.s", e.s);
    r.real("estimates.sigma", e.sigma);
    r.real("estimates.failure_s", e.failure_s);
    r.real("estimates.splitting_r", e.splitting_r);
    if (auto v = r.find("estimates.profile")) {
        try {
            e.profile = FieldProfile::parse(*v);
        } catch (const RangeError& err) {
            throw ConfigError(std::string("estimates.profile: ") + err.what());
        }
    }
    if (auto v = r.find("estimates.campaigns")) {
        e.campaigns = split_list(*v);
        for (const auto& c : e.campaigns)
            require(std::find(known_campaigns().begin(), known_campaigns().end(), c) != known_campaigns().end(),
                    "estimates.campaigns: unknown campaign '" + c + "'");
    } else {
        e.campaigns = known_campaigns();
    }
    if (auto v = r.find("estimates.failure_ks")) {
        e.failure_ks.clear();
        for (const auto& item : split_list(*v)) e.failure_ks.push_back(static_cast<int>(parse_int("estimates.failure_ks", item)));
    }
    require(e.trials >= 1, "estimates.trials must be at least 1");
    require(e.sigma >= 0, "estimates.sigma must be non-negative");
    require(e.splitting_r >= 0, "estimates.splitting_r must be non-negative");
    require(2.0 * e.sigma * bracket_max <= kMaxGevreyExponent,
            "estimates.sigma is too large for this grid: Gevrey weights would overflow");
    const int pair_offset = failure_pair_offset(*cfg.grid());
    for (int k : e.failure_ks)
        require(k >= 1 && k + pair_offset < cfg.n_modes / 2,
                "estimates.failure_ks: mode " + std::to_string(k) + " paired with mode " +
                    std::to_string(k + pair_offset) + " does not fit the grid");

    std::string dir = cfg.output_dir.string();
    r.text("output.dir", dir);
    cfg.output_dir = dir;
    r.text("output.name", cfg.name);
    require(!cfg.name.empty() && cfg.name.find('/') == std::string::npos && cfg.name[0] != '.',
            "output.name must be a plain directory name");

    r.integer("run.seed", cfg.seed);
    r.integer("run.threads", cfg.threads);

    if (d.family == "gevrey_synthetic")
        require(2.0 * d.sigma0 * bracket_max <= kMaxGevreyExponent, "datum.sigma0 is too large for this grid");
    return cfg;
}

Spectrum make_datum(const DatumSpec& d, const GridPtr& grid) {
    Spectrum u(grid);
    if (d.family == "cos_mode") {
        u.at(d.k) = u.at(-d.k) = 0.5 * d.amplitude;
    } else if (d.family == "gaussian") {
        const auto x = grid->points();
        std::vector<double> f(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) f[j] = d.amplitude * std::exp(-(x[j] * x[j]) / (d.width * d.width));
        u = transform_forward(RealField(grid, std::move(f)));
        zero_nyquist(u);
    } else if (d.family == "gevrey_synthetic") {
        // Real even profile with coefficients <xi>^-(s+1) e^{-sigma0 |xi|}: it lies
        // in G^{sigma0, s} and its spectrum decays at exactly rate sigma0.
        for (int k = 0; k < grid->n_modes() / 2; ++k) {
            const double xi = std::abs(grid->xi(k));
            const double c = d.amplitude * std::pow(1.0 + xi, -(d.s + 1.0)) * std::exp(-d.sigma0 * xi);
            u.at(k) = c;
            if (k > 0) u.at(-k) = c;
        }
    } else {
        throw ConfigError("unknown datum family '" + d.family + "'");
    }
    return u;
}

}  // namespace kdvbbm

#include "kdvbbm/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "kdvbbm/error.hpp"
#include "kdvbbm/parallel.hpp"
#include "kdvbbm/spectral.hpp"
#include "kdvbbm/symbols.hpp"

namespace kdvbbm {

std::string FieldProfile::describe() const {
    std::ostringstream os;
    switch (kind) {
        case ProfileKind::band_limited: os << "band_limited(" << cutoff_xi << ")"; break;
        case ProfileKind::exponential_decay: os << "exponential_decay(" << rate << ")"; break;
        case ProfileKind::polynomial_decay: os << "polynomial_decay(" << power << ")"; break;
    }
    return os.str();
}

FieldProfile FieldProfile::parse(const std::string& text) {
    FieldProfile p;
    std::string name = text;
    std::optional<double> arg;
    if (const auto open = text.find('('); open != std::string::npos) {
        const auto close = text.find(')', open);
        if (close == std::string::npos || close + 1 != text.size())
            throw RangeError("malformed profile '" + text + "'");
        name = text.substr(0, open);
        try {
            arg = std::stod(text.substr(open + 1, close - open - 1));
        } catch (const std::exception&) {
            throw RangeError("malformed profile argument in '" + text + "'");
        }
    }
    if (name == "band_limited") {
        p.kind = ProfileKind::band_limited;
        if (arg) p.cutoff_xi = *arg;
        if (!(p.cutoff_xi > 0)) throw RangeError("band_limited cutoff must be > 0");
    } else if (name == "exponential_decay") {
        p.kind = ProfileKind::exponential_decay;
        if (arg) p.rate = *arg;
        if (!(p.rate >= 0)) throw RangeError("exponential_decay rate must be >= 0");
    } else if (name == "polynomial_decay") {
        p.kind = ProfileKind::polynomial_decay;
        if (arg) p.power = *arg;
    } else {
        throw RangeError("unknown profile '" + name + "'");
    }
    return p;
}

Spectrum random_field(const FieldProfile& profile, std::uint64_t seed, const GridPtr& grid) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

    Spectrum s(grid);
    const int half = grid->n_modes() / 2;
    for (int k = 0; k < half; ++k) {
        const double xi = std::abs(grid->xi(k));
        const double u = unit(rng);
        const double th = phase(rng);
        double mag = 0;
        switch (profile.kind) {
            case ProfileKind::band_limited: mag = xi <= profile.cutoff_xi ? u : 0.0; break;
            case ProfileKind::exponential_decay: mag = (0.5 + u) * std::exp(-profile.rate * xi); break;
            case ProfileKind::polynomial_decay: mag = (0.5 + u) * std::pow(1.0 + xi, -profile.power); break;
        }
        if (k == 0) {
            s.at(0) = cplx(mag * std::cos(th), 0.0);
        } else {
            s.at(k) = std::polar(mag, th);
            s.at(-k) = std::conj(s.at(k));
        }
    }
    return s;
}

std::string to_string(Lemma l) {
    switch (l) {
        case Lemma::bilinear_omega: return "bilinear_omega";
        case Lemma::bilinear_tau: return "bilinear_tau";
        case Lemma::trilinear_psi: return "trilinear_psi";
        case Lemma::derivsq_psi: return "derivsq_psi";
    }
    return "?";
}

Lemma lemma_from_string(const std::string& s) {
    for (auto l : {Lemma::bilinear_omega, Lemma::bilinear_tau, Lemma::trilinear_psi, Lemma::derivsq_psi})
        if (to_string(l) == s) return l;
    throw RangeError("unknown lemma '" + s + "'");
}

double lemma_threshold(Lemma l) {
    switch (l) {
        case Lemma::bilinear_omega:
        case Lemma::bilinear_tau: return 0.0;
        case Lemma::trilinear_psi: return 1.0 / 6.0;
        case Lemma::derivsq_psi: return 1.0;
    }
    return 0.0;
}

double multilinear_ratio(Lemma lemma, std::span<const Spectrum> fields, GevreyIndex g,
                         const CoefficientSet& c, bool strict) {
    if (strict && g.s < lemma_threshold(lemma))
        throw RangeError(to_string(lemma) + " requires s >= " + std::to_string(lemma_threshold(lemma)));
    const std::size_t need = lemma == Lemma::bilinear_omega ? 2 : 1;
    if (fields.size() != need) throw RangeError(to_string(lemma) + " takes " + std::to_string(need) + " field(s)");
    const Spectrum& u = fields[0];
    switch (lemma) {
        case Lemma::bilinear_omega: {
            const Spectrum& v = fields[1];
            const double den = gevrey_norm(u, g) * gevrey_norm(v, g);
            if (den == 0) throw RangeError("multilinear_ratio: zero field");
            return gevrey_norm(apply_multiplier(SymbolKind::omega, dealiased_product(u, v), c), g) / den;
        }
        case Lemma::bilinear_tau: {
            const double nu = gevrey_norm(u, g);
            if (nu == 0) throw RangeError("multilinear_ratio: zero field");
            return gevrey_norm(apply_multiplier(SymbolKind::tau, dealiased_product(u, u), c), g) / (nu * nu);
        }
        case Lemma::trilinear_psi: {
            const double nu = gevrey_norm(u, g);
            if (nu == 0) throw RangeError("multilinear_ratio: zero field");
            return gevrey_norm(apply_multiplier(SymbolKind::psi, dealiased_product(u, u, u), c), g) /
                   (nu * nu * nu);
        }
        case Lemma::derivsq_psi: {
            const double nu = gevrey_norm(u, g);
            if (nu == 0) throw RangeError("multilinear_ratio: zero field");
            const Spectrum ux = spatial_derivative(u);
            return gevrey_norm(apply_multiplier(SymbolKind::psi, dealiased_product(ux, ux), c), g) / (nu * nu);
        }
    }
    return 0.0;
}

namespace {

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial, std::uint64_t stream = 0) {
    // splitmix64 of (seed, trial, stream)
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (trial + 1) + 0xD1B54A32D192ED03ULL * stream;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

TrialReport reduce(const std::string& id, const TrialConfig& cfg, const std::vector<double>& ratios,
                   bool count_violations) {
    TrialReport r;
    r.lemma_id = id;
    r.n_trials = static_cast<int>(ratios.size());
    r.seed = cfg.seed;
    r.n_modes = cfg.grid->n_modes();
    r.half_length = cfg.grid->half_length();
    r.g = cfg.g;
    r.profile = cfg.profile.describe();
    double sum = 0;
    for (double x : ratios) {
        r.ratio_max = std::max(r.ratio_max, x);
        sum += x;
        if (count_violations && !(x <= 1.0 + kExactTol)) ++r.violations;
    }
    r.ratio_mean = ratios.empty() ? 0.0 : sum / static_cast<double>(ratios.size());
    return r;
}

unsigned threads_of(const TrialConfig& cfg) { return cfg.threads ? cfg.threads : default_threads(); }

}  // namespace

TrialReport run_lemma_trials(Lemma lemma, const TrialConfig& cfg, const CoefficientSet& c, bool strict) {
    if (strict && cfg.g.s < lemma_threshold(lemma))
        throw RangeError(to_string(lemma) + " requires s >= " + std::to_string(lemma_threshold(lemma)));
    std::vector<double> ratios(static_cast<std::size_t>(cfg.n_trials));
    parallel_for(ratios.size(), threads_of(cfg), [&](std::size_t i) {
        std::vector<Spectrum> f{random_field(cfg.profile, trial_seed(cfg.seed, i, 0), cfg.grid)};
        if (lemma == Lemma::bilinear_omega)
            f.push_back(random_field(cfg.profile, trial_seed(cfg.seed, i, 1), cfg.grid));
        ratios[i] = multilinear_ratio(lemma, f, cfg.g, c, strict);
    });
    return reduce(to_string(lemma), cfg, ratios, false);
}

double interpolation_check(const Spectrum& u, double s1, double s2, double theta, double sigma) {
    if (!(s1 <= s2)) throw RangeError("interpolation_check: need s1 <= s2");
    if (!(theta >= 0 && theta <= 1)) throw RangeError("interpolation_check: theta must be in [0, 1]");
    const double s = theta * s1 + (1.0 - theta) * s2;
    const double lhs = gevrey_norm(u, {sigma, s});
    if (lhs == 0) throw RangeError("interpolation_check: zero field");
    const double a = gevrey_norm(u, {sigma, s1});
    const double b = gevrey_norm(u, {sigma, s2});
    return lhs / (std::pow(a, theta) * std::pow(b, 1.0 - theta));
}

std::vector<InterpolationCombo> default_interpolation_combos() {
    return {{0.0, 2.0, 0.5}, {0.0, 1.0, 0.25}, {1.0, 3.0, 0.7}, {0.5, 2.5, 0.1}, {0.0, 4.0, 0.9}};
}

TrialReport run_interpolation_trials(const TrialConfig& cfg, std::span<const InterpolationCombo> combos) {
    const std::size_t m = combos.size();
    std::vector<double> ratios(static_cast<std::size_t>(cfg.n_trials) * m);
    parallel_for(static_cast<std::size_t>(cfg.n_trials), threads_of(cfg), [&](std::size_t i) {
        const auto u = random_field(cfg.profile, trial_seed(cfg.seed, i), cfg.grid);
        for (std::size_t j = 0; j < m; ++j)
            ratios[i * m + j] = interpolation_check(u, combos[j].s1, combos[j].s2, combos[j].theta, cfg.g.sigma);
    });
    return reduce("interpolation", cfg, ratios, true);
}

std::vector<double> splitting_c1_grid() { return {1.0, 1.25, 1.5, 2.0, 3.0, 5.0, 10.0}; }

SplittingReport splitting_check(const Spectrum& u, double s, double r, double sigma) {
    if (!(r >= 0) || !(sigma >= 0)) throw RangeError("splitting_check: need r >= 0 and sigma >= 0");
    SplittingReport rep;
    rep.lhs = gevrey_norm(u, {sigma, s});
    rep.sobolev = sobolev_norm(u, s);
    rep.shifted = std::pow(sigma, r) * gevrey_norm(u, {sigma, s + r});
    const double den = rep.sobolev + rep.shifted;
    rep.unit_ratio = den > 0 ? rep.lhs / den : 0.0;
    for (double c1 : splitting_c1_grid()) {
        const double excess = rep.lhs - c1 * rep.sobolev;
        double c2 = 0;
        if (excess > 0) c2 = rep.shifted > 0 ? excess / rep.shifted : std::numeric_limits<double>::infinity();
        rep.c2_needed.push_back(c2);
    }
    return rep;
}

SplittingCampaign run_splitting_trials(const TrialConfig& cfg, double r) {
    std::vector<SplittingReport> reps(static_cast<std::size_t>(cfg.n_trials));
    parallel_for(reps.size(), threads_of(cfg), [&](std::size_t i) {
        reps[i] = splitting_check(random_field(cfg.profile, trial_seed(cfg.seed, i), cfg.grid), cfg.g.s, r,
                                  cfg.g.sigma);
    });
    SplittingCampaign out;
    out.r = r;
    out.c1 = splitting_c1_grid();
    out.c2.assign(out.c1.size(), 0.0);
    std::vector<double> ratios;
    for (const auto& rep : reps) {
        ratios.push_back(rep.unit_ratio);
        for (std::size_t j = 0; j < out.c1.size(); ++j) out.c2[j] = std::max(out.c2[j], rep.c2_needed[j]);
    }
    out.unit = reduce(r == 1.0 ? "splitting_r1" : "splitting_r" + format_quantity(r), cfg, ratios, r == 1.0);
    return out;
}

double antisymmetry_check(const Spectrum& v, const CoefficientSet& c) {
    const auto& grid = *v.grid();
    Spectrum w = apply_multiplier(SymbolKind::phi, v, c);
    for (auto& x : w.coeffs()) x = cplx(-x.imag(), x.real());  // i phi v^
    const RealField a = transform_inverse(v);
    const RealField b = transform_inverse(w);
    double inner = 0;
    for (std::size_t j = 0; j < a.size(); ++j) inner += a[j] * b[j];
    inner *= grid.length() / grid.n_modes();
    const double nv = l2_norm(v);
    return std::abs(inner) / (nv * nv + 1e-300);
}

TrialReport run_antisymmetry_trials(const TrialConfig& cfg, const CoefficientSet& c) {
    std::vector<double> res(static_cast<std::size_t>(cfg.n_trials));
    parallel_for(res.size(), threads_of(cfg), [&](std::size_t i) {
        res[i] = antisymmetry_check(random_field(cfg.profile, trial_seed(cfg.seed, i), cfg.grid), c);
    });
    auto r = reduce("antisymmetry", cfg, res, false);
    for (double x : res)
        if (!(x < kExactTol)) ++r.violations;
    return r;
}

int failure_pair_offset(const SpectralGrid& grid) {
    return std::max(1, static_cast<int>(std::lround(grid.half_length() / std::numbers::pi)));
}

FailureReport failure_demo_bilinear(double s, std::span<const int> ks, const GridPtr& grid,
                                    const CoefficientSet& c, double sigma) {
    FailureReport rep;
    const int m = failure_pair_offset(*grid);
    rep.offset = m;
    rep.s = s;
    rep.sigma = sigma;
    rep.n_modes = grid->n_modes();
    rep.half_length = grid->half_length();
    std::vector<double> lx, ly;
    for (int k : ks) {
        if (k < 1 || k + m >= grid->n_modes() / 2)
            throw RangeError("failure demo: mode " + std::to_string(k) + " does not fit the grid");
        Spectrum u(grid), v(grid);
        u.at(k) = u.at(-k) = 0.5;
        v.at(k + m) = v.at(-(k + m)) = 0.5;
        const Spectrum f[] = {u, v};
        const double ratio = multilinear_ratio(Lemma::bilinear_omega, f, {sigma, s}, c, false);
        rep.ks.push_back(k);
        rep.ratios.push_back(ratio);
        lx.push_back(std::log(1.0 + std::abs(grid->xi(k))));
        ly.push_back(std::log(ratio));
    }
    rep.monotone_growth = rep.ratios.size() > 1;
    for (std::size_t i = 1; i < rep.ratios.size(); ++i)
        if (!(rep.ratios[i] > rep.ratios[i - 1])) rep.monotone_growth = false;
    if (lx.size() > 1) {
        const double n = static_cast<double>(lx.size());
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i] / n, my += ly[i] / n;
        double sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) sxx += (lx[i] - mx) * (lx[i] - mx), sxy += (lx[i] - mx) * (ly[i] - my);
        rep.growth_exponent = sxy / sxx;
    }
    return rep;
}

EmpiricalConstant empirical_cs(const TrialConfig& cfg, const CoefficientSet& c, const Spectrum* datum) {
    EmpiricalConstant e;
    e.k_tau = run_lemma_trials(Lemma::bilinear_tau, cfg, c, false).ratio_max;
    e.k_psi3 = run_lemma_trials(Lemma::trilinear_psi, cfg, c, false).ratio_max;
    e.k_dsq = run_lemma_trials(Lemma::derivsq_psi, cfg, c, false).ratio_max;
    if (datum && !datum->is_zero()) {
        const std::span<const Spectrum> f(datum, 1);
        e.k_tau = std::max(e.k_tau, multilinear_ratio(Lemma::bilinear_tau, f, cfg.g, c, false));
        e.k_psi3 = std::max(e.k_psi3, multilinear_ratio(Lemma::trilinear_psi, f, cfg.g, c, false));
        e.k_dsq = std::max(e.k_dsq, multilinear_ratio(Lemma::derivsq_psi, f, cfg.g, c, false));
    }
    e.c_s = std::max({e.k_tau, e.k_psi3 / 8.0, 7.0 * e.k_dsq / 48.0});
    return e;
}

void write_trial_csv(std::ostream& os, std::span<const TrialReport> reports) {
    os << "lemma_id,s,sigma,n_modes,n_trials,ratio_max,ratio_mean,seed\n";
    char buf[256];
    for (const auto& r : reports) {
        std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%d,%d,%.17g,%.17g,%llu\n", r.lemma_id.c_str(), r.g.s,
                      r.g.sigma, r.n_modes, r.n_trials, r.ratio_max, r.ratio_mean,
                      static_cast<unsigned long long>(r.seed));
        os << buf;
    }
}

void write_failure_csv(std::ostream& os, const FailureReport& r) {
    os << "k,k_partner,xi,s,sigma,n_modes,ratio\n";
    char buf[192];
    for (std::size_t i = 0; i < r.ks.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g,%d,%.17g\n", r.ks[i], r.ks[i] + r.offset,
                      std::numbers::pi * r.ks[i] / r.half_length, r.s, r.sigma, r.n_modes, r.ratios[i]);
        os << buf;
    }
}

}  // namespace kdvbbm

#include "kdvbbm/commands.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "kdvbbm/analyticity.hpp"
#include "kdvbbm/csv.hpp"
#include "kdvbbm/dynamics.hpp"
#include "kdvbbm/error.hpp"
#include "kdvbbm/estimates.hpp"
#include "kdvbbm/norms.hpp"
#include "kdvbbm/parallel.hpp"
#include "kdvbbm/spectral.hpp"

namespace kdvbbm {

namespace fs = std::filesystem;

namespace {

constexpr double kEnergyDriftTol = 1e-6;
constexpr double kH2Slack = 1e-6;
constexpr double kOrderingSlack = 1e-12;
constexpr double kFitSlack = 0.05;
constexpr double kCrossCheckTol = 1e-6;
constexpr double kContractionLimit = 0.55;
constexpr double kGrowthSlack = 1e-6;

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    body(out);
    out.flush();
    if (!out) throw Error("write failed for " + path.string());
}

CheckResult check(std::string name, bool ok, double value, double threshold, std::string detail = {}) {
    return {std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, value, threshold, std::move(detail)};
}

CheckResult info(std::string name, double value, std::string detail = {}) {
    return {std::move(name), CheckStatus::info, value, std::numeric_limits<double>::quiet_NaN(), std::move(detail)};
}

TrialConfig trial_config(const RunConfig& cfg, const GridPtr& grid, GevreyIndex g) {
    TrialConfig t;
    t.grid = grid;
    t.g = g;
    t.profile = cfg.estimates.profile;
    t.n_trials = cfg.estimates.trials;
    t.seed = cfg.seed;
    t.threads = cfg.threads;
    return t;
}

// Horizon and step: a numeric T is used as given; "auto" takes the local
// existence time from the empirical constant and shrinks dt to divide it.
struct Horizon {
    double T;
    double dt;
    std::optional<EmpiricalConstant> constant;
};

Horizon resolve_horizon(const RunConfig& cfg, const Spectrum& eta0, RunManifest& m) {
    const GevreyIndex g{cfg.analyticity.sigma0, 2.0};
    if (cfg.solver.T) return {*cfg.solver.T, cfg.solver.dt, std::nullopt};
    const auto ec = empirical_cs(trial_config(cfg, eta0.grid(), g), cfg.coeffs, &eta0);
    const double T = local_existence_time(gevrey_norm(eta0, g), ec.c_s);
    if (!std::isfinite(T)) throw ConfigError("solver.T = auto needs a nonzero datum");
    const double steps = std::max(1.0, std::ceil(T / cfg.solver.dt - 1e-9));
    m.notes.emplace_back("empirical_cs", format_real(ec.c_s));
    m.notes.emplace_back("local_existence_time", format_real(T));
    return {T, T / steps, ec};
}

struct TrackedRun {
    Trajectory traj;
    std::vector<SigmaSample> series;
    BoundCalibration cal;
};

TrackedRun tracked_run(const RunConfig& cfg, const Spectrum& eta0, const Horizon& h) {
    const auto& a = cfg.analyticity;
    SigmaTracker tracker(a.sigma0, {2.0, a.max_rel_change, 0.0, a.noise_floor});
    EvolveOptions opt;
    opt.dt = h.dt;
    opt.record_stride = cfg.solver.record_stride;
    opt.blowup_factor = cfg.solver.blowup_factor;
    opt.gevrey = {a.sigma0, 2.0};
    opt.noise_floor = a.noise_floor;
    opt.observers = {&tracker};
    TrackedRun run{evolve_ifrk4(eta0, h.T, cfg.coeffs, opt), tracker.series(), {}};
    run.cal = calibrate_bounds(eta0, a.sigma0, run.series, a.calibration_fraction);
    return run;
}

void dynamics_checks(const RunConfig& cfg, const TrackedRun& run, RunManifest& m) {
    const auto& recs = run.traj.records;
    const bool ham = cfg.coeffs.hamiltonian();

    const double e0 = recs.front().energy;
    double drift = 0;
    for (const auto& r : recs) drift = std::max(drift, e0 > 0 ? std::abs(r.energy - e0) / e0 : std::abs(r.energy));
    if (ham) m.checks.push_back(check("energy_drift", drift < kEnergyDriftTol, drift, kEnergyDriftTol));
    else m.checks.push_back(info("energy_drift", drift, "energy is conserved only for gamma = 7/48"));

    const double lo = cfg.coeffs.c_min() / cfg.coeffs.c_max();
    const double hi = 1.0 / lo;
    const double p0 = h2_poly_norm(recs.front().state);
    double rmin = 1, rmax = 1;
    if (p0 > 0)
        for (const auto& r : recs) {
            const double q = h2_poly_norm(r.state) / p0;
            rmin = std::min(rmin, q * q);
            rmax = std::max(rmax, q * q);
        }
    const bool h2ok = rmin >= lo * (1 - kH2Slack) && rmax <= hi * (1 + kH2Slack);
    std::ostringstream d;
    d << "squared ratio range [" << format_real(rmin) << ", " << format_real(rmax) << "] against ["
      << format_real(lo) << ", " << format_real(hi) << "]";
    if (ham) m.checks.push_back(check("h2_two_sided", h2ok, rmax, hi, d.str()));
    else m.checks.push_back(info("h2_two_sided", rmax, d.str()));

    const double X0 = run.cal.inputs.X0;
    double growth = 0;
    for (const auto& s : run.series)
        if (s.t > 0) growth = std::max(growth, (s.gevrey - X0) / std::sqrt(s.t));
    m.checks.push_back(check("growth_bound", std::isfinite(growth), growth,
                             std::numeric_limits<double>::infinity(),
                             "sup over the run of (G(t) - X0) / sqrt(t)"));
}

void radius_checks(const RunConfig& cfg, const TrackedRun& run, RunManifest& m) {
    const auto& b = run.cal.inputs;
    const auto& recs = run.traj.records;
    double worst_lower = 0, worst_upper = 0, worst_variant = 0, worst_fit = 0;
    bool below_fit = false;
    for (const auto& r : recs) {
        const double le = lower_bound_radius(r.t, b, LowerBoundVariant::exact_integral);
        const double lp = lower_bound_radius(r.t, b, LowerBoundVariant::printed);
        const double up = upper_bound_radius(r.t, b);
        worst_lower = std::max(worst_lower, (le - r.sigma) / r.sigma);
        worst_upper = std::max(worst_upper, (r.sigma - up) / up);
        worst_variant = std::max(worst_variant, (lp - le) / le);
        if (r.sigma_hat) {
            const double gap = (r.sigma - *r.sigma_hat) / r.sigma;
            worst_fit = std::max(worst_fit, gap);
            if (gap > kFitSlack) below_fit = true;
        }
    }
    m.checks.push_back(check("sigma_above_lower_bound", worst_lower <= kOrderingSlack, worst_lower, kOrderingSlack));
    m.checks.push_back(check("sigma_below_upper_bound", worst_upper <= kOrderingSlack, worst_upper, kOrderingSlack));
    m.checks.push_back(check("printed_below_exact_lower_bound", worst_variant <= kOrderingSlack, worst_variant,
                             kOrderingSlack));

    const bool zero = recs.front().state.is_zero();
    bool monotone = true;
    for (std::size_t i = 1; i < run.series.size(); ++i) {
        const double prev = run.series[i - 1].sigma, cur = run.series[i].sigma;
        monotone = monotone && (zero ? cur == prev : cur < prev);
    }
    m.checks.push_back(check(zero ? "sigma_constant" : "sigma_strictly_decreasing", monotone,
                             run.series.back().sigma, cfg.analyticity.sigma0));
    m.checks.push_back(check("sigma_hat_above_tracked", !below_fit, worst_fit, kFitSlack,
                             "largest relative shortfall of the fitted radius below the tracked one"));
}

void add_bound_notes(const TrackedRun& run, RunManifest& m) {
    const auto& b = run.cal.inputs;
    m.notes.emplace_back("X0", format_real(b.X0));
    m.notes.emplace_back("Y0", format_real(b.Y0));
    m.notes.emplace_back("growth_constant", format_real(run.cal.growth_constant));
    m.notes.emplace_back("h2sq", format_real(b.h2sq));
    m.notes.emplace_back("c_upper", format_real(b.c_upper));
    m.notes.emplace_back("calibration_window", format_real(run.cal.window));
}

void cmd_simulate(const RunConfig& cfg, const fs::path& dir, RunManifest& m, bool radius_artifacts) {
    const auto grid = cfg.grid();
    const Spectrum eta0 = make_datum(cfg.datum, grid);
    const Horizon h = resolve_horizon(cfg, eta0, m);
    const TrackedRun run = tracked_run(cfg, eta0, h);

    write_file(dir / "trajectory.csv", [&](std::ostream& os) {
        write_trajectory_csv(os, run.traj, run.cal.inputs, cfg.analyticity.variant);
    });
    if (radius_artifacts) {
        write_file(dir / "sigma.csv", [&](std::ostream& os) {
            write_sigma_csv(os, run.traj, run.cal.inputs, cfg.analyticity.noise_floor);
        });
        write_file(dir / "spectrum_initial.csv", [&](std::ostream& os) { write_spectrum_csv(os, eta0); });
        write_file(dir / "spectrum_final.csv",
                   [&](std::ostream& os) { write_spectrum_csv(os, run.traj.records.back().state); });
    }
    dynamics_checks(cfg, run, m);
    radius_checks(cfg, run, m);
    add_bound_notes(run, m);
    m.notes.emplace_back("T", format_real(h.T));
    m.notes.emplace_back("dt", format_real(h.dt));
}

void cmd_picard(const RunConfig& cfg, const fs::path& dir, RunManifest& m) {
    const auto grid = cfg.grid();
    const Spectrum eta0 = make_datum(cfg.datum, grid);
    const GevreyIndex g{cfg.analyticity.sigma0, 2.0};
    const double X0 = gevrey_norm(eta0, g);
    const auto ec = empirical_cs(trial_config(cfg, grid, g), cfg.coeffs, &eta0);
    const double Tbar = local_existence_time(X0, ec.c_s);
    const double T = cfg.solver.T.value_or(Tbar);
    if (!std::isfinite(T)) throw ConfigError("picard with solver.T = auto needs a nonzero datum");
    m.notes.emplace_back("empirical_cs", format_real(ec.c_s));
    m.notes.emplace_back("k_tau", format_real(ec.k_tau));
    m.notes.emplace_back("k_psi3", format_real(ec.k_psi3));
    m.notes.emplace_back("k_dsq", format_real(ec.k_dsq));
    m.notes.emplace_back("local_existence_time", format_real(Tbar));
    m.notes.emplace_back("T", format_real(T));

    PicardOptions popt;
    popt.nodes = cfg.solver.nodes;
    popt.tol = cfg.solver.tol;
    popt.max_iter = cfg.solver.max_iter;
    popt.gevrey = g;
    const auto res = picard_solve(eta0, T, cfg.coeffs, popt);
    const auto& diag = res.diagnostics;

    // Marcher on a step that divides the Picard spacing, recorded at its nodes.
    const double spacing = T / (popt.nodes - 1);
    const int sub = std::max(1, static_cast<int>(std::ceil(spacing / cfg.solver.dt - 1e-9)));
    EvolveOptions eopt;
    eopt.dt = spacing / sub;
    eopt.record_stride = sub;
    eopt.blowup_factor = cfg.solver.blowup_factor;
    eopt.gevrey = g;
    eopt.noise_floor = cfg.analyticity.noise_floor;
    const Trajectory march = evolve_ifrk4(eta0, eopt.dt * sub * (popt.nodes - 1), cfg.coeffs, eopt);
    m.notes.emplace_back("ifrk4_dt", format_real(eopt.dt));

    const auto& pr = res.trajectory.records;
    const auto& mr = march.records;
    if (pr.size() != mr.size()) throw Error("picard and marcher node counts differ");
    double sup = 0;
    write_file(dir / "picard.csv", [&](std::ostream& os) {
        os << "t,gevrey_picard,gevrey_ifrk4,difference\n";
        for (std::size_t j = 0; j < pr.size(); ++j) {
            const double d = gevrey_norm(pr[j].state - mr[j].state, g);
            sup = std::max(sup, d);
            os << format_real(pr[j].t) << ',' << format_real(pr[j].gevrey) << ',' << format_real(mr[j].gevrey) << ','
               << format_real(d) << '\n';
        }
    });
    write_file(dir / "iterations.csv", [&](std::ostream& os) {
        os << "iteration,distance,ratio\n";
        for (std::size_t i = 0; i < diag.distances.size(); ++i)
            os << i + 1 << ',' << format_real(diag.distances[i]) << ','
               << format_real(i > 0 ? diag.ratios[i - 1] : std::nan("")) << '\n';
    });

    m.checks.push_back(check("picard_vs_ifrk4", sup < kCrossCheckTol, sup, kCrossCheckTol));
    m.checks.push_back(check("contraction_ratio", diag.max_ratio <= kContractionLimit, diag.max_ratio,
                             kContractionLimit, std::to_string(diag.iterations) + " iterations"));
    const double growth_limit = 2.0 * (1 + kGrowthSlack);
    if (T <= Tbar) m.checks.push_back(check("growth_within_window", diag.max_growth <= growth_limit, diag.max_growth, growth_limit));
    else m.checks.push_back(info("growth_within_window", diag.max_growth, "T exceeds the local existence time"));
    m.checks.push_back(info("resolution_change", diag.resolution_change));
}

void cmd_estimates(const RunConfig& cfg, const fs::path& dir, RunManifest& m) {
    const auto grid = cfg.grid();
    const auto& e = cfg.estimates;
    const TrialConfig tc = trial_config(cfg, grid, {e.sigma, e.s});
    auto has = [&](const std::string& c) { return std::find(e.campaigns.begin(), e.campaigns.end(), c) != e.campaigns.end(); };
    auto save = [&](const std::string& name, std::span<const TrialReport> reps) {
        write_file(dir / (name + ".csv"), [&](std::ostream& os) { write_trial_csv(os, reps); });
    };

    for (Lemma l : {Lemma::bilinear_omega, Lemma::bilinear_tau, Lemma::trilinear_psi, Lemma::derivsq_psi}) {
        const std::string id = to_string(l);
        if (!has(id)) continue;
        const bool in_range = e.s >= lemma_threshold(l);
        const TrialReport r = run_lemma_trials(l, tc, cfg.coeffs, false);
        save(id, std::span(&r, 1));
        m.checks.push_back(info(id, r.ratio_max, in_range ? "empirical constant" : "s below the lemma's range"));
    }
    if (has("interpolation")) {
        const auto combos = default_interpolation_combos();
        const TrialReport r = run_interpolation_trials(tc, combos);
        save("interpolation", std::span(&r, 1));
        m.checks.push_back(check("interpolation", r.violations == 0, r.ratio_max, 1 + kExactTol,
                                 std::to_string(r.violations) + " violations"));
    }
    if (has("splitting")) {
        const SplittingCampaign unit = run_splitting_trials(tc, 1.0);
        const SplittingCampaign other = run_splitting_trials(tc, e.splitting_r);
        const TrialReport reps[] = {unit.unit, other.unit};
        save("splitting", reps);
        write_file(dir / "splitting_constants.csv", [&](std::ostream& os) {
            os << "r,c1,c2\n";
            for (const auto* c : {&unit, &other})
                for (std::size_t j = 0; j < c->c1.size(); ++j)
                    os << format_real(c->r) << ',' << format_real(c->c1[j]) << ',' << format_real(c->c2[j]) << '\n';
        });
        m.checks.push_back(check("splitting_r1", unit.unit.violations == 0, unit.unit.ratio_max, 1 + kExactTol,
                                 std::to_string(unit.unit.violations) + " violations"));
    }
    if (has("antisymmetry")) {
        const TrialReport r = run_antisymmetry_trials(tc, cfg.coeffs);
        save("antisymmetry", std::span(&r, 1));
        m.checks.push_back(check("antisymmetry", r.violations == 0, r.ratio_max, kExactTol,
                                 std::to_string(r.violations) + " violations"));
    }
    if (has("failure")) {
        const FailureReport f = failure_demo_bilinear(e.failure_s, e.failure_ks, grid, cfg.coeffs);
        write_file(dir / "failure.csv", [&](std::ostream& os) { write_failure_csv(os, f); });
        m.checks.push_back(info("failure_demo", f.growth_exponent,
                                f.monotone_growth ? "ratio grows monotonically" : "ratio does not grow monotonically"));
    }
}

fs::path staging_path(const fs::path& root, const std::string& name) {
    static std::atomic<unsigned> counter{0};
    return root / (".staging-" + name + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
}

void promote(const fs::path& staging, const fs::path& target) {
    std::error_code ec;
    fs::remove_all(target, ec);
    fs::rename(staging, target);
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const ConstraintViolation*>(&e)) return kExitConfig;
    return kExitRuntime;
}

}  // namespace

fs::path output_root(const RunConfig& cfg) {
    if (const char* env = std::getenv(kOutputRootEnv); env && *env) return env;
    return cfg.output_dir;
}

const std::vector<std::string>& known_commands() {
    static const std::vector<std::string> c{"simulate", "picard", "radius", "estimates"};
    return c;
}

CommandOutcome run_command(const std::string& command, const RawConfig& raw, const std::string& source) {
    CommandOutcome out;
    out.manifest.command = command;
    out.manifest.config = raw;
    out.manifest.started = utc_timestamp();
    fs::path staging;
    try {
        if (std::find(known_commands().begin(), known_commands().end(), command) == known_commands().end())
            throw ConfigError("unknown command '" + command + "'");
        const RunConfig cfg = build_config(raw, source);
        const fs::path root = output_root(cfg);
        fs::create_directories(root);
        staging = staging_path(root, cfg.name);
        fs::create_directories(staging);

        if (command == "simulate") cmd_simulate(cfg, staging, out.manifest, false);
        else if (command == "radius") cmd_simulate(cfg, staging, out.manifest, true);
        else if (command == "picard") cmd_picard(cfg, staging, out.manifest);
        else cmd_estimates(cfg, staging, out.manifest);

        out.manifest.artifacts = collect_artifacts(staging);
        out.manifest.finished = utc_timestamp();
        write_manifest(staging / "manifest.json", out.manifest);
        out.run_dir = root / cfg.name;
        promote(staging, out.run_dir);
        out.exit_code = out.manifest.pass() ? kExitOk : kExitCheckFailed;
    } catch (const std::exception& e) {
        out.exit_code = exit_code_for(e);
        out.error = command + " (config " + source + "): " + e.what();
        out.run_dir.clear();
        if (!staging.empty()) {
            std::error_code ec;
            fs::remove_all(staging, ec);
        }
    }
    return out;
}

SweepAxis parse_sweep_axis(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("sweep axis '" + spec + "' is not key=v1,v2,...");
    SweepAxis axis;
    axis.key = spec.substr(0, eq);
    RawConfig probe;
    apply_override(probe, axis.key + "=x");  // validates the key
    std::stringstream ss(spec.substr(eq + 1));
    std::string v;
    while (std::getline(ss, v, ','))
        if (!v.empty()) axis.values.push_back(v);
    if (axis.values.empty()) throw ConfigError("sweep axis '" + axis.key + "' has no values");
    return axis;
}

std::vector<RawConfig> expand_sweep(const RawConfig& base, const std::vector<SweepAxis>& axes) {
    std::vector<RawConfig> out{base};
    for (const auto& axis : axes) {
        std::vector<RawConfig> next;
        for (const auto& r : out)
            for (const auto& v : axis.values) {
                RawConfig c = r;
                apply_override(c, axis.key + "=" + v);
                next.push_back(std::move(c));
            }
        out = std::move(next);
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto it = out[i].find("output.name");
        const std::string name = it == out[i].end() ? "run" : it->second;
        out[i]["output.name"] = name + "-" + std::to_string(i);
        if (!out[i].count("run.threads")) out[i]["run.threads"] = "1";
    }
    return out;
}

CommandOutcome run_sweep(const std::string& command, const RawConfig& base, const std::string& source,
                         const std::vector<SweepAxis>& axes, unsigned threads) {
    CommandOutcome out;
    out.manifest.command = "sweep:" + command;
    out.manifest.config = base;
    out.manifest.started = utc_timestamp();
    fs::path staging;
    try {
        const RunConfig cfg = build_config(base, source);
        const auto runs = expand_sweep(base, axes);
        std::vector<CommandOutcome> results(runs.size());
        parallel_for(runs.size(), threads ? threads : default_threads(),
                     [&](std::size_t i) { results[i] = run_command(command, runs[i], source); });

        const fs::path root = output_root(cfg);
        fs::create_directories(root);
        staging = staging_path(root, cfg.name);
        fs::create_directories(staging);
        write_file(staging / "sweep.csv", [&](std::ostream& os) {
            os << "index";
            for (const auto& a : axes) os << ',' << a.key;
            os << ",exit_code,run_dir\n";
            for (std::size_t i = 0; i < runs.size(); ++i) {
                os << i;
                for (const auto& a : axes) os << ',' << runs[i].at(a.key);
                os << ',' << results[i].exit_code << ',' << results[i].run_dir.generic_string() << '\n';
            }
        });
        int worst = kExitOk;
        for (std::size_t i = 0; i < runs.size(); ++i) {
            const auto& r = results[i];
            worst = std::max(worst, r.exit_code);
            CheckResult c = r.exit_code == kExitOk ? check(runs[i].at("output.name"), true, 0, 0)
                                                   : check(runs[i].at("output.name"), false, r.exit_code, 0, r.error);
            out.manifest.checks.push_back(std::move(c));
        }
        out.manifest.artifacts = collect_artifacts(staging);
        out.manifest.finished = utc_timestamp();
        write_manifest(staging / "manifest.json", out.manifest);
        out.run_dir = root / cfg.name;
        promote(staging, out.run_dir);
        out.exit_code = worst;
        if (worst != kExitOk) out.error = "at least one sweep run did not succeed";
    } catch (const std::exception& e) {
        out.exit_code = exit_code_for(e);
        out.error = "sweep (config " + source + "): " + e.what();
        out.run_dir.clear();
        if (!staging.empty()) {
            std::error_code ec;
            fs::remove_all(staging, ec);
        }
    }
    return out;
}

}  // namespace kdvbbm

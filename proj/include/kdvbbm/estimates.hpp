#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "kdvbbm/grid.hpp"
#include "kdvbbm/norms.hpp"
#include "kdvbbm/params.hpp"

namespace kdvbbm {

enum class ProfileKind { band_limited, exponential_decay, polynomial_decay };

/// Distribution of random Hermitian spectra. Magnitudes follow the profile
/// envelope times an independent factor, phases are uniform. Draws proceed in
/// increasing |k|, so a finer grid over the same box extends the same family.
struct FieldProfile {
    ProfileKind kind = ProfileKind::band_limited;
    double rate = 0.5;             // exponential_decay: envelope exp(-rate |xi|)
    double power = 3.0;            // polynomial_decay: envelope <xi>^-power
    double cutoff_xi = 4.0;        // band_limited: nonzero for |xi| <= cutoff_xi

    std::string describe() const;
    /// "band_limited", "band_limited(2)", "exponential_decay(0.5)", "polynomial_decay(3)".
    static FieldProfile parse(const std::string& text);
};

Spectrum random_field(const FieldProfile& profile, std::uint64_t seed, const GridPtr& grid);

enum class Lemma { bilinear_omega, bilinear_tau, trilinear_psi, derivsq_psi };

std::string to_string(Lemma l);
Lemma lemma_from_string(const std::string& s);
/// Smallest s for which the lemma is stated.
double lemma_threshold(Lemma l);

/// Left-side Gevrey norm over the product of right-side norms:
///   bilinear_omega  |omega(uv)| / (|u| |v|)
///   bilinear_tau    |tau(u^2)| / |u|^2
///   trilinear_psi   |psi(u^3)| / |u|^3
///   derivsq_psi     |psi(u_x^2)| / |u|^2
/// bilinear_omega takes two fields, the others one. With strict set, s below
/// the lemma's threshold raises RangeError.
double multilinear_ratio(Lemma lemma, std::span<const Spectrum> fields, GevreyIndex g,
                         const CoefficientSet& c, bool strict = true);

struct TrialConfig {
    GridPtr grid;
    GevreyIndex g{0.1, 1.0};
    FieldProfile profile;
    int n_trials = 1000;
    std::uint64_t seed = 1;
    unsigned threads = 0;  // 0 = hardware concurrency
};

struct TrialReport {
    std::string lemma_id;
    int n_trials = 0;
    double ratio_max = 0;
    double ratio_mean = 0;
    std::uint64_t seed = 0;
    int n_modes = 0;
    double half_length = 0;
    GevreyIndex g;
    std::string profile;
    int violations = 0;  // for exact inequalities: trials above 1 + 1e-12
};

TrialReport run_lemma_trials(Lemma lemma, const TrialConfig& cfg, const CoefficientSet& c,
                             bool strict = true);

/// |J^{s,sigma}u| / (|J^{s1,sigma}u|^theta |J^{s2,sigma}u|^{1-theta}) with
/// s = theta s1 + (1-theta) s2. Never exceeds 1 beyond rounding.
double interpolation_check(const Spectrum& u, double s1, double s2, double theta, double sigma);

struct InterpolationCombo {
    double s1, s2, theta;
};
std::vector<InterpolationCombo> default_interpolation_combos();
TrialReport run_interpolation_trials(const TrialConfig& cfg, std::span<const InterpolationCombo> combos);

inline constexpr double kExactTol = 1e-12;

/// |J^{s,sigma}u| against c1 |J^s u| + c2 sigma^r |J^{s+r,sigma}u|.
struct SplittingReport {
    double lhs = 0;
    double sobolev = 0;  // |J^s u|
    double shifted = 0;  // sigma^r |J^{s+r,sigma} u|
    /// lhs / (sobolev + shifted): the c1 = c2 = 1 ratio.
    double unit_ratio = 0;
    /// Smallest c2 for each c1 in splitting_c1_grid().
    std::vector<double> c2_needed;
};
std::vector<double> splitting_c1_grid();
SplittingReport splitting_check(const Spectrum& u, double s, double r, double sigma);

struct SplittingCampaign {
    TrialReport unit;             // ratios of the c1 = c2 = 1 form
    std::vector<double> c1;
    std::vector<double> c2;       // max over trials of the needed c2 per c1
    double r = 1;
};
SplittingCampaign run_splitting_trials(const TrialConfig& cfg, double r);

/// |<v, F^-1(i phi v^)>| / (|v|^2 + eps), inner product taken on the grid.
double antisymmetry_check(const Spectrum& v, const CoefficientSet& c);
TrialReport run_antisymmetry_trials(const TrialConfig& cfg, const CoefficientSet& c);

/// Bilinear omega ratio on cosine pairs at modes k and k+m, where m is the
/// mode nearest |xi| = 1 (failure_pair_offset). The product carries mass at
/// mode m, where omega is of order one on any box. For s < 0 the ratio grows
/// with k.
struct FailureReport {
    double s = 0;
    double sigma = 0;
    int n_modes = 0;
    double half_length = 0;
    int offset = 1;
    std::vector<int> ks;
    std::vector<double> ratios;
    bool monotone_growth = false;
    double growth_exponent = 0;  // slope of log ratio against log <xi_k>
};
int failure_pair_offset(const SpectralGrid& grid);
FailureReport failure_demo_bilinear(double s, std::span<const int> ks, const GridPtr& grid,
                                    const CoefficientSet& c, double sigma = 0.0);

/// Surrogate for the local-theory constant:
///   C_s = max(K_tau, K_psi3 / 8, 7 K_dsq / 48)
/// with K the largest observed lemma ratios over random trials and, when
/// given, the datum itself.
struct EmpiricalConstant {
    double c_s = 0;
    double k_tau = 0, k_psi3 = 0, k_dsq = 0;
};
EmpiricalConstant empirical_cs(const TrialConfig& cfg, const CoefficientSet& c,
                               const Spectrum* datum = nullptr);

/// lemma_id, s, sigma, n_modes, n_trials, ratio_max, ratio_mean, seed
void write_trial_csv(std::ostream& os, std::span<const TrialReport> reports);
void write_failure_csv(std::ostream& os, const FailureReport& r);

}  // namespace kdvbbm

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kdvbbm/dynamics.hpp"
#include "kdvbbm/grid.hpp"

namespace kdvbbm {

/// Exponential tail fit log|c_k| ~ intercept - sigma_hat |xi_k|.
struct RadiusFit {
    std::optional<double> sigma_hat;  // undefined when fewer than kMinFitPoints qualify
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
    double band_lo = 0;  // xi range used
    double band_hi = 0;
    int n_points = 0;
    std::string reason;  // why sigma_hat is undefined
};

inline constexpr int kMinFitPoints = 8;

/// Weighted least squares over modes k >= 2 with |c_k| > noise_floor * max|c|.
/// Each mode is weighted by its height above the floor in log units, so modes
/// barely above the floor count least.
RadiusFit estimate_radius(const Spectrum& u, double noise_floor);

/// Inputs of the lower/upper radius formulas.
///   X0 = |eta0|_{G^{sigma0,2}},  Y0 = C (|eta0|_{H2}^{3/2} + |eta0|_{H2}^2),
///   h2sq = |J^2 eta0|^2, c_upper = constant of the upper bound.
struct BoundInputs {
    double sigma0 = 0;
    double X0 = 0;
    double Y0 = 0;
    double h2sq = 0;
    double c_upper = 1;
};

void validate(const BoundInputs& b);

enum class LowerBoundVariant { exact_integral, printed };
LowerBoundVariant lower_variant_from_string(const std::string& s);

/// A(t) = X0 + t^{1/2} Y0 + 2 X0^2 + 2 t Y0^2.
double shrink_rate_bound(double t, const BoundInputs& b);

/// exact_integral: sigma0 exp(-(X0 + 2X0^2) t - 2/3 t^{3/2} Y0 - t^2 Y0^2), the
/// antiderivative of A. printed: the same with 3/2 on the t^{3/2} term.
double lower_bound_radius(double t, const BoundInputs& b, LowerBoundVariant variant);

/// c_upper sigma0 exp(-h2sq t).
double upper_bound_radius(double t, const BoundInputs& b);

struct SigmaSample {
    double t;
    double sigma;
    double gevrey;  // |J^s e^{sigma J} eta(t)| at the tracked sigma
};

struct TrackerOptions {
    double s = 2.0;
    double max_rel_change = 0.01;  // per sub-step
    double max_substep = 0;        // 0 = no cap beyond max_rel_change
    double noise_floor = 1e-13;
};

/// Integrates sigma' = -sigma (G + G^2), G = |J^s e^{sigma J} eta|, alongside
/// a run. Between two marcher nodes the state at the left node is frozen and
/// sigma is advanced by exponential Euler sub-steps.
class SigmaTracker : public StepObserver {
public:
    SigmaTracker(double sigma0, TrackerOptions opt = {});

    void on_step(double t, const Spectrum& u) override;
    std::optional<double> tracked_sigma() const override { return sigma_; }

    double sigma() const { return sigma_; }
    const std::vector<SigmaSample>& series() const { return series_; }
    /// Below this sigma the Gevrey weight differs from 1 by less than the
    /// noise floor on the whole grid.
    static double collapse_threshold(const SpectralGrid& g, double noise_floor);

private:
    TrackerOptions opt_;
    double sigma_;
    std::optional<Spectrum> prev_;
    double t_prev_ = 0;
    std::vector<SigmaSample> series_;
};

/// Frozen constants for the bound formulas, calibrated on the early part of a
/// tracked run.
struct BoundCalibration {
    BoundInputs inputs;
    double growth_constant = 0;  // C in Y0
    double h2 = 0;               // |eta0|_{H2}
    double window = 0;           // calibration window end time
};

BoundCalibration calibrate_bounds(const Spectrum& eta0, double sigma0,
                                  const std::vector<SigmaSample>& series, double fraction = 0.1);

}  // namespace kdvbbm

#include "kdvbbm/analyticity.hpp"

#include <algorithm>
#include <cmath>

#include "kdvbbm/error.hpp"

namespace kdvbbm {

RadiusFit estimate_radius(const Spectrum& u, double noise_floor) {
    RadiusFit fit;
    const auto& grid = *u.grid();
    const double peak = u.max_abs();
    if (peak == 0.0) {
        fit.reason = "zero spectrum";
        return fit;
    }
    const double floor = noise_floor * peak;
    double sw = 0, sx = 0, sy = 0;
    std::vector<double> xs, ys, ws;
    for (int k = 2; k < grid.n_modes() / 2; ++k) {
        const double a = std::abs(u.at(k));
        if (!(a > floor)) continue;
        const double x = std::abs(grid.xi(k));
        const double y = std::log(a / peak);
        const double w = std::log(a / floor);
        xs.push_back(x);
        ys.push_back(y);
        ws.push_back(w);
        sw += w;
        sx += w * x;
        sy += w * y;
    }
    fit.n_points = static_cast<int>(xs.size());
    if (fit.n_points < kMinFitPoints) {
        fit.reason = "only " + std::to_string(fit.n_points) + " modes above the noise floor";
        return fit;
    }
    const double mx = sx / sw, my = sy / sw;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += ws[i] * dx * dx;
        sxy += ws[i] * dx * dy;
        syy += ws[i] * dy * dy;
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx + std::log(peak);
    fit.r_squared = syy > 0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
    fit.band_lo = *std::min_element(xs.begin(), xs.end());
    fit.band_hi = *std::max_element(xs.begin(), xs.end());
    fit.sigma_hat = std::max(0.0, -fit.slope);
    return fit;
}

void validate(const BoundInputs& b) {
    auto ok = [](double v) { return std::isfinite(v) && v >= 0; };
    if (!(std::isfinite(b.sigma0) && b.sigma0 > 0)) throw RangeError("BoundInputs: sigma0 must be > 0");
    if (!ok(b.X0) || !ok(b.Y0) || !ok(b.h2sq)) throw RangeError("BoundInputs: X0, Y0, h2sq must be >= 0");
    if (!(std::isfinite(b.c_upper) && b.c_upper > 0)) throw RangeError("BoundInputs: c_upper must be > 0");
}

LowerBoundVariant lower_variant_from_string(const std::string& s) {
    if (s == "exact_integral") return LowerBoundVariant::exact_integral;
    if (s == "printed") return LowerBoundVariant::printed;
    throw RangeError("unknown lower bound variant '" + s + "'");
}

double shrink_rate_bound(double t, const BoundInputs& b) {
    return b.X0 + std::sqrt(t) * b.Y0 + 2.0 * b.X0 * b.X0 + 2.0 * t * b.Y0 * b.Y0;
}

double lower_bound_radius(double t, const BoundInputs& b, LowerBoundVariant variant) {
    const double c32 = variant == LowerBoundVariant::exact_integral ? 2.0 / 3.0 : 1.5;
    const double exponent =
        (b.X0 + 2.0 * b.X0 * b.X0) * t + c32 * std::pow(t, 1.5) * b.Y0 + t * t * b.Y0 * b.Y0;
    return b.sigma0 * std::exp(-exponent);
}

double upper_bound_radius(double t, const BoundInputs& b) {
    return b.c_upper * b.sigma0 * std::exp(-b.h2sq * t);
}

SigmaTracker::SigmaTracker(double sigma0, TrackerOptions opt) : opt_(opt), sigma_(sigma0) {
    if (!(sigma0 > 0)) throw RangeError("SigmaTracker: sigma0 must be > 0");
    if (!(opt.max_rel_change > 0)) throw RangeError("SigmaTracker: max_rel_change must be > 0");
}

double SigmaTracker::collapse_threshold(const SpectralGrid& g, double noise_floor) {
    return noise_floor / (1.0 + g.xi_max());
}

void SigmaTracker::on_step(double t, const Spectrum& u) {
    if (prev_) {
        double remaining = t - t_prev_;
        while (remaining > 0) {
            const double G = gevrey_norm(*prev_, {sigma_, opt_.s});
            const double rate = G + G * G;
            double h = remaining;
            if (rate > 0) h = std::min(h, opt_.max_rel_change / rate);
            if (opt_.max_substep > 0) h = std::min(h, opt_.max_substep);
            sigma_ *= std::exp(-h * rate);
            remaining -= h;
            if (remaining < 1e-14 * std::max(1.0, t)) remaining = 0;
        }
        const double thr = collapse_threshold(*u.grid(), opt_.noise_floor);
        if (sigma_ < thr) throw StepCollapse(t, sigma_, thr);
    }
    prev_ = u;
    t_prev_ = t;
    series_.push_back({t, sigma_, gevrey_norm(u, {sigma_, opt_.s})});
}

BoundCalibration calibrate_bounds(const Spectrum& eta0, double sigma0,
                                  const std::vector<SigmaSample>& series, double fraction) {
    BoundCalibration cal;
    cal.h2 = sobolev_norm(eta0, 2.0);
    auto& b = cal.inputs;
    b.sigma0 = sigma0;
    b.X0 = gevrey_norm(eta0, {sigma0, 2.0});
    b.h2sq = cal.h2 * cal.h2;
    const double scale = std::pow(cal.h2, 1.5) + cal.h2 * cal.h2;
    const double t_end = series.empty() ? 0.0 : series.back().t;
    cal.window = fraction * t_end;
    double c = 0, cu = 1;
    for (const auto& smp : series) {
        if (smp.t > cal.window * (1 + 1e-12)) break;
        if (smp.t > 0 && scale > 0) c = std::max(c, (smp.gevrey - b.X0) / (std::sqrt(smp.t) * scale));
        cu = std::max(cu, smp.sigma / (sigma0 * std::exp(-b.h2sq * smp.t)));
    }
    cal.growth_constant = c;
    b.Y0 = c * scale;
    b.c_upper = cu;
    return cal;
}

}  // namespace kdvbbm

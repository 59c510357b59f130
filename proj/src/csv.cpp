#include "kdvbbm/csv.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace kdvbbm {

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const std::optional<BoundInputs>& bounds,
                          LowerBoundVariant variant) {
    os << "t,energy,h2_norm,gevrey_norm,sigma_hat,sigma_lower,sigma_upper\n";
    const double nan = std::nan("");
    for (const auto& r : traj.records) {
        const double lo = bounds ? lower_bound_radius(r.t, *bounds, variant) : nan;
        const double up = bounds ? upper_bound_radius(r.t, *bounds) : nan;
        os << format_real(r.t) << ',' << format_real(r.energy) << ',' << format_real(r.h2) << ','
           << format_real(r.gevrey) << ',' << format_real(r.sigma_hat.value_or(nan)) << ',' << format_real(lo)
           << ',' << format_real(up) << '\n';
    }
}

void write_sigma_csv(std::ostream& os, const Trajectory& traj, const BoundInputs& bounds, double noise_floor) {
    os << "t,sigma_track,sigma_hat,r_squared,n_points,lower_exact,lower_printed,upper\n";
    for (const auto& r : traj.records) {
        const RadiusFit fit = estimate_radius(r.state, noise_floor);
        os << format_real(r.t) << ',' << format_real(r.sigma) << ','
           << format_real(fit.sigma_hat.value_or(std::nan(""))) << ','
           << format_real(fit.sigma_hat ? fit.r_squared : std::nan("")) << ',' << fit.n_points << ','
           << format_real(lower_bound_radius(r.t, bounds, LowerBoundVariant::exact_integral)) << ','
           << format_real(lower_bound_radius(r.t, bounds, LowerBoundVariant::printed)) << ','
           << format_real(upper_bound_radius(r.t, bounds)) << '\n';
    }
}

}  // namespace kdvbbm

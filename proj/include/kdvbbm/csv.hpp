#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kdvbbm/analyticity.hpp"
#include "kdvbbm/dynamics.hpp"

namespace kdvbbm {

/// Shortest round-trip decimal form; non-finite values print as "nan"/"inf".
std::string format_real(double v);

/// Columns t, energy, h2_norm, gevrey_norm, sigma_hat, sigma_lower,
/// sigma_upper. Without bounds the last two columns are "nan"; an undefined
/// sigma_hat is also "nan".
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const std::optional<BoundInputs>& bounds,
                          LowerBoundVariant variant = LowerBoundVariant::exact_integral);

/// Columns t, sigma_track, sigma_hat, r_squared, n_points, lower_exact,
/// lower_printed, upper, one row per trajectory record.
void write_sigma_csv(std::ostream& os, const Trajectory& traj, const BoundInputs& bounds, double noise_floor);

}  // namespace kdvbbm

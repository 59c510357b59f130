#pragma once

#include <vector>

#include "kdvbbm/grid.hpp"
#include "kdvbbm/params.hpp"

namespace kdvbbm {

/// Selects the weighted norm |<xi>^s exp(sigma <xi>) u^|, <xi> = 1 + |xi|.
struct GevreyIndex {
    double sigma = 0.0;
    double s = 0.0;
};

/// Largest admissible exponent 2 sigma <xi_max> before the weights are
/// considered unsafe in double precision.
inline constexpr double kMaxGevreyExponent = 650.0;

/// sqrt(2L sum <xi>^{2s} |c|^2).
double sobolev_norm(const Spectrum& u, double s);

/// sqrt(2L sum <xi>^{2s} e^{2 sigma <xi>} |c|^2). Throws OverflowError when
/// 2 sigma <xi_max> exceeds kMaxGevreyExponent.
double gevrey_norm(const Spectrum& u, GevreyIndex g);

/// Squared weights 2L <xi>^{2s} e^{2 sigma <xi>} per mode (FFT order).
std::vector<double> gevrey_weights(const SpectralGrid& grid, GevreyIndex g);

/// int eta^2 + g1 eta_x^2 + d1 eta_xx^2 = 2L sum varphi(xi) |c|^2.
double energy(const Spectrum& u, const CoefficientSet& c);

/// sqrt(2L sum (1 + xi^2 + xi^4) |c|^2), the weight matched to varphi.
double h2_poly_norm(const Spectrum& u);

/// sqrt(2L sum |c|^2), which equals the L2 norm of the field.
double l2_norm(const Spectrum& u);

}  // namespace kdvbbm

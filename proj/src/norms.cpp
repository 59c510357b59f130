#include "kdvbbm/norms.hpp"

#include <cmath>

#include "kdvbbm/error.hpp"
#include "kdvbbm/simd/kernels.hpp"

namespace kdvbbm {

namespace {
double weighted(const Spectrum& u, const std::vector<double>& w) {
    return simd::active().weighted_sum_sq(u.coeffs().data(), w.data(), u.size());
}
}  // namespace

std::vector<double> gevrey_weights(const SpectralGrid& grid, GevreyIndex g) {
    if (g.sigma < 0) throw RangeError("gevrey sigma must be >= 0");
    const double top = 2.0 * g.sigma * (1.0 + grid.xi_max());
    if (!(top <= kMaxGevreyExponent))
        throw OverflowError("gevrey weight exponent " + format_quantity(top) + " exceeds " +
                            format_quantity(kMaxGevreyExponent) + "; sigma too large for this grid");
    const auto br = grid.bracket();
    std::vector<double> w(br.size());
    for (std::size_t i = 0; i < br.size(); ++i)
        w[i] = grid.length() * std::pow(br[i], 2.0 * g.s) * std::exp(2.0 * g.sigma * br[i]);
    return w;
}

double sobolev_norm(const Spectrum& u, double s) { return gevrey_norm(u, {0.0, s}); }

double gevrey_norm(const Spectrum& u, GevreyIndex g) {
    return std::sqrt(weighted(u, gevrey_weights(*u.grid(), g)));
}

double energy(const Spectrum& u, const CoefficientSet& c) {
    const auto& grid = *u.grid();
    std::vector<double> w(u.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double x2 = grid.xi()[i] * grid.xi()[i];
        w[i] = grid.length() * (1.0 + c.gamma1 * x2 + c.delta1 * x2 * x2);
    }
    return weighted(u, w);
}

double h2_poly_norm(const Spectrum& u) {
    const auto& grid = *u.grid();
    std::vector<double> w(u.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double x2 = grid.xi()[i] * grid.xi()[i];
        w[i] = grid.length() * (1.0 + x2 + x2 * x2);
    }
    return std::sqrt(weighted(u, w));
}

double l2_norm(const Spectrum& u) { return sobolev_norm(u, 0.0); }

}  // namespace kdvbbm

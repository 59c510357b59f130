#include "kdvbbm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kdvbbm/error.hpp"
#include "kdvbbm/simd/kernels.hpp"

namespace kdvbbm {

SpectralGrid::SpectralGrid(int n_modes, double half_length) : n_(n_modes), L_(half_length) {
    if (n_modes < 4 || (n_modes & (n_modes - 1)) != 0)
        throw RangeError("n_modes must be a power of two >= 4, got " + std::to_string(n_modes));
    if (!(half_length > 0) || !std::isfinite(half_length))
        throw RangeError("half_length must be positive and finite");
    xi_.resize(static_cast<std::size_t>(n_));
    bracket_.resize(xi_.size());
    for (int i = 0; i < n_; ++i) {
        xi_[static_cast<std::size_t>(i)] = std::numbers::pi * wavenumber(i) / L_;
        bracket_[static_cast<std::size_t>(i)] = 1.0 + std::abs(xi_[static_cast<std::size_t>(i)]);
    }
}

std::shared_ptr<const SpectralGrid> SpectralGrid::make(int n_modes, double half_length) {
    return std::make_shared<const SpectralGrid>(n_modes, half_length);
}

double SpectralGrid::dxi() const { return std::numbers::pi / L_; }
double SpectralGrid::xi_max() const { return std::numbers::pi * (n_ / 2) / L_; }

std::vector<double> SpectralGrid::points() const {
    std::vector<double> x(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) x[static_cast<std::size_t>(j)] = -L_ + 2.0 * L_ * j / n_;
    return x;
}

bool same_grid(const GridPtr& a, const GridPtr& b) { return a == b || (a && b && *a == *b); }

RealField::RealField(GridPtr grid, std::vector<double> samples)
    : grid_(std::move(grid)), samples_(std::move(samples)) {
    if (samples_.size() != static_cast<std::size_t>(grid_->n_modes()))
        throw GridMismatch("sample count does not match grid");
}

Spectrum::Spectrum(GridPtr grid)
    : grid_(std::move(grid)), coeffs_(static_cast<std::size_t>(grid_->n_modes())) {}

Spectrum::Spectrum(GridPtr grid, std::vector<cplx> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != static_cast<std::size_t>(grid_->n_modes()))
        throw GridMismatch("coefficient count does not match grid");
}

double Spectrum::max_abs() const {
    double m = 0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

bool Spectrum::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const cplx& c) { return c == cplx{}; });
}

double Spectrum::hermitian_defect() const {
    double num = 0, den = 0;
    const int n = grid_->n_modes();
    for (int i = 0; i < n; ++i) {
        const cplx c = coeffs_[static_cast<std::size_t>(i)];
        const cplx d = 0.5 * (c - std::conj(coeffs_[static_cast<std::size_t>(grid_->mirror(i))]));
        num += std::norm(d);
        den += std::norm(c);
    }
    // The unpaired mode mirrors onto itself and must be real.
    return den > 0 ? std::sqrt(num / den) : 0.0;
}

bool Spectrum::all_finite() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const cplx& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

Spectrum& Spectrum::operator+=(const Spectrum& o) {
    if (!same_grid(grid_, o.grid_)) throw GridMismatch("spectra live on different grids");
    simd::active().axpy(coeffs_.data(), 1.0, o.coeffs_.data(), coeffs_.size());
    return *this;
}

Spectrum& Spectrum::operator-=(const Spectrum& o) {
    if (!same_grid(grid_, o.grid_)) throw GridMismatch("spectra live on different grids");
    simd::active().axpy(coeffs_.data(), -1.0, o.coeffs_.data(), coeffs_.size());
    return *this;
}

Spectrum& Spectrum::operator*=(double a) {
    for (auto& c : coeffs_) c *= a;
    return *this;
}

Spectrum operator-(Spectrum a, const Spectrum& b) { return a -= b; }
Spectrum operator+(Spectrum a, const Spectrum& b) { return a += b; }

}  // namespace kdvbbm

#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace kdvbbm {

using cplx = std::complex<double>;

/// Uniform periodic grid on [-L, L) with n collocation points
/// x_j = -L + 2L j / n. Wavenumbers xi_k = pi k / L are stored in FFT order:
/// index i holds k = i for i < n/2 and k = i - n otherwise, so index n/2 is
/// the unpaired mode k = -n/2.
class SpectralGrid {
public:
    SpectralGrid(int n_modes, double half_length);

    static std::shared_ptr<const SpectralGrid> make(int n_modes, double half_length);

    int n_modes() const { return n_; }
    double half_length() const { return L_; }
    double length() const { return 2.0 * L_; }
    double dxi() const;
    double xi_max() const;  // pi (n/2) / L

    int nyquist_index() const { return n_ / 2; }
    int wavenumber(int index) const { return index < n_ / 2 ? index : index - n_; }
    int index_of(int k) const { return k >= 0 ? k : k + n_; }
    int mirror(int index) const { return index == 0 ? 0 : n_ - index; }

    std::span<const double> xi() const { return xi_; }
    double xi(int index) const { return xi_[static_cast<std::size_t>(index)]; }
    /// <xi> = 1 + |xi| per mode.
    std::span<const double> bracket() const { return bracket_; }
    std::vector<double> points() const;

    bool operator==(const SpectralGrid& o) const { return n_ == o.n_ && L_ == o.L_; }

private:
    int n_;
    double L_;
    std::vector<double> xi_;
    std::vector<double> bracket_;
};

using GridPtr = std::shared_ptr<const SpectralGrid>;

bool same_grid(const GridPtr& a, const GridPtr& b);

/// Samples of a real field at the collocation points.
class RealField {
public:
    RealField(GridPtr grid, std::vector<double> samples);

    const GridPtr& grid() const { return grid_; }
    std::span<const double> samples() const { return samples_; }
    std::vector<double>& mutable_samples() { return samples_; }
    double operator[](std::size_t j) const { return samples_[j]; }
    std::size_t size() const { return samples_.size(); }

private:
    GridPtr grid_;
    std::vector<double> samples_;
};

/// Fourier-series coefficients, eta(x) = sum_k c_k exp(i pi k x / L), in the
/// grid's FFT order.
class Spectrum {
public:
    explicit Spectrum(GridPtr grid);
    Spectrum(GridPtr grid, std::vector<cplx> coeffs);

    const GridPtr& grid() const { return grid_; }
    std::span<const cplx> coeffs() const { return coeffs_; }
    std::span<cplx> coeffs() { return coeffs_; }
    std::size_t size() const { return coeffs_.size(); }

    cplx& operator[](std::size_t i) { return coeffs_[i]; }
    const cplx& operator[](std::size_t i) const { return coeffs_[i]; }
    /// Coefficient by signed wavenumber k in [-n/2, n/2).
    cplx& at(int k) { return coeffs_[static_cast<std::size_t>(grid_->index_of(k))]; }
    const cplx& at(int k) const { return coeffs_[static_cast<std::size_t>(grid_->index_of(k))]; }

    double max_abs() const;
    bool is_zero() const;
    /// Relative RMS size of the anti-Hermitian part, |c_k - conj(c_-k)| / 2.
    double hermitian_defect() const;
    bool all_finite() const;

    Spectrum& operator+=(const Spectrum& o);
    Spectrum& operator-=(const Spectrum& o);
    Spectrum& operator*=(double a);

private:
    GridPtr grid_;
    std::vector<cplx> coeffs_;
};

Spectrum operator-(Spectrum a, const Spectrum& b);
Spectrum operator+(Spectrum a, const Spectrum& b);

}  // namespace kdvbbm

#pragma once

// Slow, direct reference computations used only by the tests. None of these
// call into the library's transform, product or norm code.

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "kdvbbm/grid.hpp"
#include "kdvbbm/params.hpp"

namespace oracle {

using cplx = std::complex<double>;
using SparseSpectrum = std::map<int, cplx>;  // signed wavenumber -> coefficient

/// O(n^2) DFT with the series convention f(x) = sum_k c_k exp(i pi k x / L),
/// x_j = -L + 2L j / n. Returned in FFT order.
std::vector<cplx> direct_dft(const std::vector<double>& samples, double L);

/// Evaluates sum_k c_k exp(i pi k x / L) at x (real part).
double synthesize(const SparseSpectrum& c, double L, double x);

/// Exact convolution of two sparse spectra (product of the series).
SparseSpectrum convolve(const SparseSpectrum& a, const SparseSpectrum& b);

/// Keeps |k| < n/2 and drops everything else, which is what a dealiased
/// product truncated to n modes should hold.
SparseSpectrum truncate(const SparseSpectrum& a, int n);

SparseSpectrum to_sparse(const kdvbbm::Spectrum& s);

/// Periodic rectangle rule for int_{-L}^{L} f^2, exact for trigonometric
/// polynomials of degree < n.
double l2_quadrature(const std::vector<double>& samples, double L);

/// Symbol formulas written out independently of the library.
double symbol(const std::string& kind, double xi, const kdvbbm::CoefficientSet& c);

/// sqrt(2L sum <xi>^{2s} e^{2 sigma <xi>} |c_k|^2) over a sparse spectrum.
double weighted_norm(const SparseSpectrum& c, double L, double sigma, double s);

/// Fourth-order central difference of f at x.
double central_derivative(const std::function<double(double)>& f, double x, double h);

/// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace oracle

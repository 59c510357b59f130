#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "kdvbbm/grid.hpp"
#include "kdvbbm/params.hpp"
#include "kdvbbm/symbols.hpp"

namespace kdvbbm {

/// Coefficients with Parseval weight 2L: int |f|^2 = 2L sum |c_k|^2.
Spectrum transform_forward(const RealField& f);

/// Throws SymmetryViolation if the anti-Hermitian part of s exceeds 1e-10
/// (relative RMS), i.e. if the output would carry an imaginary residual.
RealField transform_inverse(const Spectrum& s);

inline constexpr double kSymmetryTol = 1e-10;

/// c_k -> m(xi_k) c_k; the unpaired mode is zeroed.
Spectrum apply_multiplier(SymbolKind kind, const Spectrum& s, const CoefficientSet& c);
/// Same with a precomputed table (FFT order).
Spectrum apply_table(std::span<const double> table, const Spectrum& s);

/// c_k -> i xi_k c_k; the unpaired mode is zeroed.
Spectrum spatial_derivative(const Spectrum& s);

/// Pointwise product of 2 or 3 fields, formed on a grid zero-padded to 2n and
/// truncated back to n modes. Exact for inputs whose product is resolvable.
Spectrum dealiased_product(std::span<const Spectrum* const> factors);
Spectrum dealiased_product(const Spectrum& a, const Spectrum& b);
Spectrum dealiased_product(const Spectrum& a, const Spectrum& b, const Spectrum& c);

// Padded-grid building blocks shared with the nonlinear right-hand side.

/// Samples of s on the m-point grid (m = n or 2n) covering the same box.
void to_physical(const Spectrum& s, int m, std::span<double> out);
/// Spectrum of m samples truncated to s's grid; the unpaired mode is set to
/// zero when m > n.
void from_physical(std::span<const double> samples, Spectrum& s);

/// Zeros the unpaired mode -n/2.
void zero_nyquist(Spectrum& s);

/// CSV rows k, xi, re, im, abs in ascending k.
void write_spectrum_csv(std::ostream& os, const Spectrum& s);

}  // namespace kdvbbm

#pragma once

#include <string_view>
#include <vector>

#include "kdvbbm/grid.hpp"
#include "kdvbbm/params.hpp"

namespace kdvbbm {

/// Fourier multipliers of the model.
///   varphi = 1 + g1 xi^2 + d1 xi^4
///   phi    = xi (1 - g2 xi^2 + d2 xi^4) / varphi   (dispersion)
///   psi    = xi / varphi
///   tau    = (3 xi - 4 g xi^3) / (4 varphi)
///   omega  = |xi| / (1 + xi^2)
///   kappa  = (1 - g2 xi^2 + d2 xi^4) / varphi      (phi = xi kappa)
enum class SymbolKind { varphi, phi, psi, tau, omega, kappa };

std::string_view to_string(SymbolKind k);
SymbolKind symbol_from_string(std::string_view s);

bool is_odd(SymbolKind k);

double evaluate_symbol(SymbolKind kind, double xi, const CoefficientSet& c);

/// Symbol sampled at the grid wavenumbers (FFT order). Odd symbols are zero at
/// the unpaired mode -n/2, which has no conjugate partner.
std::vector<double> symbol_table(SymbolKind kind, const SpectralGrid& grid, const CoefficientSet& c);

/// Suprema over the grid of the pointwise dominations used by the multilinear
/// estimates:
///   tau_over_omega   = max |tau| / omega
///   psi_over_omega   = max |psi| (1+|xi|) / omega
///   psi_decay        = max (1+|xi|)^3 |psi|
/// Each is finite and converges as the grid is refined.
struct SymbolDominations {
    double tau_over_omega;
    double psi_over_omega;
    double psi_decay;
};
SymbolDominations symbol_dominations(const SpectralGrid& grid, const CoefficientSet& c);

}  // namespace kdvbbm

#include "kdvbbm/symbols.hpp"

#include <algorithm>
#include <cmath>

#include "kdvbbm/error.hpp"

namespace kdvbbm {

std::string_view to_string(SymbolKind k) {
    switch (k) {
        case SymbolKind::varphi: return "varphi";
        case SymbolKind::phi: return "phi";
        case SymbolKind::psi: return "psi";
        case SymbolKind::tau: return "tau";
        case SymbolKind::omega: return "omega";
        case SymbolKind::kappa: return "kappa";
    }
    return "?";
}

SymbolKind symbol_from_string(std::string_view s) {
    for (auto k : {SymbolKind::varphi, SymbolKind::phi, SymbolKind::psi, SymbolKind::tau,
                   SymbolKind::omega, SymbolKind::kappa})
        if (to_string(k) == s) return k;
    throw RangeError("unknown symbol '" + std::string(s) + "'");
}

bool is_odd(SymbolKind k) {
    return k == SymbolKind::phi || k == SymbolKind::psi || k == SymbolKind::tau;
}

double evaluate_symbol(SymbolKind kind, double xi, const CoefficientSet& c) {
    const double x2 = xi * xi;
    const double vp = 1.0 + c.gamma1 * x2 + c.delta1 * x2 * x2;
    switch (kind) {
        case SymbolKind::varphi: return vp;
        case SymbolKind::phi: return xi * (1.0 - c.gamma2 * x2 + c.delta2 * x2 * x2) / vp;
        case SymbolKind::psi: return xi / vp;
        case SymbolKind::tau: return xi * (3.0 - 4.0 * c.gamma * x2) / (4.0 * vp);
        case SymbolKind::omega: return std::abs(xi) / (1.0 + x2);
        case SymbolKind::kappa: return (1.0 - c.gamma2 * x2 + c.delta2 * x2 * x2) / vp;
    }
    return 0.0;
}

std::vector<double> symbol_table(SymbolKind kind, const SpectralGrid& grid, const CoefficientSet& c) {
    std::vector<double> m(static_cast<std::size_t>(grid.n_modes()));
    for (int i = 0; i < grid.n_modes(); ++i)
        m[static_cast<std::size_t>(i)] = evaluate_symbol(kind, grid.xi(i), c);
    if (is_odd(kind)) m[static_cast<std::size_t>(grid.nyquist_index())] = 0.0;
    return m;
}

SymbolDominations symbol_dominations(const SpectralGrid& grid, const CoefficientSet& c) {
    SymbolDominations d{0, 0, 0};
    for (int i = 0; i < grid.n_modes(); ++i) {
        const double xi = grid.xi(i);
        const double br = 1.0 + std::abs(xi);
        const double psi = std::abs(evaluate_symbol(SymbolKind::psi, xi, c));
        d.psi_decay = std::max(d.psi_decay, br * br * br * psi);
        if (xi == 0.0) continue;
        const double om = evaluate_symbol(SymbolKind::omega, xi, c);
        d.tau_over_omega = std::max(d.tau_over_omega, std::abs(evaluate_symbol(SymbolKind::tau, xi, c)) / om);
        d.psi_over_omega = std::max(d.psi_over_omega, psi * br / om);
    }
    return d;
}

}  // namespace kdvbbm

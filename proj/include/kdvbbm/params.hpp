#pragma once

#include <string>
#include <vector>

namespace kdvbbm {

/// Parameters of the two-way abcd family from which the one-way model
/// coefficients are derived. rho must equal b + d - 1/6.
struct ABCDParams {
    double a = 0, b = 0, c = 0, d = 0;
    double a1 = 0, b1 = 0, c1 = 0, d1 = 0;
    double rho = 0;

    /// Fills rho from b and d.
    static ABCDParams with_rho(double a, double b, double c, double d,
                               double a1, double b1, double c1, double d1);
};

/// Model coefficients of
///   eta_t + eta_x - g1 eta_xxt + g2 eta_xxx + d1 eta_xxxxt + d2 eta_xxxxx
///     + 3/2 eta eta_x + g (eta^2)_xxx - 7/48 (eta_x^2)_x - 1/8 (eta^3)_x = 0.
struct CoefficientSet {
    double gamma1 = 0;
    double gamma2 = 0;
    double delta1 = 0;
    double delta2 = 0;
    double gamma = 0;

    double c_min() const;  // min(gamma1, delta1)
    double c_max() const;  // max(gamma1, delta1)

    /// The Hamiltonian case gamma = 7/48, within the constraint tolerance.
    bool hamiltonian() const;

    /// gamma1 = gamma2 = 1/12, gamma = 7/48, delta1 = 1/20, delta2 = 4/45.
    static CoefficientSet defaults();

    /// Builds a set from gamma1 and delta1 alone, filling the others from
    /// the three linear constraints.
    static CoefficientSet from_free(double gamma1, double delta1);
};

inline constexpr double kConstraintTol = 1e-12;

CoefficientSet derive_coefficients(const ABCDParams& p);

struct InvariantCheck {
    std::string name;
    bool pass = false;
    double residual = 0;
};

struct ValidationReport {
    std::vector<InvariantCheck> checks;
    bool pass() const;
    /// First failing check, or nullptr.
    const InvariantCheck* first_failure() const;
};

ValidationReport validate_coefficients(const CoefficientSet& c);

/// Throws ConstraintViolation naming the first failed invariant.
void require_valid(const CoefficientSet& c);

/// Constants (lower, upper) with lower*|u|^2_{poly} <= E(u) <= upper*|u|^2_{poly}
/// for the polynomial weight 1 + xi^2 + xi^4.
struct EnergyEquivalence {
    double lower;
    double upper;
};
EnergyEquivalence energy_equivalence(const CoefficientSet& c);

}  // namespace kdvbbm

#include "kdvbbm/params.hpp"

#include <algorithm>
#include <cmath>

#include "kdvbbm/error.hpp"

namespace kdvbbm {

ABCDParams ABCDParams::with_rho(double a, double b, double c, double d,
                                double a1, double b1, double c1, double d1) {
    return ABCDParams{a, b, c, d, a1, b1, c1, d1, b + d - 1.0 / 6.0};
}

double CoefficientSet::c_min() const { return std::min(gamma1, delta1); }
double CoefficientSet::c_max() const { return std::max(gamma1, delta1); }

bool CoefficientSet::hamiltonian() const {
    return std::abs(gamma - 7.0 / 48.0) <= kConstraintTol;
}

CoefficientSet CoefficientSet::defaults() {
    return CoefficientSet{1.0 / 12.0, 1.0 / 12.0, 1.0 / 20.0, 4.0 / 45.0, 7.0 / 48.0};
}

CoefficientSet CoefficientSet::from_free(double gamma1, double delta1) {
    CoefficientSet c;
    c.gamma1 = gamma1;
    c.gamma2 = 1.0 / 6.0 - gamma1;
    c.delta1 = delta1;
    c.delta2 = delta1 + 19.0 / 360.0 - gamma1 / 6.0;
    c.gamma = (5.0 - 18.0 * gamma1) / 24.0;
    return c;
}

CoefficientSet derive_coefficients(const ABCDParams& p) {
    const double sum = p.a + p.b + p.c + p.d;
    if (std::abs(sum - 1.0 / 3.0) > kConstraintTol)
        throw ConstraintViolation("a+b+c+d = 1/3", std::abs(sum - 1.0 / 3.0));
    const double rho_res = std::abs(p.rho - (p.b + p.d - 1.0 / 6.0));
    if (rho_res > kConstraintTol) throw ConstraintViolation("rho = b+d-1/6", rho_res);

    CoefficientSet c;
    c.gamma1 = 0.5 * (p.b + p.d - p.rho);
    c.gamma2 = 0.5 * (p.a + p.c + p.rho);
    c.delta1 = 0.25 * (2.0 * (p.b1 + p.d1) - (p.b - p.d + p.rho) * (1.0 / 6.0 - p.a - p.d) -
                       p.d * (p.c - p.a + p.rho));
    c.delta2 = 0.25 * (2.0 * (p.a1 + p.c1) - (p.c - p.a + p.rho) * (1.0 / 6.0 - p.a) + p.rho / 3.0);
    c.gamma = (5.0 - 9.0 * (p.b + p.d) + 9.0 * p.rho) / 24.0;
    require_valid(c);
    return c;
}

bool ValidationReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

const InvariantCheck* ValidationReport::first_failure() const {
    for (const auto& c : checks)
        if (!c.pass) return &c;
    return nullptr;
}

ValidationReport validate_coefficients(const CoefficientSet& c) {
    ValidationReport r;
    auto positive = [&](const char* name, double v) {
        r.checks.push_back({name, std::isfinite(v) && v > 0, v > 0 ? 0.0 : -v});
    };
    auto relation = [&](const char* name, double lhs, double rhs) {
        const double res = std::abs(lhs - rhs);
        r.checks.push_back({name, std::isfinite(res) && res <= kConstraintTol, res});
    };
    positive("gamma1 > 0", c.gamma1);
    positive("delta1 > 0", c.delta1);
    relation("gamma1 + gamma2 = 1/6", c.gamma1 + c.gamma2, 1.0 / 6.0);
    relation("gamma = (5 - 18 gamma1)/24", c.gamma, (5.0 - 18.0 * c.gamma1) / 24.0);
    relation("delta2 - delta1 = 19/360 - gamma1/6", c.delta2 - c.delta1, 19.0 / 360.0 - c.gamma1 / 6.0);
    return r;
}

void require_valid(const CoefficientSet& c) {
    const auto report = validate_coefficients(c);
    if (const auto* f = report.first_failure()) throw ConstraintViolation(f->name, f->residual);
}

EnergyEquivalence energy_equivalence(const CoefficientSet& c) {
    return {std::min({1.0, c.gamma1, c.delta1}), std::max({1.0, c.gamma1, c.delta1})};
}

}  // namespace kdvbbm

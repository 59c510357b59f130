#include "kdvbbm/error.hpp"

#include <cstdio>

namespace kdvbbm {

namespace {
std::string describe(const std::string& invariant, double residual) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", residual);
    return "constraint violated: " + invariant + " (residual " + buf + ")";
}
}  // namespace

ConstraintViolation::ConstraintViolation(std::string invariant, double residual)
    : Error(describe(invariant, residual)), invariant_(std::move(invariant)), residual_(residual) {}

namespace {
std::string collapse_message(double t, double sigma, double threshold) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "sigma collapsed to %.6g below resolvable threshold %.6g at t=%.6g", sigma,
                  threshold, t);
    return buf;
}
}  // namespace

std::string format_quantity(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

StepCollapse::StepCollapse(double t, double sigma, double threshold)
    : Error(collapse_message(t, sigma, threshold)), t_(t) {}

}  // namespace kdvbbm

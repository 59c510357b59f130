#pragma once

#include <stdexcept>
#include <string>

namespace kdvbbm {

// Base of every error raised by the library. The CLI maps ConfigError and
// ConstraintViolation to the config exit code, everything else to runtime.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConstraintViolation : public Error {
public:
    ConstraintViolation(std::string invariant, double residual);
    const std::string& invariant() const noexcept { return invariant_; }
    double residual() const noexcept { return residual_; }

private:
    std::string invariant_;
    double residual_;
};

class NonFiniteInput : public Error { using Error::Error; };
class SymmetryViolation : public Error { using Error::Error; };
class GridMismatch : public Error { using Error::Error; };
class OverflowError : public Error { using Error::Error; };
class NoConvergence : public Error { using Error::Error; };
class QuadratureResolution : public Error { using Error::Error; };
class BlowUp : public Error { using Error::Error; };
class RangeError : public Error { using Error::Error; };

class StepCollapse : public Error {
public:
    StepCollapse(double t, double sigma, double threshold);
    double time() const noexcept { return t_; }

private:
    double t_;
};

class ConfigError : public Error { using Error::Error; };

/// Six significant digits, for numbers quoted in error messages.
std::string format_quantity(double x);

}  // namespace kdvbbm

#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oracle {

std::vector<cplx> direct_dft(const std::vector<double>& samples, double L) {
    const int n = static_cast<int>(samples.size());
    std::vector<cplx> out(samples.size());
    for (int i = 0; i < n; ++i) {
        const int k = i < n / 2 ? i : i - n;
        long double re = 0, im = 0;
        for (int j = 0; j < n; ++j) {
            const long double x = -L + 2.0L * L * j / n;
            const long double arg = -std::numbers::pi_v<long double> * k * x / L;
            re += samples[j] * std::cos(arg);
            im += samples[j] * std::sin(arg);
        }
        out[i] = cplx(static_cast<double>(re / n), static_cast<double>(im / n));
    }
    return out;
}

double synthesize(const SparseSpectrum& c, double L, double x) {
    long double acc = 0;
    for (const auto& [k, v] : c) {
        const long double arg = std::numbers::pi_v<long double> * k * x / L;
        acc += v.real() * std::cos(arg) - v.imag() * std::sin(arg);
    }
    return static_cast<double>(acc);
}

SparseSpectrum convolve(const SparseSpectrum& a, const SparseSpectrum& b) {
    SparseSpectrum out;
    for (const auto& [ka, va] : a)
        for (const auto& [kb, vb] : b) out[ka + kb] += va * vb;
    return out;
}

SparseSpectrum truncate(const SparseSpectrum& a, int n) {
    SparseSpectrum out;
    for (const auto& [k, v] : a)
        if (std::abs(k) < n / 2) out[k] = v;
    return out;
}

SparseSpectrum to_sparse(const kdvbbm::Spectrum& s) {
    SparseSpectrum out;
    const int n = s.grid()->n_modes();
    for (int i = 0; i < n; ++i)
        if (s[i] != cplx(0, 0)) out[i < n / 2 ? i : i - n] = s[i];
    return out;
}

double l2_quadrature(const std::vector<double>& samples, double L) {
    long double acc = 0;
    for (double f : samples) acc += static_cast<long double>(f) * f;
    return static_cast<double>(acc * 2.0L * L / samples.size());
}

double symbol(const std::string& kind, double xi, const kdvbbm::CoefficientSet& c) {
    const double x2 = xi * xi, x4 = x2 * x2;
    const double vphi = 1 + c.gamma1 * x2 + c.delta1 * x4;
    if (kind == "varphi") return vphi;
    if (kind == "phi") return xi * (1 - c.gamma2 * x2 + c.delta2 * x4) / vphi;
    if (kind == "psi") return xi / vphi;
    if (kind == "tau") return (3 * xi - 4 * c.gamma * xi * x2) / (4 * vphi);
    if (kind == "omega") return std::abs(xi) / (1 + x2);
    if (kind == "kappa") return (1 - c.gamma2 * x2 + c.delta2 * x4) / vphi;
    throw std::invalid_argument("unknown symbol " + kind);
}

double weighted_norm(const SparseSpectrum& c, double L, double sigma, double s) {
    long double acc = 0;
    for (const auto& [k, v] : c) {
        const long double br = 1.0L + std::abs(std::numbers::pi_v<long double> * k / L);
        acc += std::pow(br, 2.0L * s) * std::exp(2.0L * sigma * br) * std::norm(v);
    }
    return static_cast<double>(std::sqrt(2.0L * L * acc));
}

double central_derivative(const std::function<double(double)>& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i] / n, my += y[i] / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) sxx += (x[i] - mx) * (x[i] - mx), sxy += (x[i] - mx) * (y[i] - my);
    return sxy / sxx;
}

}  // namespace oracle

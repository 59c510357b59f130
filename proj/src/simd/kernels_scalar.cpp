#include "kdvbbm/simd/kernels.hpp"

namespace kdvbbm::simd {

namespace {

void scale_by_real(cplx* c, const double* m, std::size_t n) {
    auto* p = reinterpret_cast<double*>(c);
    for (std::size_t k = 0; k < n; ++k) {
        p[2 * k] *= m[k];
        p[2 * k + 1] *= m[k];
    }
}

void rotate(cplx* out, const cplx* in, const cplx* e, std::size_t n) {
    auto* o = reinterpret_cast<double*>(out);
    const auto* a = reinterpret_cast<const double*>(in);
    const auto* b = reinterpret_cast<const double*>(e);
    for (std::size_t k = 0; k < n; ++k) {
        const double ar = a[2 * k], ai = a[2 * k + 1];
        const double br = b[2 * k], bi = b[2 * k + 1];
        o[2 * k] = ar * br - ai * bi;
        o[2 * k + 1] = ai * br + ar * bi;
    }
}

double weighted_sum_sq(const cplx* c, const double* w, std::size_t n) {
    const auto* p = reinterpret_cast<const double*>(c);
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        acc += w[k] * (p[2 * k] * p[2 * k] + p[2 * k + 1] * p[2 * k + 1]);
    return acc;
}

void axpy(cplx* y, double a, const cplx* x, std::size_t n) {
    auto* yp = reinterpret_cast<double*>(y);
    const auto* xp = reinterpret_cast<const double*>(x);
    for (std::size_t j = 0; j < 2 * n; ++j) yp[j] += a * xp[j];
}

void mul(double* out, const double* a, const double* b, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) out[j] = a[j] * b[j];
}

void nonlinear_terms(const double* eta, const double* eta_x, double* sq, double* mix,
                     std::size_t n) {
    constexpr double c3 = 1.0 / 8.0;
    constexpr double cx = 7.0 / 48.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double e2 = eta[j] * eta[j];
        sq[j] = e2;
        mix[j] = c3 * (e2 * eta[j]) + cx * (eta_x[j] * eta_x[j]);
    }
}

constexpr KernelTable kTable{"scalar", scale_by_real, rotate, weighted_sum_sq,
                             axpy,     mul,           nonlinear_terms};

}  // namespace

const KernelTable& scalar_kernels() { return kTable; }

}  // namespace kdvbbm::simd

#pragma once

// Data-parallel inner loops of the spectral code. Each instruction set provides
// one KernelTable; active() picks the widest one the CPU supports at first use.
// Element-wise kernels are bitwise identical across tables (no FMA contraction);
// reductions may differ in summation order and agree to rounding.

#include <complex>
#include <cstddef>
#include <string_view>

namespace kdvbbm::simd {

using cplx = std::complex<double>;

struct KernelTable {
    const char* name;

    // c[k] *= m[k]
    void (*scale_by_real)(cplx* c, const double* m, std::size_t n);
    // out[k] = in[k] * e[k]; out may alias in.
    void (*rotate)(cplx* out, const cplx* in, const cplx* e, std::size_t n);
    // sum_k w[k] |c[k]|^2
    double (*weighted_sum_sq)(const cplx* c, const double* w, std::size_t n);
    // y[k] += a * x[k]
    void (*axpy)(cplx* y, double a, const cplx* x, std::size_t n);
    // out[j] = a[j] * b[j]; out may alias a or b.
    void (*mul)(double* out, const double* a, const double* b, std::size_t n);
    // sq[j] = eta^2, mix[j] = eta^3/8 + 7/48 eta_x^2 (the psi-weighted terms).
    void (*nonlinear_terms)(const double* eta, const double* eta_x, double* sq, double* mix,
                            std::size_t n);
};

const KernelTable& scalar_kernels();
// nullptr when the table was not compiled in or the CPU lacks the extension.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

// Selected once. KDVBBM_SIMD=scalar|avx2|neon forces a table when available.
const KernelTable& active();

}  // namespace kdvbbm::simd

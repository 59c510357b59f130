#include "kdvbbm/simd/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace kdvbbm::simd {

#if defined(__aarch64__)

namespace {

// One complex value per float64x2_t.

void scale_by_real(cplx* c, const double* m, std::size_t n) {
    auto* p = reinterpret_cast<double*>(c);
    for (std::size_t k = 0; k < n; ++k)
        vst1q_f64(p + 2 * k, vmulq_f64(vld1q_f64(p + 2 * k), vdupq_n_f64(m[k])));
}

inline float64x2_t complex_mul(float64x2_t a, float64x2_t b) {
    const float64x2_t b_re = vdupq_laneq_f64(b, 0);
    const float64x2_t b_im = vdupq_laneq_f64(b, 1);
    const float64x2_t a_sw = vextq_f64(a, a, 1);  // [ai, ar]
    const float64x2_t t1 = vmulq_f64(a, b_re);    // [ar br, ai br]
    const float64x2_t t2 = vmulq_f64(a_sw, b_im); // [ai bi, ar bi]
    const float64x2_t sign = {-1.0, 1.0};
    return vaddq_f64(t1, vmulq_f64(t2, sign));
}

void rotate(cplx* out, const cplx* in, const cplx* e, std::size_t n) {
    auto* o = reinterpret_cast<double*>(out);
    const auto* a = reinterpret_cast<const double*>(in);
    const auto* b = reinterpret_cast<const double*>(e);
    for (std::size_t k = 0; k < n; ++k)
        vst1q_f64(o + 2 * k, complex_mul(vld1q_f64(a + 2 * k), vld1q_f64(b + 2 * k)));
}

double weighted_sum_sq(const cplx* c, const double* w, std::size_t n) {
    const auto* p = reinterpret_cast<const double*>(c);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const float64x2_t v = vld1q_f64(p + 2 * k);
        acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(w[k]), vmulq_f64(v, v)));
    }
    return vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
}

void axpy(cplx* y, double a, const cplx* x, std::size_t n) {
    auto* yp = reinterpret_cast<double*>(y);
    const auto* xp = reinterpret_cast<const double*>(x);
    const float64x2_t av = vdupq_n_f64(a);
    for (std::size_t k = 0; k < n; ++k)
        vst1q_f64(yp + 2 * k, vaddq_f64(vld1q_f64(yp + 2 * k), vmulq_f64(av, vld1q_f64(xp + 2 * k))));
}

void mul(double* out, const double* a, const double* b, std::size_t n) {
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) vst1q_f64(out + j, vmulq_f64(vld1q_f64(a + j), vld1q_f64(b + j)));
    for (; j < n; ++j) out[j] = a[j] * b[j];
}

void nonlinear_terms(const double* eta, const double* eta_x, double* sq, double* mix,
                     std::size_t n) {
    const float64x2_t v3 = vdupq_n_f64(1.0 / 8.0);
    const float64x2_t vx = vdupq_n_f64(7.0 / 48.0);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const float64x2_t e = vld1q_f64(eta + j);
        const float64x2_t d = vld1q_f64(eta_x + j);
        const float64x2_t e2 = vmulq_f64(e, e);
        vst1q_f64(sq + j, e2);
        vst1q_f64(mix + j, vaddq_f64(vmulq_f64(v3, vmulq_f64(e2, e)), vmulq_f64(vx, vmulq_f64(d, d))));
    }
    for (; j < n; ++j) {
        const double e2 = eta[j] * eta[j];
        sq[j] = e2;
        mix[j] = (1.0 / 8.0) * (e2 * eta[j]) + (7.0 / 48.0) * (eta_x[j] * eta_x[j]);
    }
}

constexpr KernelTable kTable{"neon", scale_by_real, rotate, weighted_sum_sq,
                             axpy,   mul,           nonlinear_terms};

}  // namespace

const KernelTable* neon_kernels() { return &kTable; }

#else

const KernelTable* neon_kernels() { return nullptr; }

#endif

}  // namespace kdvbbm::simd

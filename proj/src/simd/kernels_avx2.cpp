#include "kdvbbm/simd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define KDVBBM_HAVE_AVX2_TABLE 1
#endif

namespace kdvbbm::simd {

#if KDVBBM_HAVE_AVX2_TABLE

#define KDVBBM_AVX2 __attribute__((target("avx2,fma")))

namespace {

KDVBBM_AVX2 void scale_by_real(cplx* c, const double* m, std::size_t n) {
    auto* p = reinterpret_cast<double*>(c);
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        // [m0, m0, m1, m1]
        const __m256d w = _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(m + k)), 0x50);
        _mm256_storeu_pd(p + 2 * k, _mm256_mul_pd(_mm256_loadu_pd(p + 2 * k), w));
    }
    for (; k < n; ++k) {
        p[2 * k] *= m[k];
        p[2 * k + 1] *= m[k];
    }
}

KDVBBM_AVX2 inline __m256d complex_mul(__m256d a, __m256d b) {
    const __m256d b_re = _mm256_movedup_pd(b);
    const __m256d b_im = _mm256_permute_pd(b, 0xF);
    const __m256d a_sw = _mm256_permute_pd(a, 0x5);
    return _mm256_addsub_pd(_mm256_mul_pd(a, b_re), _mm256_mul_pd(a_sw, b_im));
}

KDVBBM_AVX2 void rotate(cplx* out, const cplx* in, const cplx* e, std::size_t n) {
    auto* o = reinterpret_cast<double*>(out);
    const auto* a = reinterpret_cast<const double*>(in);
    const auto* b = reinterpret_cast<const double*>(e);
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2)
        _mm256_storeu_pd(o + 2 * k,
                         complex_mul(_mm256_loadu_pd(a + 2 * k), _mm256_loadu_pd(b + 2 * k)));
    for (; k < n; ++k) {
        const double ar = a[2 * k], ai = a[2 * k + 1];
        const double br = b[2 * k], bi = b[2 * k + 1];
        o[2 * k] = ar * br - ai * bi;
        o[2 * k + 1] = ai * br + ar * bi;
    }
}

KDVBBM_AVX2 double weighted_sum_sq(const cplx* c, const double* w, std::size_t n) {
    const auto* p = reinterpret_cast<const double*>(c);
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d w01 = _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(w + k)), 0x50);
        const __m256d w23 =
            _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(w + k + 2)), 0x50);
        const __m256d v0 = _mm256_loadu_pd(p + 2 * k);
        const __m256d v1 = _mm256_loadu_pd(p + 2 * k + 4);
        acc0 = _mm256_fmadd_pd(w01, _mm256_mul_pd(v0, v0), acc0);
        acc1 = _mm256_fmadd_pd(w23, _mm256_mul_pd(v1, v1), acc1);
    }
    const __m256d acc = _mm256_add_pd(acc0, acc1);
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    const __m128d s2 = _mm_add_pd(lo, hi);
    double total = _mm_cvtsd_f64(_mm_add_sd(s2, _mm_unpackhi_pd(s2, s2)));
    for (; k < n; ++k) total += w[k] * (p[2 * k] * p[2 * k] + p[2 * k + 1] * p[2 * k + 1]);
    return total;
}

KDVBBM_AVX2 void axpy(cplx* y, double a, const cplx* x, std::size_t n) {
    auto* yp = reinterpret_cast<double*>(y);
    const auto* xp = reinterpret_cast<const double*>(x);
    const std::size_t m = 2 * n;
    const __m256d av = _mm256_set1_pd(a);
    std::size_t j = 0;
    for (; j + 4 <= m; j += 4)
        _mm256_storeu_pd(yp + j, _mm256_add_pd(_mm256_loadu_pd(yp + j),
                                               _mm256_mul_pd(av, _mm256_loadu_pd(xp + j))));
    for (; j < m; ++j) yp[j] += a * xp[j];
}

KDVBBM_AVX2 void mul(double* out, const double* a, const double* b, std::size_t n) {
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4)
        _mm256_storeu_pd(out + j, _mm256_mul_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j)));
    for (; j < n; ++j) out[j] = a[j] * b[j];
}

KDVBBM_AVX2 void nonlinear_terms(const double* eta, const double* eta_x, double* sq,
                                 double* mix, std::size_t n) {
    constexpr double c3 = 1.0 / 8.0;
    constexpr double cx = 7.0 / 48.0;
    const __m256d v3 = _mm256_set1_pd(c3);
    const __m256d vx = _mm256_set1_pd(cx);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d e = _mm256_loadu_pd(eta + j);
        const __m256d d = _mm256_loadu_pd(eta_x + j);
        const __m256d e2 = _mm256_mul_pd(e, e);
        _mm256_storeu_pd(sq + j, e2);
        const __m256d cubic = _mm256_mul_pd(v3, _mm256_mul_pd(e2, e));
        const __m256d grad = _mm256_mul_pd(vx, _mm256_mul_pd(d, d));
        _mm256_storeu_pd(mix + j, _mm256_add_pd(cubic, grad));
    }
    for (; j < n; ++j) {
        const double e2 = eta[j] * eta[j];
        sq[j] = e2;
        mix[j] = c3 * (e2 * eta[j]) + cx * (eta_x[j] * eta_x[j]);
    }
}

constexpr KernelTable kTable{"avx2", scale_by_real, rotate, weighted_sum_sq,
                             axpy,   mul,           nonlinear_terms};

}  // namespace

const KernelTable* avx2_kernels() {
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return supported ? &kTable : nullptr;
}

#else

const KernelTable* avx2_kernels() { return nullptr; }

#endif

}  // namespace kdvbbm::simd

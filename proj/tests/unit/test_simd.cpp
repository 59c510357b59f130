#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "kdvbbm/simd/kernels.hpp"

using namespace kdvbbm::simd;

namespace {

// Lengths hit empty input, pure tails, one full vector and long runs with tails.
constexpr std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 17, 64, 255, 1000, 1023};

struct Data {
    std::vector<double> r1, r2, w;
    std::vector<cplx> c1, c2;
};

Data make_data(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    Data d;
    // One spare slot so callers can run on a misaligned view starting at index 1.
    for (std::size_t i = 0; i < n + 1; ++i) {
        d.r1.push_back(u(rng));
        d.r2.push_back(u(rng));
        d.w.push_back(std::abs(u(rng)));
        d.c1.emplace_back(u(rng), u(rng));
        d.c2.emplace_back(u(rng), u(rng));
    }
    return d;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}
bool same_bits(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0;
}

std::vector<const KernelTable*> wide_tables() {
    std::vector<const KernelTable*> out;
    if (auto* t = avx2_kernels()) out.push_back(t);
    if (auto* t = neon_kernels()) out.push_back(t);
    return out;
}

void check_against_scalar(const KernelTable& wide) {
    const KernelTable& ref = scalar_kernels();
    for (std::size_t n : kLengths) {
        for (std::size_t off : {std::size_t{0}, std::size_t{1}}) {
            CAPTURE(n);
            CAPTURE(off);
            const Data d = make_data(n, static_cast<unsigned>(7 * n + off));

            auto a = d.c1, b = d.c1;
            ref.scale_by_real(a.data() + off, d.w.data() + off, n);
            wide.scale_by_real(b.data() + off, d.w.data() + off, n);
            CHECK(same_bits(a, b));

            a = d.c1, b = d.c1;
            ref.rotate(a.data() + off, d.c1.data() + off, d.c2.data() + off, n);
            wide.rotate(b.data() + off, d.c1.data() + off, d.c2.data() + off, n);
            CHECK(same_bits(a, b));
            auto in_place = d.c1;
            wide.rotate(in_place.data() + off, in_place.data() + off, d.c2.data() + off, n);
            CHECK(same_bits(in_place, b));

            a = d.c1, b = d.c1;
            ref.axpy(a.data() + off, -0.37, d.c2.data() + off, n);
            wide.axpy(b.data() + off, -0.37, d.c2.data() + off, n);
            CHECK(same_bits(a, b));

            auto x = d.r1, y = d.r1;
            ref.mul(x.data() + off, d.r1.data() + off, d.r2.data() + off, n);
            wide.mul(y.data() + off, d.r1.data() + off, d.r2.data() + off, n);
            CHECK(same_bits(x, y));

            std::vector<double> sq_a(n + 1, 0.0), mix_a(n + 1, 0.0), sq_b(n + 1, 0.0), mix_b(n + 1, 0.0);
            ref.nonlinear_terms(d.r1.data() + off, d.r2.data() + off, sq_a.data() + off, mix_a.data() + off, n);
            wide.nonlinear_terms(d.r1.data() + off, d.r2.data() + off, sq_b.data() + off, mix_b.data() + off, n);
            CHECK(same_bits(sq_a, sq_b));
            CHECK(same_bits(mix_a, mix_b));

            const double s_ref = ref.weighted_sum_sq(d.c1.data() + off, d.w.data() + off, n);
            const double s_wide = wide.weighted_sum_sq(d.c1.data() + off, d.w.data() + off, n);
            CHECK(s_wide == doctest::Approx(s_ref).epsilon(1e-14));
        }
    }
}

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("scalar kernels match direct formulas") {
    const KernelTable& k = scalar_kernels();
    CHECK(std::string(k.name) == "scalar");
    const std::size_t n = 37;
    const Data d = make_data(n, 11);

    auto c = d.c1;
    k.scale_by_real(c.data(), d.w.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(c[i] == d.c1[i] * d.w[i]);

    k.rotate(c.data(), d.c1.data(), d.c2.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
        const double re = d.c1[i].real() * d.c2[i].real() - d.c1[i].imag() * d.c2[i].imag();
        const double im = d.c1[i].real() * d.c2[i].imag() + d.c1[i].imag() * d.c2[i].real();
        CHECK(c[i].real() == doctest::Approx(re).epsilon(1e-15));
        CHECK(c[i].imag() == doctest::Approx(im).epsilon(1e-15));
    }

    c = d.c1;
    k.axpy(c.data(), 2.5, d.c2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(c[i] == d.c1[i] + 2.5 * d.c2[i]);

    std::vector<double> out(n), sq(n), mix(n);
    k.mul(out.data(), d.r1.data(), d.r2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(out[i] == d.r1[i] * d.r2[i]);

    k.nonlinear_terms(d.r1.data(), d.r2.data(), sq.data(), mix.data(), n);
    long double sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const long double e = d.r1[i], ex = d.r2[i];
        CHECK(sq[i] == doctest::Approx(static_cast<double>(e * e)).epsilon(1e-15));
        CHECK(mix[i] == doctest::Approx(static_cast<double>(e * e * e / 8 + 7 * ex * ex / 48)).epsilon(1e-14));
        sum += static_cast<long double>(d.w[i]) * std::norm(std::complex<long double>(d.c1[i]));
    }
    CHECK(k.weighted_sum_sq(d.c1.data(), d.w.data(), n) == doctest::Approx(static_cast<double>(sum)).epsilon(1e-14));
    CHECK(k.weighted_sum_sq(nullptr, nullptr, 0) == 0.0);
}

TEST_CASE("wide kernels agree with scalar kernels") {
    const auto tables = wide_tables();
    if (tables.empty()) MESSAGE("no wide kernel table on this CPU; only scalar kernels are exercised");
    for (const KernelTable* t : tables) {
        CAPTURE(t->name);
        check_against_scalar(*t);
    }
}

TEST_CASE("active table honours KDVBBM_SIMD") {
    const KernelTable& a = active();
    CHECK(&active() == &a);
    const char* forced = std::getenv("KDVBBM_SIMD");
    if (forced && std::string(forced) == "scalar") {
        CHECK(&a == &scalar_kernels());
    } else if (!forced) {
        // Without an override the widest available table wins.
        const auto tables = wide_tables();
        if (!tables.empty()) CHECK(&a == tables.front());
        else CHECK(&a == &scalar_kernels());
    }
}

}

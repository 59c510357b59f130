#include "kdvbbm/spectral.hpp"

#include <cmath>
#include <ostream>

#include "kdvbbm/error.hpp"
#include "kdvbbm/fft.hpp"
#include "kdvbbm/simd/kernels.hpp"

namespace kdvbbm {

namespace {
// Grid points start at x = -L, which multiplies mode k by (-1)^k relative to
// the plain DFT.
inline double parity(int k) { return (k & 1) ? -1.0 : 1.0; }
}  // namespace

void to_physical(const Spectrum& s, int m, std::span<double> out) {
    const int n = s.grid()->n_modes();
    thread_local std::vector<cplx> half;
    half.assign(static_cast<std::size_t>(m / 2 + 1), cplx{});
    for (int k = 0; k < n / 2; ++k) half[static_cast<std::size_t>(k)] = parity(k) * s.at(k);
    const cplx nyq = s.at(-n / 2);
    half[static_cast<std::size_t>(n / 2)] = parity(n / 2) * (m == n ? nyq : 0.5 * nyq.real());
    thread_fft(m).inverse(half, out);
}

void from_physical(std::span<const double> samples, Spectrum& s) {
    const int m = static_cast<int>(samples.size());
    const int n = s.grid()->n_modes();
    thread_local std::vector<cplx> half;
    half.resize(static_cast<std::size_t>(m / 2 + 1));
    thread_fft(m).forward(samples, half);
    const double inv = 1.0 / m;
    s.at(0) = cplx(half[0].real() * inv, 0.0);
    for (int k = 1; k < n / 2; ++k) {
        const cplx c = parity(k) * inv * half[static_cast<std::size_t>(k)];
        s.at(k) = c;
        s.at(-k) = std::conj(c);
    }
    s.at(-n / 2) = m == n ? cplx(parity(n / 2) * inv * half[static_cast<std::size_t>(n / 2)].real(), 0.0)
                          : cplx{};
}

Spectrum transform_forward(const RealField& f) {
    for (double v : f.samples())
        if (!std::isfinite(v)) throw NonFiniteInput("transform_forward: non-finite sample");
    Spectrum s(f.grid());
    from_physical(f.samples(), s);
    return s;
}

RealField transform_inverse(const Spectrum& s) {
    if (!s.all_finite()) throw NonFiniteInput("transform_inverse: non-finite coefficient");
    const double defect = s.hermitian_defect();
    if (defect > kSymmetryTol)
        throw SymmetryViolation("spectrum is not Hermitian (relative defect " + format_quantity(defect) + ")");
    std::vector<double> out(s.size());
    to_physical(s, s.grid()->n_modes(), out);
    return RealField(s.grid(), std::move(out));
}

void zero_nyquist(Spectrum& s) { s[static_cast<std::size_t>(s.grid()->nyquist_index())] = cplx{}; }

Spectrum apply_table(std::span<const double> table, const Spectrum& s) {
    Spectrum out = s;
    simd::active().scale_by_real(out.coeffs().data(), table.data(), out.size());
    zero_nyquist(out);
    return out;
}

Spectrum apply_multiplier(SymbolKind kind, const Spectrum& s, const CoefficientSet& c) {
    return apply_table(symbol_table(kind, *s.grid(), c), s);
}

Spectrum spatial_derivative(const Spectrum& s) {
    Spectrum out = s;
    const auto xi = s.grid()->xi();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= cplx(0.0, xi[i]);
    zero_nyquist(out);
    return out;
}

Spectrum dealiased_product(std::span<const Spectrum* const> factors) {
    if (factors.size() < 2 || factors.size() > 3)
        throw RangeError("dealiased_product takes 2 or 3 factors");
    const auto& grid = factors[0]->grid();
    for (const auto* f : factors)
        if (!same_grid(grid, f->grid())) throw GridMismatch("dealiased_product: factors on different grids");
    const int m = 2 * grid->n_modes();
    const auto& k = simd::active();
    std::vector<double> acc(static_cast<std::size_t>(m)), tmp(acc.size());
    to_physical(*factors[0], m, acc);
    for (std::size_t i = 1; i < factors.size(); ++i) {
        to_physical(*factors[i], m, tmp);
        k.mul(acc.data(), acc.data(), tmp.data(), acc.size());
    }
    Spectrum out(grid);
    from_physical(acc, out);
    return out;
}

Spectrum dealiased_product(const Spectrum& a, const Spectrum& b) {
    const Spectrum* f[] = {&a, &b};
    return dealiased_product(f);
}

Spectrum dealiased_product(const Spectrum& a, const Spectrum& b, const Spectrum& c) {
    const Spectrum* f[] = {&a, &b, &c};
    return dealiased_product(f);
}

void write_spectrum_csv(std::ostream& os, const Spectrum& s) {
    const auto& g = *s.grid();
    os << "k,xi,re,im,abs\n";
    char buf[160];
    for (int k = -g.n_modes() / 2; k < g.n_modes() / 2; ++k) {
        const cplx c = s.at(k);
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", k, g.xi(g.index_of(k)), c.real(),
                      c.imag(), std::abs(c));
        os << buf;
    }
}

}  // namespace kdvbbm

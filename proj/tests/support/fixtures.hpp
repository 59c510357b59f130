#pragma once

// Small builders shared by the unit tests.

#include <cmath>
#include <random>

#include "kdvbbm/grid.hpp"

namespace fixture {

/// Real-field spectrum with random coefficients on 1 <= |k| <= kmax (and a
/// real mean), magnitudes scaled by exp(-decay |k|).
inline kdvbbm::Spectrum random_spectrum(const kdvbbm::GridPtr& g, int kmax, unsigned seed, double decay = 0.0,
                                        double scale = 1.0) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd;
    kdvbbm::Spectrum s(g);
    s.at(0) = scale * nd(rng);
    for (int k = 1; k <= kmax; ++k) {
        const kdvbbm::cplx c = scale * std::exp(-decay * k) * kdvbbm::cplx(nd(rng), nd(rng));
        s.at(k) = c;
        s.at(-k) = std::conj(c);
    }
    return s;
}

inline kdvbbm::Spectrum cos_mode(const kdvbbm::GridPtr& g, int k, double amplitude = 1.0) {
    kdvbbm::Spectrum s(g);
    s.at(k) = s.at(-k) = 0.5 * amplitude;
    return s;
}

inline std::vector<double> random_samples(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

inline double max_abs_diff(const kdvbbm::Spectrum& a, const kdvbbm::Spectrum& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace fixture

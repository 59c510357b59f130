#include "kdvbbm/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace kdvbbm {

namespace {
// FFTW's planner is not reentrant; execution on distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

RealFft::RealFft(int n) : n_(n) {
    std::lock_guard lock(planner_mutex());
    real_ = fftw_alloc_real(static_cast<std::size_t>(n));
    auto* half = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
    half_ = half;
    plan_fwd_ = fftw_plan_dft_r2c_1d(n, real_, half, FFTW_ESTIMATE);
    plan_inv_ = fftw_plan_dft_c2r_1d(n, half, real_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
    fftw_free(real_);
    fftw_free(half_);
}

void RealFft::forward(std::span<const double> in, std::span<std::complex<double>> out) {
    std::copy(in.begin(), in.end(), real_);
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    const auto* h = reinterpret_cast<const std::complex<double>*>(half_);
    std::copy(h, h + n_ / 2 + 1, out.begin());
}

void RealFft::inverse(std::span<const std::complex<double>> in, std::span<double> out) {
    auto* h = reinterpret_cast<std::complex<double>*>(half_);
    std::copy(in.begin(), in.begin() + n_ / 2 + 1, h);
    fftw_execute(static_cast<fftw_plan>(plan_inv_));
    std::copy(real_, real_ + n_, out.begin());
}

RealFft& thread_fft(int n) {
    thread_local std::map<int, std::unique_ptr<RealFft>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<RealFft>(n);
    return *slot;
}

}  // namespace kdvbbm

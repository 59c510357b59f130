#pragma once

#include <complex>
#include <span>

namespace kdvbbm {

/// Real-to-half-complex DFT of fixed size backed by FFTW. Not thread-safe:
/// use thread_fft() to get the calling thread's instance.
class RealFft {
public:
    explicit RealFft(int n);
    ~RealFft();
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

    int size() const { return n_; }

    /// out[k] = sum_j in[j] exp(-2 pi i j k / n), k = 0..n/2.
    void forward(std::span<const double> in, std::span<std::complex<double>> out);
    /// out[j] = sum over the Hermitian extension of in (n/2+1 entries),
    /// unnormalized. The imaginary parts of in[0] and in[n/2] are ignored.
    void inverse(std::span<const std::complex<double>> in, std::span<double> out);

private:
    int n_;
    double* real_;
    void* half_;
    void* plan_fwd_;
    void* plan_inv_;
};

RealFft& thread_fft(int n);

}  // namespace kdvbbm

#include <cstdlib>
#include <string_view>

#include "kdvbbm/simd/kernels.hpp"

namespace kdvbbm::simd {

namespace {

const KernelTable& select() {
    const char* env = std::getenv("KDVBBM_SIMD");
    const std::string_view want = env ? env : "";
    if (want == "scalar") return scalar_kernels();
    if (want == "avx2" && avx2_kernels()) return *avx2_kernels();
    if (want == "neon" && neon_kernels()) return *neon_kernels();
    if (const auto* t = avx2_kernels()) return *t;
    if (const auto* t = neon_kernels()) return *t;
    return scalar_kernels();
}

}  // namespace

const KernelTable& active() {
    static const KernelTable& table = select();
    return table;
}

}  // namespace kdvbbm::simd

#include "coneadapt/kernels.hpp"

namespace coneadapt::kernels {

#if defined(CONEADAPT_WITH_AVX2)
const Backend* detail_avx2_backend();  // defined in kernels_avx2.cpp
#endif

const Backend* avx2_backend_if_available() {
#if defined(CONEADAPT_WITH_AVX2) && (defined(__x86_64__) || defined(_M_X64))
    static const Backend* backend = __builtin_cpu_supports("avx2") ? detail_avx2_backend() : nullptr;
    return backend;
#else
    return nullptr;
#endif
}

const Backend& active_backend() {
    static const Backend& backend = [] () -> const Backend& {
        if (const Backend* avx2 = avx2_backend_if_available()) return *avx2;
        return scalar_backend();
    }();
    return backend;
}

}  // namespace coneadapt::kernels

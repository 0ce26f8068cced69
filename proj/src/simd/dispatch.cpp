#include <cstdlib>
#include <string_view>

#include "tablegrid/simd/kernels.hpp"

namespace tablegrid::simd {

#if defined(TABLEGRID_HAS_AVX2)
const KernelTable& avx2_kernel_table();
#endif

const KernelTable* avx2_kernels() {
#if defined(TABLEGRID_HAS_AVX2)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  if (supported) return &avx2_kernel_table();
#endif
  return nullptr;
}

const KernelTable& active_kernels() {
  static const KernelTable& chosen = []() -> const KernelTable& {
    const char* force = std::getenv("TABLEGRID_SIMD");
    if (force != nullptr && std::string_view(force) == "scalar") return scalar_kernels();
    if (const KernelTable* t = avx2_kernels()) return *t;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace tablegrid::simd

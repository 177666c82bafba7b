#include <cstdlib>
#include <string_view>

#include "ctcompand/kernels.hpp"

namespace ctc::kernels {

#if defined(CTCOMPAND_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

const KernelTable* avx2() {
#if defined(CTCOMPAND_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable* chosen = [] {
    const char* env = std::getenv("CT_COMPAND_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") return &scalar();
    if (const KernelTable* t = avx2()) return t;
    return &scalar();
  }();
  return *chosen;
}

}  // namespace ctc::kernels

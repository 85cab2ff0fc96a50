#include <cstdlib>
#include <string_view>

#include "kernel_impls.hpp"
#include "ptrie/kernels.hpp"

namespace ptrie::kernels {

const KernelTable* avx2_table() noexcept {
#if defined(PTRIE_HAVE_AVX2_KERNELS)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &detail::avx2_table_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept {
  static const KernelTable* table = [] {
    const char* env = std::getenv("PTRIE_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return &scalar_table();
    if (const KernelTable* t = avx2_table()) return t;
    return &scalar_table();
  }();
  return *table;
}

}  // namespace ptrie::kernels

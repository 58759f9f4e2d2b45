#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace penair::kernels {
namespace {

bool force_scalar() {
  const char* env = std::getenv("PENAIR_FORCE_SCALAR");
  return env != nullptr && std::string_view(env) != "" && std::string_view(env) != "0";
}

}  // namespace

const KernelSet* avx2() {
#if defined(PENAIR_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
  return supported ? &detail::avx2_set() : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& active() {
  static const KernelSet* chosen = [] {
    if (force_scalar()) return &scalar();
    if (const KernelSet* set = avx2()) return set;
    return &scalar();
  }();
  return *chosen;
}

}  // namespace penair::kernels

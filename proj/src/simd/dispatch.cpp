#include <cstdlib>
#include <cstring>

#include "fracstoch/simd/kernels.hpp"
#include "kernels_internal.hpp"

namespace fracstoch::simd {

std::string to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

const Kernels* avx2_kernels() {
#if defined(FRACSTOCH_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &detail::avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const Kernels& kernels() {
  static const Kernels* chosen = [] {
    const char* force = std::getenv("FRACSTOCH_SIMD");
    if (force != nullptr && std::strcmp(force, "scalar") == 0) return &scalar_kernels();
    const Kernels* wide = avx2_kernels();
    return wide != nullptr ? wide : &scalar_kernels();
  }();
  return *chosen;
}

}  // namespace fracstoch::simd

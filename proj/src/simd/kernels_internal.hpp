#pragma once

#include "fracstoch/simd/kernels.hpp"

namespace fracstoch::simd::detail {

/// Defined in the AVX2 translation unit; only call after a CPU check.
const Kernels& avx2_table();

}  // namespace fracstoch::simd::detail

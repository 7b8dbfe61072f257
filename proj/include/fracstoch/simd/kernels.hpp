#pragma once

#include <cstddef>
#include <string>
#include <utility>

namespace fracstoch::simd {

enum class Isa { Scalar, Avx2 };

std::string to_string(Isa isa);

/// Batched kernels of the Monte Carlo hot loops. Every variant consumes the
/// same inputs and agrees with the scalar reference to rounding.
struct Kernels {
  Isa isa;

  /// Standard positive α-stable variates, E e^{−sS} = e^{−s^α}, from
  /// uniforms u ∈ (0,1) (angle πu) and v ∈ (0,1) (exponential −log v).
  void (*positive_stable)(double alpha, const double* u, const double* v, double* out, std::size_t n);

  /// out[i] += coef · base[i]^expo · s[i]; base[i] = 0 contributes 0.
  void (*scaled_power_accumulate)(double coef, double expo, const double* base, const double* s, double* out,
                                  std::size_t n);

  /// (Σ e^{−z v[i]}, Σ e^{−2z v[i]}).
  std::pair<double, double> (*laplace_sums)(double z, const double* v, std::size_t n);
};

const Kernels& scalar_kernels();

/// nullptr when the AVX2 variant is not compiled in or the CPU lacks AVX2/FMA.
const Kernels* avx2_kernels();

/// The dispatched set: AVX2 when available unless FRACSTOCH_SIMD=scalar.
const Kernels& kernels();

}  // namespace fracstoch::simd

#include <cmath>
#include <numbers>

#include "fracstoch/simd/kernels.hpp"
#include "kernels_internal.hpp"

namespace fracstoch::simd {

namespace {

double log_sinpi(double y) { return std::log(std::sin(std::numbers::pi * std::min(y, 1.0 - y))); }

void positive_stable(double alpha, const double* u, const double* v, double* out, std::size_t n) {
  if (alpha == 1.0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = 1.0;
    return;
  }
  const double inv = 1.0 / alpha;
  const double tail = (1.0 - alpha) * inv;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = u[i];
    const double log_e = std::log(-std::log(v[i]));
    const double ls = log_sinpi(alpha * x) - inv * log_sinpi(x) + tail * (log_sinpi((1.0 - alpha) * x) - log_e);
    out[i] = std::exp(ls);
  }
}

void scaled_power_accumulate(double coef, double expo, const double* base, const double* s, double* out,
                             std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (base[i] > 0.0) out[i] += coef * std::exp(expo * std::log(base[i])) * s[i];
  }
}

std::pair<double, double> laplace_sums(double z, const double* v, std::size_t n) {
  double a = 0.0, b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = std::exp(-z * v[i]);
    a += e;
    b += e * e;
  }
  return {a, b};
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{Isa::Scalar, positive_stable, scaled_power_accumulate, laplace_sums};
  return k;
}

}  // namespace fracstoch::simd

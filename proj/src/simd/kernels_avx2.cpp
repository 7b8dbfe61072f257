// Compiled with -mavx2 -mfma; reached only through the runtime dispatch.

#include <immintrin.h>

#include <cmath>
#include <cstdint>
#include <numbers>

#include "kernels_internal.hpp"

namespace fracstoch::simd {

namespace {

inline __m256d set1(double v) { return _mm256_set1_pd(v); }

/// e^x, Cody-Waite reduction and a degree-13 Taylor polynomial; x clamped to
/// the normal range.
inline __m256d exp_pd(__m256d x) {
  x = _mm256_min_pd(_mm256_max_pd(x, set1(-708.0)), set1(709.0));
  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, set1(std::numbers::log2e)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, set1(6.93147180369123816490e-01), x);
  r = _mm256_fnmadd_pd(n, set1(1.90821492927058770002e-10), r);
  static constexpr double inv_fact[] = {
      1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0, 1.0 / 362880.0,
      1.0 / 40320.0,      1.0 / 5040.0,      1.0 / 720.0,      1.0 / 120.0,     1.0 / 24.0,
      1.0 / 6.0,          0.5,               1.0,              1.0};
  __m256d p = set1(inv_fact[0]);
  for (int k = 1; k < 14; ++k) p = _mm256_fmadd_pd(p, r, set1(inv_fact[k]));
  const __m128i ni = _mm256_cvtpd_epi32(n);
  __m256i bits = _mm256_add_epi64(_mm256_cvtepi32_epi64(ni), _mm256_set1_epi64x(1023));
  bits = _mm256_slli_epi64(bits, 52);
  return _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
}

/// ln x for positive normal x: x = m 2^e with m ∈ [√½, √2), then
/// ln m = 2 atanh((m−1)/(m+1)) by its odd series through f^23.
inline __m256d log_pd(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i exp_bits = _mm256_srli_epi64(bits, 52);
  const __m256i mant_bits =
      _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
                      _mm256_set1_epi64x(0x3FF0000000000000LL));
  __m256d m = _mm256_castsi256_pd(mant_bits);
  // Exponent as double via the 2^52 magic: (2^52 + e) − (2^52 + 1023).
  __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(exp_bits, _mm256_castpd_si256(set1(4503599627370496.0)))),
                            set1(4503599627370496.0 + 1023.0));
  const __m256d big = _mm256_cmp_pd(m, set1(std::numbers::sqrt2), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, set1(0.5)), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, set1(1.0)));
  const __m256d f = _mm256_div_pd(_mm256_sub_pd(m, set1(1.0)), _mm256_add_pd(m, set1(1.0)));
  const __m256d f2 = _mm256_mul_pd(f, f);
  __m256d p = set1(1.0 / 23.0);
  for (int k = 21; k >= 1; k -= 2) p = _mm256_fmadd_pd(p, f2, set1(1.0 / k));
  const __m256d lnm = _mm256_mul_pd(_mm256_mul_pd(set1(2.0), f), p);
  return _mm256_fmadd_pd(e, set1(6.93147180369123816490e-01),
                         _mm256_fmadd_pd(e, set1(1.90821492927058770002e-10), lnm));
}

/// sin(πy) for y ∈ [0,1] via reflection to [0, ½] and, above ¼, the
/// cosine of the complement; Taylor polynomials on [0, π/4].
inline __m256d sinpi_pd(__m256d y) {
  y = _mm256_min_pd(y, _mm256_sub_pd(set1(1.0), y));
  const __m256d upper = _mm256_cmp_pd(y, set1(0.25), _CMP_GT_OQ);
  const __m256d z = _mm256_mul_pd(_mm256_blendv_pd(y, _mm256_sub_pd(set1(0.5), y), upper), set1(std::numbers::pi));
  const __m256d z2 = _mm256_mul_pd(z, z);
  // sin z = z Σ (−1)^k z^{2k}/(2k+1)!, k ≤ 9
  static constexpr double sc[] = {-1.0 / 121645100408832000.0, 1.0 / 355687428096000.0, -1.0 / 1307674368000.0,
                                  1.0 / 6227020800.0,          -1.0 / 39916800.0,        1.0 / 362880.0,
                                  -1.0 / 5040.0,               1.0 / 120.0,              -1.0 / 6.0,
                                  1.0};
  // cos z = Σ (−1)^k z^{2k}/(2k)!, k ≤ 9
  static constexpr double cc[] = {-1.0 / 6402373705728000.0, 1.0 / 20922789888000.0, -1.0 / 87178291200.0,
                                  1.0 / 479001600.0,          -1.0 / 3628800.0,      1.0 / 40320.0,
                                  -1.0 / 720.0,               1.0 / 24.0,            -0.5,
                                  1.0};
  __m256d ps = set1(sc[0]);
  __m256d pc = set1(cc[0]);
  for (int k = 1; k < 10; ++k) {
    ps = _mm256_fmadd_pd(ps, z2, set1(sc[k]));
    pc = _mm256_fmadd_pd(pc, z2, set1(cc[k]));
  }
  ps = _mm256_mul_pd(ps, z);
  return _mm256_blendv_pd(ps, pc, upper);
}

void positive_stable(double alpha, const double* u, const double* v, double* out, std::size_t n) {
  if (alpha == 1.0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = 1.0;
    return;
  }
  const double inv = 1.0 / alpha;
  const double tail = (1.0 - alpha) * inv;
  const __m256d va = set1(alpha), vb = set1(1.0 - alpha), vinv = set1(inv), vtail = set1(tail);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(u + i);
    const __m256d log_e = log_pd(_mm256_sub_pd(_mm256_setzero_pd(), log_pd(_mm256_loadu_pd(v + i))));
    const __m256d a = log_pd(sinpi_pd(_mm256_mul_pd(va, x)));
    const __m256d b = log_pd(sinpi_pd(x));
    const __m256d c = log_pd(sinpi_pd(_mm256_mul_pd(vb, x)));
    const __m256d ls = _mm256_fmadd_pd(vtail, _mm256_sub_pd(c, log_e), _mm256_fnmadd_pd(vinv, b, a));
    _mm256_storeu_pd(out + i, exp_pd(ls));
  }
  if (i < n) {
    double tu[4] = {0.5, 0.5, 0.5, 0.5}, tv[4] = {0.5, 0.5, 0.5, 0.5}, to[4];
    for (std::size_t k = 0; k < n - i; ++k) {
      tu[k] = u[i + k];
      tv[k] = v[i + k];
    }
    positive_stable(alpha, tu, tv, to, 4);
    for (std::size_t k = 0; k < n - i; ++k) out[i + k] = to[k];
  }
}

void scaled_power_accumulate(double coef, double expo, const double* base, const double* s, double* out,
                             std::size_t n) {
  const __m256d vc = set1(coef), ve = set1(expo), zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d b = _mm256_loadu_pd(base + i);
    const __m256d positive = _mm256_cmp_pd(b, zero, _CMP_GT_OQ);
    const __m256d safe = _mm256_blendv_pd(set1(1.0), b, positive);
    const __m256d pw = exp_pd(_mm256_mul_pd(ve, log_pd(safe)));
    const __m256d add = _mm256_and_pd(positive, _mm256_mul_pd(_mm256_mul_pd(vc, pw), _mm256_loadu_pd(s + i)));
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(out + i), add));
  }
  for (; i < n; ++i) {
    if (base[i] > 0.0) out[i] += coef * std::exp(expo * std::log(base[i])) * s[i];
  }
}

std::pair<double, double> laplace_sums(double z, const double* v, std::size_t n) {
  const __m256d vz = set1(-z);
  __m256d a = _mm256_setzero_pd(), b = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d e = exp_pd(_mm256_mul_pd(vz, _mm256_loadu_pd(v + i)));
    a = _mm256_add_pd(a, e);
    b = _mm256_fmadd_pd(e, e, b);
  }
  alignas(32) double la[4], lb[4];
  _mm256_store_pd(la, a);
  _mm256_store_pd(lb, b);
  double sa = (la[0] + la[1]) + (la[2] + la[3]);
  double sb = (lb[0] + lb[1]) + (lb[2] + lb[3]);
  for (; i < n; ++i) {
    const double e = std::exp(-z * v[i]);
    sa += e;
    sb += e * e;
  }
  return {sa, sb};
}

}  // namespace

namespace detail {

const Kernels& avx2_table() {
  static const Kernels k{Isa::Avx2, positive_stable, scaled_power_accumulate, laplace_sums};
  return k;
}

}  // namespace detail

}  // namespace fracstoch::simd

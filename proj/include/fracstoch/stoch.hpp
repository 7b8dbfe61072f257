#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fracstoch/laplace.hpp"
#include "fracstoch/params.hpp"
#include "fracstoch/rng.hpp"

namespace fracstoch::stoch {

/// Process values on an increasing time grid.
struct SamplePath {
  std::vector<double> times;
  std::vector<double> values;
  std::size_t dim = 1;  // values holds dim entries per time point
  bool monotone = false;

  /// Throws InvalidParams unless times increase strictly and, when
  /// monotone, values start at 0 and never decrease.
  void check() const;
};

/// Standard positive α-stable variates (E e^{−sS} = e^{−s^α}), α ∈ (0,1],
/// two uniforms per variate, batched through the dispatched kernels.
void standard_stable(double alpha, RngStream& rng, std::span<double> out);

/// Increment of an α-stable subordinator over dt: dt^{1/α} S.
double sample_stable_increment(double alpha, double dt, RngStream& rng);

/// 𝔙 on `grid` (starting at 0): the outer δ/n-stable clock V^{δ/n}, then
/// the n+1 inner stable subordinators of orders (γ+ν)n/δ − rν scaled by
/// (C(n,r) λ^r)^{1/order} and run for the clock increments.
SamplePath sample_frakV_path(const TimeChangeParams& tc, std::span<const double> grid, RngStream& rng);

/// One draw of 𝔙_t.
double sample_frakV(const TimeChangeParams& tc, double t, RngStream& rng);

/// One draw of 𝒱_x, the inner sum without the outer clock.
double sample_inner_sum(const TimeChangeParams& tc, double x, RngStream& rng);

/// A first-passage sample: bracket midpoint, bracket width and steps used.
struct PassageSample {
  double value = 0.0;
  double bracket = 0.0;
  std::size_t steps = 0;
};

/// 𝔈_t = inf{x : 𝔙_x > t} on a grid of step `resolution` in x.
PassageSample sample_inverse_E(const TimeChangeParams& tc, double t, double resolution, RngStream& rng);

/// 𝔎_t = inf{x : 𝒱_x > t}.
PassageSample sample_K(const TimeChangeParams& tc, double t, double resolution, RngStream& rng);

/// 𝔈_t drawn as L^{δ/n}(𝔎_t): first passage of 𝒱, then the exact inverse
/// of the outer clock at that level. The bracket is that of 𝔎.
PassageSample sample_inverse_E_composed(const TimeChangeParams& tc, double t, double resolution, RngStream& rng);

/// L_t = inf{x : V^α_x > t} by first passage of a single α-stable subordinator.
PassageSample sample_inverse_stable_passage(double alpha, double t, double resolution, RngStream& rng);

/// Exact L^δ_t via L_t = (t/V_1)^δ, δ ∈ (0,1].
double sample_inverse_stable_exact(double delta, double t, RngStream& rng);

/// Step cap used by the first-passage samplers at level t.
std::size_t passage_step_cap(const TimeChangeParams& tc, double t, double resolution);

/// v_α(x,t): density at value x of the α-stable subordinator at time t,
/// from the Zolotarev integral (1/π)∫₀^π a(u) κ x^{−κ−1} e^{−a(u) x^{−κ}} du
/// of the unit-time law, κ = α/(1−α).
double stable_density(double alpha, double x, double t);

/// P{V^α_t ≤ x}.
double stable_cdf(double alpha, double x, double t);

/// The same density by inverting e^{−t s^α} in the value variable.
laplace::InversionResult stable_density_by_inversion(double alpha, double x, double t,
                                                     const laplace::InversionConfig& cfg = {});

/// l_α(x,t), density at x of the inverse α-stable subordinator at time t:
/// (t/(αx)) v_α(t, x).
double inverse_stable_density(double alpha, double x, double t);

/// k(x,t) for n = 1: ∫₀ᵗ l_{γ+ν}(x,y) v_ν(t−y, x) dy + ∫₀ᵗ l_ν(x,y) v_{γ+ν}(t−y, x) dy,
/// with v(value, time). Its t-Laplace transform is K_TS.
double k_density(const TimeChangeParams& tc, double x, double t);

}  // namespace fracstoch::stoch

#pragma once

#include <string>
#include <vector>

#include "fracstoch/laplace.hpp"
#include "fracstoch/params.hpp"

namespace fracstoch::pde {

/// ĝ(β,t) = Σ_r (−cβ²t^{γ+ν})^r E^{rδ}_{ν,r(γ+ν)+1}(−λt^ν), the Fourier
/// transform of the solution with a point initial datum. Exactly 1 at β = 0.
/// Throws SeriesDiverges when the terms grow past double-precision reach.
double g_hat_series(const TimeChangeParams& tc, double beta, double t);

/// Same quantity as a plain double series in (r, m):
/// Σ_r Σ_m (−cβ²t^{γ+ν})^r (−λt^ν)^m (rδ)_m / (m! Γ(νm + r(γ+ν) + 1)).
double g_hat_double_series(const TimeChangeParams& tc, double beta, double t);

/// ĝ(β,t) by inverting s^{γ+ν−1}B^δ / (cβ² + s^{γ+ν}B^δ), B = 1 + λs^{−ν}.
laplace::InversionResult g_hat_by_inversion(const TimeChangeParams& tc, double beta, double t,
                                            const laplace::InversionConfig& cfg = {});

/// ĝ(β,t) = 2∫₀^∞ g(x,t) cos(βx) dx with g from density_g.
double g_hat_by_quadrature(const TimeChangeParams& tc, double beta, double t,
                           const laplace::InversionConfig& cfg = {});

/// (1/(2λt^{α/2})) W_{−α/2,1−α/2}(−|x|/(λt^{α/2})), α ∈ (0,2).
double diffusion_wright(double alpha, double lambda_scale, double x, double t);

struct DensityResult {
  double value = 0.0;  // raw value clamped at 0
  double raw = 0.0;    // inversion output, used for accuracy comparisons
  laplace::Method method = laplace::Method::FixedTalbot;
  double cross_value = 0.0;
  bool cross_checked = false;
};

/// g(x,t) by inversion in s of
/// (2s√c)^{−1} s^{(γ+ν)/2}B^{δ/2} exp(−|x| s^{(γ+ν)/2}B^{δ/2}/√c).
DensityResult density_g(const TimeChangeParams& tc, double x, double t, const laplace::InversionConfig& cfg = {});

/// Configuration actually used by density_g at (x, t): Talbot is forced at
/// x = 0 when γ+ν is close to 2, where Gaver-Stehfest degrades.
laplace::InversionConfig density_config(const TimeChangeParams& tc, double x, const laplace::InversionConfig& cfg);

struct MultitermTerm {
  double coefficient = 0.0;
  double order = 0.0;
  friend bool operator==(const MultitermTerm&, const MultitermTerm&) = default;
};

/// Σ_{r=0}^n C(n,r) λ^r 𝔡^{γ+ν−rν}: the Caputo multi-term form of the
/// operator at integer δ = n. Throws InvalidParams if an order is ≤ 0.
std::vector<MultitermTerm> multiterm_expand(unsigned n, double lambda_rate, double gamma, double nu);

}  // namespace fracstoch::pde

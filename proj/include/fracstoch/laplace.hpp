#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "fracstoch/multiprecision.hpp"
#include "fracstoch/params.hpp"

namespace fracstoch::laplace {

using Complex = std::complex<double>;

enum class Method { GaverStehfest, FixedTalbot };

std::string to_string(Method m);
Method method_from_string(const std::string& name);

struct InversionConfig {
  Method method = Method::FixedTalbot;
  /// Gaver-Stehfest order for transforms evaluated in double precision.
  int order = 14;
  /// Gaver-Stehfest order for transforms that carry a 50-digit evaluator.
  int precise_order = 32;
  int talbot_nodes = 32;
  double tolerance = 1e-6;
  /// Evaluate the other method too and fail on gross disagreement.
  bool cross_check = true;
};

/// A Laplace transform F(s) of a real-valued f(t). `eval` must be analytic
/// on the principal sheet to the right of every singularity and must honour
/// F(conj s) = conj F(s). `precise`, when set, evaluates F on the real axis
/// in 50-digit arithmetic.
struct Transform {
  std::function<Complex(Complex)> eval;
  std::function<Mp(const Mp&)> precise;
};

/// Transform of a complex-valued f(t); no conjugate symmetry is assumed.
struct ComplexTransform {
  std::function<Complex(Complex)> eval;
  std::function<Mp(const Mp&)> precise_re;
  std::function<Mp(const Mp&)> precise_im;
};

struct InversionResult {
  double value = 0.0;
  Method method = Method::FixedTalbot;
  bool cross_checked = false;
  double cross_value = 0.0;
  double disagreement = 0.0;
};

struct ComplexInversionResult {
  Complex value;
  Method method = Method::FixedTalbot;
  bool cross_checked = false;
  Complex cross_value;
  double disagreement = 0.0;
};

/// Stehfest weights V_1..V_N (N even) in 50-digit precision.
const std::vector<Mp>& stehfest_weights(int order);

double gaver_stehfest(const Transform& F, double t, int order);
double gaver_stehfest_precise(const Transform& F, double t, int order);
double fixed_talbot(const Transform& F, double t, int nodes);

Complex gaver_stehfest(const ComplexTransform& F, double t, int order);
Complex gaver_stehfest_precise(const ComplexTransform& F, double t, int order);
Complex fixed_talbot(const ComplexTransform& F, double t, int nodes);

/// f(t) from F. With cross_check, the other method is evaluated as well;
/// disagreement above 100·max(tolerance, 1e−6|f|) raises InversionFailure.
InversionResult invert_laplace(const Transform& F, double t, const InversionConfig& cfg = {});
ComplexInversionResult invert_laplace(const ComplexTransform& F, double t, const InversionConfig& cfg = {});

/// ∫₀^∞ e^{−st} f(t) dt.
double forward_laplace(const std::function<double(double)>& f, double s, double rel_tol = 1e-13);

// ---------------------------------------------------------------------------
// Closed-form transform catalogue.

enum class TransformId {
  H_XS,               // (z, s) ↦ s^{μ−1}B^δ / (s^μ B^δ + z)
  H_TS,               // (x, s) ↦ s^{μ−1}B^δ exp(−x s^μ B^δ)
  H_X_SERIES,         // (z, t) ↦ Σ (−z)^r t^{rμ} E^{rδ}_{ν,rμ+1}(−λ t^ν)
  E_DENS_TS,          // (x, s), t-Laplace transform of the law of 𝔈ₜ
  K_TS,               // (x, s) ↦ s^{−1}(s^μ + s^ν) exp(−x(s^μ + s^ν))
  G_FOURIER_LAPLACE,  // (Ψ, s) ↦ s^{μ−1}B^δ / (Ψ + s^μ B^δ)
  G_X_LAPLACE,        // (x, s) ↦ (2s√c)^{−1} s^{μ/2}B^{δ/2} exp(−|x| s^{μ/2}B^{δ/2}/√c)
};
// μ = γ+ν, B = 1 + λ s^{−ν}

std::string to_string(TransformId id);
TransformId transform_from_string(const std::string& name);

/// Coordinates of a catalogue evaluation: `first` is x, z or Ψ, `second` is
/// s (or t for H_X_SERIES).
struct TransformPoint {
  Complex first;
  Complex second;
};

Complex analytic_transform(TransformId id, const TimeChangeParams& tc, const TransformPoint& point);

/// Catalogue entry as a function of s with the first coordinate frozen;
/// carries a 50-digit evaluator. Not available for H_X_SERIES (a t-domain
/// entry) or for G_FOURIER_LAPLACE with complex Ψ (use fourier_laplace_in_s).
Transform transform_in_s(TransformId id, const TimeChangeParams& tc, double first);

/// G_FOURIER_LAPLACE in s for a complex symbol value Ψ.
ComplexTransform fourier_laplace_in_s(const TimeChangeParams& tc, Complex psi);

/// H_X_SERIES: the x-Laplace transform of the law of 𝔈ₜ as a series of
/// Prabhakar functions. Throws SeriesDiverges when cancellation or the term
/// cap makes the double-precision sum meaningless.
double h_x_series(const TimeChangeParams& tc, double z, double t);

/// The two-order inverse-subordinator law transform (1/s)(s^a + s^b) e^{−x(s^a+s^b)}.
Transform two_order_k_transform(double a, double b, double x);

}  // namespace fracstoch::laplace

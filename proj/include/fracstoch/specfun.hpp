#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fracstoch/laplace.hpp"

namespace fracstoch::specfun {

/// (α, η, ξ, ζ) for E^ξ_{α,η} and the operators built on it.
struct PrabhakarParams {
  double alpha = 1.0;
  double eta = 1.0;
  double xi = 1.0;
  double zeta = -1.0;
};

struct WrightParams {
  double a = 0.0;
  double b = 1.0;
};

/// ₚψ_q parameters: upper pairs (a_m, α_m), lower pairs (b_j, β_j).
struct GenWrightSpec {
  std::vector<std::pair<double, double>> upper;
  std::vector<std::pair<double, double>> lower;
};

struct SeriesOptions {
  double rel_tol = 1e-15;
  int consecutive = 3;
  int max_terms = 10000;
  /// max|term| / |sum| above which the double sum is not trusted.
  double cancellation_limit = 1e8;
};

enum class EvalMethod { Series, FiniteSum, LaplaceInversion, Multiprecision };

std::string to_string(EvalMethod m);

struct EvalInfo {
  double value = 0.0;
  EvalMethod method = EvalMethod::Series;
  int terms = 0;
};

/// (ξ)_r = ξ(ξ+1)…(ξ+r−1), (ξ)_0 = 1.
double pochhammer(double xi, unsigned r);

/// 1/Γ(z), exactly zero at the poles z = 0, −1, −2, …
double rgamma(double z);

bool is_gamma_pole(double z);

/// E^ξ_{α,η}(x) = Σ x^r (ξ)_r / (r! Γ(αr+η)). ζ is ignored.
double ml_prabhakar(const PrabhakarParams& p, double x, const SeriesOptions& opt = {});
EvalInfo ml_prabhakar_info(const PrabhakarParams& p, double x, const SeriesOptions& opt = {});

/// Two-parameter Mittag-Leffler function E_{α,β}(x).
double mittag_leffler(double alpha, double beta, double x);

/// W_{a,b}(x) = Σ x^r / (r! Γ(ar+b)).
double wright(const WrightParams& w, double x, const SeriesOptions& opt = {});
EvalInfo wright_info(const WrightParams& w, double x, const SeriesOptions& opt = {});

/// ₚψ_q(x) = Σ x^k/k! Π Γ(a_m+α_m k) / Π Γ(b_j+β_j k).
double generalized_wright(const GenWrightSpec& g, double x, const SeriesOptions& opt = {});

/// ∫₀ᵗ (t−y)^{η−1} E^ξ_{α,η}[ζ(t−y)^α] g(y) dy, the Prabhakar integral with
/// kernel parameters `kernel`, by tanh-sinh quadrature split at t/2.
double prabhakar_integral(const PrabhakarParams& kernel, const std::function<double(double)>& g, double t,
                          double rel_tol = 1e-12);

/// ∫₀ᵗ (t−y)^{θ−1} E^{−ξ}_{α,θ}[ζ(t−y)^α] y^{β−1} dy by quadrature; p.xi is
/// the un-negated ξ.
double prabhakar_convolve(double beta, const PrabhakarParams& p, double theta, double t);

/// Γ(β) t^{θ+β−1} E^{−ξ}_{α,θ+β}(ζ t^α).
double prabhakar_convolve_closed(double beta, const PrabhakarParams& p, double theta, double t);

/// Derivative operator D^ξ_{α,η,ζ} applied to y^{β−1}, by termwise
/// differentiation of the convolution closed form:
/// Γ(β) t^{β−η−1} E^{−ξ}_{α,β−η}(ζ t^α).
double prabhakar_derivative_monomial(const PrabhakarParams& p, double beta, double t);

/// Same operator as d^m/dt^m of prabhakar_convolve with auxiliary order θ,
/// where m = η+θ must be 1 or 2; the derivative is an eighth-order central
/// difference. The result does not depend on θ.
double prabhakar_derivative_via_convolution(const PrabhakarParams& p, double beta, double theta, double t);

/// Same operator through the Wright-operator series
/// Γ(ξ+1) d^η/dt^η Σ (−ζ J^α)^r / (r! Γ(ξ−r+1)) applied to y^{β−1}.
/// Only meaningful where that formal series converges (small |ζ|).
double wright_operator_series(const PrabhakarParams& p, double beta, double t, const SeriesOptions& opt = {});

/// Regularized operator 𝔻^ξ_{α,η,ζ} f at t, by inverting
/// s^η (1−ζ s^{−α})^ξ f̃(s) − f(0⁺) s^{η−1} (1−ζ s^{−α})^ξ.
double apply_regularized_D(const laplace::Transform& f_transform, double f_at_zero, const PrabhakarParams& p,
                           double t, const laplace::InversionConfig& cfg = {});

/// Caputo derivative of order q > 0 of t^k, k a non-negative integer.
double caputo_monomial(unsigned k, double q, double t);

}  // namespace fracstoch::specfun

#include <cmath>
#include <numbers>
#include <utility>

#include "fracstoch/error.hpp"
#include "fracstoch/quadrature.hpp"
#include "fracstoch/stoch.hpp"

namespace fracstoch::stoch {

namespace {

/// log a(u) = κ log sin(αu) + log sin((1−α)u) − log sin(u)/(1−α), the
/// Zolotarev/Kanter function; S ≤ x iff E ≥ a(U) x^{−κ}.
double log_kernel(double alpha, double u) {
  const double b = 1.0 - alpha;
  return alpha / b * std::log(std::sin(alpha * u)) + std::log(std::sin(b * u)) - std::log(std::sin(u)) / b;
}

void check_order(double alpha) { require(alpha > 0.0 && alpha < 1.0, "stable order must lie in (0,1)"); }

/// Σ_{k≥1} (−1)^{k+1} Γ(kα+1)/k! sin(πkα) t^k x^{−kα−1}/π; used once t x^{−α} is small.
bool use_tail(double alpha, double x, double t) { return alpha * std::log(x) - std::log(t) > std::log(20.0); }

double tail_series(double alpha, double x, double t) {
  const double lx = std::log(x);
  const double lt = std::log(t);
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double mag = std::lgamma(k * alpha + 1.0) - std::lgamma(k + 1.0) + k * lt - (k * alpha + 1.0) * lx;
    const double term = (k % 2 == 1 ? 1.0 : -1.0) * std::sin(std::numbers::pi * k * alpha) * std::exp(mag);
    sum += term;
    if (std::exp(mag) <= 1e-17 * std::abs(sum)) break;
  }
  return sum / std::numbers::pi;
}

/// Density of the unit-time law at w > 0.
double unit_density(double alpha, double w, double tol = 1e-12) {
  const double kappa = alpha / (1.0 - alpha);
  const double lw = std::log(w);
  // a(u) increases from a(0+) = α^κ(1−α); past this bound the density underflows.
  if (kappa * std::log(alpha) + std::log1p(-alpha) - kappa * lw > 6.7) return 0.0;
  auto f = [&](double u) {
    const double la = log_kernel(alpha, u);
    const double e = la - kappa * lw;
    if (e > 700.0) return 0.0;
    return std::exp(std::log(kappa) - (kappa + 1.0) * lw + la - std::exp(e));
  };
  // The integrand is a bump in u; splitting near π keeps the steep side
  // resolved for large κ.
  const double split = std::numbers::pi * 0.5;
  return (quad::tanh_sinh(f, 0.0, split, tol).value + quad::tanh_sinh(f, split, std::numbers::pi, tol).value) /
         std::numbers::pi;
}

/// Stable density at reduced accuracy for use inside outer quadratures.
double inner_density(double alpha, double x, double t) {
  if (x <= 0.0) return 0.0;
  if (use_tail(alpha, x, t)) return tail_series(alpha, x, t);
  const double scale = std::pow(t, 1.0 / alpha);
  return unit_density(alpha, x / scale, 1e-9) / scale;
}

double unit_cdf(double alpha, double w) {
  const double kappa = alpha / (1.0 - alpha);
  const double lw = std::log(w);
  auto f = [&](double u) {
    const double e = log_kernel(alpha, u) - kappa * lw;
    return e > 700.0 ? 0.0 : std::exp(-std::exp(e));
  };
  const double split = std::numbers::pi * 0.5;
  return (quad::tanh_sinh(f, 0.0, split, 1e-12).value + quad::tanh_sinh(f, split, std::numbers::pi, 1e-12).value) /
         std::numbers::pi;
}

}  // namespace

double stable_density(double alpha, double x, double t) {
  check_order(alpha);
  require(t > 0.0, "t must be positive");
  if (x <= 0.0) return 0.0;
  if (use_tail(alpha, x, t)) return tail_series(alpha, x, t);
  const double scale = std::pow(t, 1.0 / alpha);
  return unit_density(alpha, x / scale) / scale;
}

double stable_cdf(double alpha, double x, double t) {
  check_order(alpha);
  require(t > 0.0, "t must be positive");
  if (x <= 0.0) return 0.0;
  return unit_cdf(alpha, x / std::pow(t, 1.0 / alpha));
}

laplace::InversionResult stable_density_by_inversion(double alpha, double x, double t,
                                                     const laplace::InversionConfig& cfg) {
  check_order(alpha);
  require(x > 0.0 && t > 0.0, "x and t must be positive");
  laplace::Transform F;
  F.eval = [alpha, t](laplace::Complex s) { return std::exp(-t * std::pow(s, alpha)); };
  F.precise = [alpha, t](const Mp& s) { return exp(-Mp(t) * pow(s, Mp(alpha))); };
  return laplace::invert_laplace(F, x, cfg);
}

double inverse_stable_density(double alpha, double x, double t) {
  check_order(alpha);
  require(t > 0.0, "t must be positive");
  if (x <= 0.0) return 0.0;
  return t / (alpha * x) * stable_density(alpha, t, x);
}

double k_density(const TimeChangeParams& tc, double x, double t) {
  require(x > 0.0 && t > 0.0 && std::isfinite(x) && std::isfinite(t), "x and t must be positive and finite");
  const int n = tc.n();
  require(n <= 1, "the explicit density is available for n = 0 and n = 1");
  if (n == 0) return inverse_stable_density(tc.order(), x, t);
  const double mu = tc.order();
  const double nu = tc.nu;
  // y + w = t; each half is integrated in the variable that vanishes at its
  // endpoint so the narrow peaks of width x^{1/μ}, x^{1/ν} stay resolved.
  auto term = [&](double a, double b, double y, double w) {
    return y / (a * x) * inner_density(a, y, x) * inner_density(b, w, x);
  };
  const double half = 0.5 * t;
  double total = 0.0;
  for (auto [a, b] : {std::pair{mu, nu}, std::pair{nu, mu}}) {
    auto near_zero = [&](double y) { return y <= 0.0 ? 0.0 : term(a, b, y, t - y); };
    auto near_t = [&](double w) { return w <= 0.0 ? 0.0 : term(a, b, t - w, w); };
    total += quad::tanh_sinh(near_zero, 0.0, half, 1e-6).value + quad::tanh_sinh(near_t, 0.0, half, 1e-6).value;
  }
  return total;
}

}  // namespace fracstoch::stoch

#include "fracstoch/pde.hpp"

#include <cmath>

#include "fracstoch/error.hpp"
#include "fracstoch/quadrature.hpp"
#include "fracstoch/specfun.hpp"
#include "fracstoch/stoch.hpp"

namespace fracstoch::pde {

namespace {

struct PartialSum {
  double sum = 0.0;
  double largest = 0.0;  // largest term magnitude seen
};

/// Sums terms produced by `next(k)` until three consecutive magnitudes fall
/// below 1e-17 of the running sum while no longer growing.
template <class Next>
PartialSum sum_until_small(Next&& next, const char* what) {
  PartialSum out;
  double prev = INFINITY;
  int quiet = 0;
  for (unsigned k = 0; k < 20000; ++k) {
    const double term = next(k);
    if (!std::isfinite(term)) {
      fail(ErrorKind::SeriesDiverges, std::string(what) + ": non-finite term at index " + std::to_string(k));
    }
    out.sum += term;
    const double mag = std::abs(term);
    out.largest = std::max(out.largest, mag);
    if ((mag <= 1e-17 * std::abs(out.sum) && mag <= prev) || (mag == 0.0 && out.sum == 0.0)) {
      if (++quiet == 3) return out;
    } else {
      quiet = 0;
    }
    prev = mag;
  }
  fail(ErrorKind::SeriesDiverges, std::string(what) + ": no convergence within 20000 terms");
}

}  // namespace

double g_hat_series(const TimeChangeParams& tc, double beta, double t) {
  tc.validate_analytic();
  require(t > 0.0, "t must be positive");
  if (beta == 0.0) return 1.0;
  return laplace::h_x_series(tc, tc.c * beta * beta, t);
}

double g_hat_double_series(const TimeChangeParams& tc, double beta, double t) {
  tc.validate_analytic();
  require(t > 0.0, "t must be positive");
  if (beta == 0.0) return 1.0;
  const double mu = tc.order();
  const double u = -tc.c * beta * beta * std::pow(t, mu);
  const double w = -tc.lambda_rate * std::pow(t, tc.nu);
  // Rounding in row r is about eps times its largest term; the sum is
  // rejected once that budget is no longer small against the result.
  double rounding = 0.0;
  auto row = [&](unsigned r) {
    // r-th row: u^r Σ_m (rδ)_m w^m / (m! Γ(νm + rμ + 1)), by term ratios.
    const double a = r * tc.delta;
    const double base = std::pow(u, r);
    if (base == 0.0) return 0.0;
    double term = base * specfun::rgamma(r * mu + 1.0);
    const auto inner = sum_until_small(
        [&](unsigned m) {
          if (m == 0) return term;
          const double lg = std::lgamma(tc.nu * (m - 1) + r * mu + 1.0) - std::lgamma(tc.nu * m + r * mu + 1.0);
          term *= (a + m - 1.0) / m * w * std::exp(lg);
          return term;
        },
        "g_hat double series row");
    rounding += inner.largest * 0x1.0p-52;
    return inner.sum;
  };
  const double total = sum_until_small(row, "g_hat double series").sum;
  if (rounding > 1e-9 * std::abs(total)) {
    fail(ErrorKind::SeriesDiverges, "g_hat double series: cancellation leaves fewer than 9 significant digits");
  }
  return total;
}

laplace::InversionResult g_hat_by_inversion(const TimeChangeParams& tc, double beta, double t,
                                            const laplace::InversionConfig& cfg) {
  require(t > 0.0, "t must be positive");
  const auto F = laplace::transform_in_s(laplace::TransformId::G_FOURIER_LAPLACE, tc, tc.c * beta * beta);
  return laplace::invert_laplace(F, t, cfg);
}

laplace::InversionConfig density_config(const TimeChangeParams& tc, double x, const laplace::InversionConfig& cfg) {
  laplace::InversionConfig out = cfg;
  if (x == 0.0 && tc.order() > 1.8) {
    out.method = laplace::Method::FixedTalbot;
    out.cross_check = false;
  }
  return out;
}

DensityResult density_g(const TimeChangeParams& tc, double x, double t, const laplace::InversionConfig& cfg) {
  tc.validate_analytic();
  require(tc.c > 0.0, "the density needs c > 0");
  require(t > 0.0, "t must be positive");
  require(std::isfinite(x), "x must be finite");
  const double ax = std::abs(x);
  const auto F = laplace::transform_in_s(laplace::TransformId::G_X_LAPLACE, tc, ax);
  const auto r = laplace::invert_laplace(F, t, density_config(tc, ax, cfg));
  DensityResult out;
  out.raw = r.value;
  out.value = std::max(r.value, 0.0);
  out.method = r.method;
  out.cross_checked = r.cross_checked;
  out.cross_value = r.cross_value;
  return out;
}

double g_hat_by_quadrature(const TimeChangeParams& tc, double beta, double t, const laplace::InversionConfig& cfg) {
  auto g = [&](double x) { return density_g(tc, x, t, cfg).raw; };
  // Extend the range until the density is negligible against its peak.
  const double scale = std::sqrt(tc.c) * std::pow(t, 0.5 * tc.order());
  const double peak = std::abs(g(0.0));
  double end = scale;
  while (std::abs(g(end)) > 1e-13 * peak) {
    end *= 2.0;
    if (end > 1e6 * scale) fail(ErrorKind::QuadratureFailure, "density does not decay on a bounded range");
  }
  auto f = [&](double x) { return 2.0 * g(x) * std::cos(beta * x); };
  double total = 0.0;
  // Panels of width ≈ scale keep the integrand smooth on each piece.
  const int panels = static_cast<int>(std::ceil(end / scale));
  const double width = end / panels;
  for (int k = 0; k < panels; ++k) total += quad::kronrod<31>(f, k * width, (k + 1) * width, 1e-10, 6).value;
  return total;
}

double diffusion_wright(double alpha, double lambda_scale, double x, double t) {
  require(alpha > 0.0 && alpha < 2.0, "alpha must lie in (0,2); alpha = 2 is a distribution, not a function");
  require(lambda_scale > 0.0, "lambda scale must be positive");
  require(t > 0.0, "t must be positive");
  const double h = alpha / 2.0;
  const double width = lambda_scale * std::pow(t, h);
  const double z = std::abs(x) / width;
  try {
    const auto w = specfun::wright_info({-h, 1.0 - h}, -z);
    if (w.method == specfun::EvalMethod::Series || w.method == specfun::EvalMethod::FiniteSum) {
      return w.value / (2.0 * width);
    }
  } catch (const Error&) {
    // Far tail: the fallback transforms overflow; the integral form does not.
  }
  // W_{−h,1−h}(−z) is the density at z of the inverse h-stable subordinator
  // at unit time, whose integral form stays accurate far into the tail.
  return stoch::inverse_stable_density(h, z, 1.0) / (2.0 * width);
}

std::vector<MultitermTerm> multiterm_expand(unsigned n, double lambda_rate, double gamma, double nu) {
  require(lambda_rate > 0.0, "lambda must be positive");
  require(gamma > 0.0 && nu > 0.0, "gamma and nu must be positive");
  require(n * nu < gamma + nu && gamma + nu <= 2.0, "need n*nu < gamma+nu <= 2");
  std::vector<MultitermTerm> out;
  double binom = 1.0;
  double power = 1.0;
  for (unsigned r = 0; r <= n; ++r) {
    const double order = r == 0 ? gamma + nu : gamma - nu * (r - 1.0);
    require(order > 0.0, "multi-term order gamma - nu(r-1) must be positive");
    out.push_back({binom * power, order});
    binom = binom * (n - r) / (r + 1.0);
    power *= lambda_rate;
  }
  return out;
}

}  // namespace fracstoch::pde

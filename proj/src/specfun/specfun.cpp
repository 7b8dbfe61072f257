#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "fracstoch/error.hpp"
#include "fracstoch/multiprecision.hpp"
#include "fracstoch/quadrature.hpp"
#include "fracstoch/specfun.hpp"
#include "series.hpp"

namespace fracstoch::specfun {

namespace {

using detail::sum_series;

SeriesOptions wide_options(const SeriesOptions& opt) {
  SeriesOptions w = opt;
  w.rel_tol = 1e-40;
  return w;
}

bool trustworthy(const detail::SeriesSum<double>& s, const SeriesOptions& opt) {
  if (s.overflow) return false;
  if (s.max_abs == 0.0) return true;
  return s.max_abs <= opt.cancellation_limit * std::abs(s.sum);
}

bool is_nonpositive_integer(double v) { return v <= 0.0 && std::floor(v) == v; }

constexpr int kFallbackNodes = 22;

}  // namespace

std::string to_string(EvalMethod m) {
  switch (m) {
    case EvalMethod::Series: return "series";
    case EvalMethod::FiniteSum: return "finite-sum";
    case EvalMethod::LaplaceInversion: return "laplace-inversion";
    case EvalMethod::Multiprecision: return "multiprecision";
  }
  return "unknown";
}

double pochhammer(double xi, unsigned r) {
  double out = 1.0;
  for (unsigned k = 0; k < r; ++k) {
    out *= xi + k;
    if (out == 0.0) return 0.0;
  }
  return out;
}

bool is_gamma_pole(double z) { return is_nonpositive_integer(z); }

double rgamma(double z) {
  if (is_gamma_pole(z)) return 0.0;
  if (z > 171.0) return std::exp(-std::lgamma(z));
  return 1.0 / std::tgamma(z);
}

EvalInfo ml_prabhakar_info(const PrabhakarParams& p, double x, const SeriesOptions& opt) {
  require(p.alpha > 0.0, "Prabhakar function needs alpha > 0");
  require(std::isfinite(x), "argument must be finite");
  if (x == 0.0 || p.xi == 0.0) return {rgamma(p.eta), EvalMethod::FiniteSum, 1};
  const EvalMethod direct = is_nonpositive_integer(p.xi) ? EvalMethod::FiniteSum : EvalMethod::Series;
  detail::PrabhakarTerms<double> terms(p.alpha, p.eta, p.xi, x);
  const auto s = sum_series<double>(terms, opt, "Prabhakar series");
  if (trustworthy(s, opt)) return {s.sum, direct, s.terms};

  const bool invertible = x < 0.0 && p.alpha <= 1.0 && p.eta > 0.0 && p.xi > 0.0;
  if (!invertible) {
    detail::PrabhakarTerms<MpWide> wide(MpWide(p.alpha), MpWide(p.eta), MpWide(p.xi), MpWide(x));
    const auto w = sum_series<MpWide>(wide, wide_options(opt), "Prabhakar series");
    return {static_cast<double>(w.sum), EvalMethod::Multiprecision, w.terms};
  }
  // ∫ e^{−st} t^{η−1} E^ξ_{α,η}(x t^α) dt = s^{−η}(1 − x s^{−α})^{−ξ}, read at t = 1.
  laplace::Transform F;
  F.eval = [p, x](laplace::Complex q) {
    return std::pow(q, -p.eta) * std::pow(1.0 - x * std::pow(q, -p.alpha), -p.xi);
  };
  return {laplace::fixed_talbot(F, 1.0, kFallbackNodes), EvalMethod::LaplaceInversion, kFallbackNodes};
}

double ml_prabhakar(const PrabhakarParams& p, double x, const SeriesOptions& opt) {
  return ml_prabhakar_info(p, x, opt).value;
}

double mittag_leffler(double alpha, double beta, double x) { return ml_prabhakar({alpha, beta, 1.0, 0.0}, x); }

EvalInfo wright_info(const WrightParams& w, double x, const SeriesOptions& opt) {
  require(std::isfinite(x), "argument must be finite");
  if (w.a == -1.0) {
    require(w.b > 0.0 && std::abs(x) < 1.0, "Wright function with a = -1 needs b > 0 and |x| < 1");
  } else {
    require(w.a > -1.0, "Wright function needs a > -1");
  }
  if (x == 0.0) return {rgamma(w.b), EvalMethod::FiniteSum, 1};
  detail::WrightTerms<double> terms(w.a, w.b, x);
  try {
    const auto s = sum_series<double>(terms, opt, "Wright series");
    if (trustworthy(s, opt)) return {s.sum, EvalMethod::Series, s.terms};
  } catch (const Error& e) {
    // Slowly converging series (a near −1, large |x|) fall through.
    if (e.kind() != ErrorKind::NonConvergent) throw;
  }

  const bool invertible = x < 0.0 && w.a < 0.0 && w.a > -1.0;
  if (!invertible) {
    detail::WrightTerms<MpWide> wide(MpWide(w.a), MpWide(w.b), MpWide(x));
    const auto m = sum_series<MpWide>(wide, wide_options(opt), "Wright series");
    return {static_cast<double>(m.sum), EvalMethod::Multiprecision, m.terms};
  }
  // ∫ e^{−st} t^{b−1} W_{a,b}(x t^a) dt = s^{−b} exp(x s^{−a}), read at t = 1.
  laplace::Transform F;
  F.eval = [w, x](laplace::Complex q) { return std::pow(q, -w.b) * std::exp(x * std::pow(q, -w.a)); };
  return {laplace::fixed_talbot(F, 1.0, kFallbackNodes), EvalMethod::LaplaceInversion, kFallbackNodes};
}

double wright(const WrightParams& w, double x, const SeriesOptions& opt) { return wright_info(w, x, opt).value; }

double generalized_wright(const GenWrightSpec& g, double x, const SeriesOptions& opt) {
  require(!g.upper.empty() && !g.lower.empty(), "generalized Wright function needs upper and lower pairs");
  require(std::isfinite(x), "argument must be finite");
  if (x == 0.0) {
    detail::GenWrightTerms<double> terms(g, 1.0);
    const auto t0 = terms(0);
    if (t0.zero) return 0.0;
    return t0.sign * std::exp(t0.log_mag);
  }
  detail::GenWrightTerms<double> terms(g, x);
  const auto s = sum_series<double>(terms, opt, "generalized Wright series");
  if (trustworthy(s, opt)) return s.sum;
  detail::GenWrightTerms<MpWide> wide(g, MpWide(x));
  return static_cast<double>(sum_series<MpWide>(wide, wide_options(opt), "generalized Wright series").sum);
}

double prabhakar_integral(const PrabhakarParams& kernel, const std::function<double(double)>& g, double t,
                          double rel_tol) {
  require(t > 0.0, "t must be positive");
  require(kernel.eta > 0.0, "kernel exponent eta must be positive");
  auto k = [&](double u) {
    return std::pow(u, kernel.eta - 1.0) * ml_prabhakar(kernel, kernel.zeta * std::pow(u, kernel.alpha));
  };
  const double half = 0.5 * t;
  // u = t − y near the kernel singularity, y itself near the datum's.
  const auto near_t = quad::tanh_sinh([&](double u) { return k(u) * g(t - u); }, 0.0, half, rel_tol);
  const auto near_0 = quad::tanh_sinh([&](double y) { return k(t - y) * g(y); }, 0.0, half, rel_tol);
  return near_t.value + near_0.value;
}

double prabhakar_convolve(double beta, const PrabhakarParams& p, double theta, double t) {
  require(beta > 0.0 && theta > 0.0, "beta and theta must be positive");
  const PrabhakarParams kernel{p.alpha, theta, -p.xi, p.zeta};
  return prabhakar_integral(kernel, [beta](double y) { return std::pow(y, beta - 1.0); }, t, 1e-13);
}

double prabhakar_convolve_closed(double beta, const PrabhakarParams& p, double theta, double t) {
  require(beta > 0.0 && theta > 0.0 && t > 0.0, "beta, theta and t must be positive");
  return std::tgamma(beta) * std::pow(t, theta + beta - 1.0) *
         ml_prabhakar({p.alpha, theta + beta, -p.xi, p.zeta}, p.zeta * std::pow(t, p.alpha));
}

double prabhakar_derivative_monomial(const PrabhakarParams& p, double beta, double t) {
  require(beta > 0.0 && t > 0.0, "beta and t must be positive");
  return std::tgamma(beta) * std::pow(t, beta - p.eta - 1.0) *
         ml_prabhakar({p.alpha, beta - p.eta, -p.xi, p.zeta}, p.zeta * std::pow(t, p.alpha));
}

double prabhakar_derivative_via_convolution(const PrabhakarParams& p, double beta, double theta, double t) {
  require(t > 0.0 && theta > 0.0 && beta > 0.0, "beta, theta and t must be positive");
  const double m = p.eta + theta;
  require(std::abs(m - 1.0) < 1e-12 || std::abs(m - 2.0) < 1e-12, "eta + theta must be 1 or 2");
  const double h = 0.02 * t;
  auto c = [&](double u) { return prabhakar_convolve(beta, p, theta, u); };
  static constexpr double d1[] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  static constexpr double d2[] = {8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0};
  if (std::abs(m - 1.0) < 1e-12) {
    double s = 0.0;
    for (int k = 1; k <= 4; ++k) s += d1[k - 1] * (c(t + k * h) - c(t - k * h));
    return s / h;
  }
  double s = -205.0 / 72.0 * c(t);
  for (int k = 1; k <= 4; ++k) s += d2[k - 1] * (c(t + k * h) + c(t - k * h));
  return s / (h * h);
}

double wright_operator_series(const PrabhakarParams& p, double beta, double t, const SeriesOptions& opt) {
  require(beta > 0.0 && t > 0.0, "beta and t must be positive");
  const double x = -p.zeta * std::pow(t, p.alpha);
  const double prefactor = std::tgamma(p.xi + 1.0) * std::tgamma(beta) * std::pow(t, beta - 1.0 - p.eta);
  if (x == 0.0) return prefactor * rgamma(p.xi + 1.0) * rgamma(beta - p.eta);
  // Σ x^r / (r! Γ(ξ−r+1) Γ(β+αr−η)) is ₁ψ₂-shaped with a unit numerator.
  GenWrightSpec g{{{1.0, 0.0}}, {{p.xi + 1.0, -1.0}, {beta - p.eta, p.alpha}}};
  return prefactor * generalized_wright(g, x, opt);
}

double apply_regularized_D(const laplace::Transform& f_transform, double f_at_zero, const PrabhakarParams& p,
                           double t, const laplace::InversionConfig& cfg) {
  require(t > 0.0, "t must be positive");
  require(p.alpha > 0.0, "alpha must be positive");
  laplace::Transform G;
  G.eval = [f_transform, f_at_zero, p](laplace::Complex s) {
    const laplace::Complex factor = std::pow(1.0 - p.zeta * std::pow(s, -p.alpha), p.xi) * std::pow(s, p.eta);
    return factor * (f_transform.eval(s) - f_at_zero / s);
  };
  if (f_transform.precise) {
    G.precise = [f_transform, f_at_zero, p](const Mp& s) {
      const Mp factor = pow(Mp(1) - Mp(p.zeta) * pow(s, Mp(-p.alpha)), Mp(p.xi)) * pow(s, Mp(p.eta));
      return factor * (f_transform.precise(s) - Mp(f_at_zero) / s);
    };
  }
  return laplace::invert_laplace(G, t, cfg).value;
}

double caputo_monomial(unsigned k, double q, double t) {
  require(t > 0.0, "t must be positive");
  require(q > 0.0, "derivative order must be positive");
  // Caputo derivatives annihilate polynomials of degree below ⌈q⌉.
  if (static_cast<double>(k) < std::ceil(q)) return 0.0;
  return std::tgamma(k + 1.0) * rgamma(k + 1.0 - q) * std::pow(t, k - q);
}

}  // namespace fracstoch::specfun

#include <cmath>
#include <type_traits>

#include "fracstoch/error.hpp"
#include "fracstoch/laplace.hpp"
#include "fracstoch/specfun.hpp"

namespace fracstoch::laplace {

namespace {

template <class S>
using Real = std::conditional_t<std::is_same_v<S, Complex>, double, S>;

template <class S>
S exponent_phi(const TimeChangeParams& tc, const S& s) {
  using std::pow;
  const S b = S(1) + Real<S>(tc.lambda_rate) * pow(s, Real<S>(-tc.nu));
  return pow(s, Real<S>(tc.order())) * pow(b, Real<S>(tc.delta));
}

template <class S>
S h_xs(const TimeChangeParams& tc, const S& z, const S& s) {
  const S phi = exponent_phi(tc, s);
  return phi / (s * (phi + z));
}

template <class S>
S h_ts(const TimeChangeParams& tc, const S& x, const S& s) {
  using std::exp;
  const S phi = exponent_phi(tc, s);
  return phi / s * exp(-x * phi);
}

template <class S>
S two_order(double a, double b, const S& x, const S& s) {
  using std::exp;
  using std::pow;
  const S q = pow(s, Real<S>(a)) + pow(s, Real<S>(b));
  return q / s * exp(-x * q);
}

template <class S>
S g_x(const TimeChangeParams& tc, double x, const S& s) {
  using std::exp;
  using std::pow;
  using std::sqrt;
  const S b = S(1) + Real<S>(tc.lambda_rate) * pow(s, Real<S>(-tc.nu));
  const S q = pow(s, Real<S>(tc.order() / 2)) * pow(b, Real<S>(tc.delta / 2));
  const Real<S> root_c = sqrt(Real<S>(tc.c));
  return q / (Real<S>(2) * s * root_c) * exp(-Real<S>(std::abs(x)) * q / root_c);
}

void check_g_x(const TimeChangeParams& tc) {
  require(tc.c > 0.0, "the x-domain solution needs c > 0");
}

}  // namespace

std::string to_string(TransformId id) {
  switch (id) {
    case TransformId::H_XS: return "H_XS";
    case TransformId::H_TS: return "H_TS";
    case TransformId::H_X_SERIES: return "H_X_SERIES";
    case TransformId::E_DENS_TS: return "E_DENS_TS";
    case TransformId::K_TS: return "K_TS";
    case TransformId::G_FOURIER_LAPLACE: return "G_FOURIER_LAPLACE";
    case TransformId::G_X_LAPLACE: return "G_X_LAPLACE";
  }
  return "unknown";
}

TransformId transform_from_string(const std::string& name) {
  for (auto id : {TransformId::H_XS, TransformId::H_TS, TransformId::H_X_SERIES, TransformId::E_DENS_TS,
                  TransformId::K_TS, TransformId::G_FOURIER_LAPLACE, TransformId::G_X_LAPLACE}) {
    if (to_string(id) == name) return id;
  }
  fail(ErrorKind::InvalidParams, "unknown transform '" + name + "'");
}

Complex analytic_transform(TransformId id, const TimeChangeParams& tc, const TransformPoint& point) {
  tc.validate_analytic();
  const Complex a = point.first;
  const Complex s = point.second;
  switch (id) {
    case TransformId::H_XS: return h_xs(tc, a, s);
    case TransformId::H_TS:
    case TransformId::E_DENS_TS: return h_ts(tc, a, s);
    case TransformId::H_X_SERIES:
      require(a.imag() == 0.0 && s.imag() == 0.0, "H_X_SERIES takes real (z, t)");
      return h_x_series(tc, a.real(), s.real());
    case TransformId::K_TS: return two_order(tc.order(), tc.nu, a, s);
    case TransformId::G_FOURIER_LAPLACE: return h_xs(tc, a, s);
    case TransformId::G_X_LAPLACE:
      check_g_x(tc);
      require(a.imag() == 0.0, "G_X_LAPLACE takes a real x");
      return g_x(tc, a.real(), s);
  }
  fail(ErrorKind::InvalidParams, "unknown transform id");
}

Transform transform_in_s(TransformId id, const TimeChangeParams& tc, double first) {
  tc.validate_analytic();
  switch (id) {
    case TransformId::H_XS:
    case TransformId::G_FOURIER_LAPLACE:
      return {[tc, first](Complex s) { return h_xs(tc, Complex(first), s); },
              [tc, first](const Mp& s) { return h_xs(tc, Mp(first), s); }};
    case TransformId::H_TS:
    case TransformId::E_DENS_TS:
      return {[tc, first](Complex s) { return h_ts(tc, Complex(first), s); },
              [tc, first](const Mp& s) { return h_ts(tc, Mp(first), s); }};
    case TransformId::K_TS: return two_order_k_transform(tc.order(), tc.nu, first);
    case TransformId::G_X_LAPLACE:
      check_g_x(tc);
      return {[tc, first](Complex s) { return g_x(tc, first, s); },
              [tc, first](const Mp& s) { return g_x(tc, first, s); }};
    case TransformId::H_X_SERIES: break;
  }
  fail(ErrorKind::InvalidParams, "H_X_SERIES is a t-domain entry and has no s-transform");
}

ComplexTransform fourier_laplace_in_s(const TimeChangeParams& tc, Complex psi) {
  tc.validate_analytic();
  ComplexTransform out;
  out.eval = [tc, psi](Complex s) { return h_xs(tc, psi, s); };
  const Mp pr(psi.real());
  const Mp pi(psi.imag());
  // phi/(s(phi+Ψ)) with phi real on the positive axis.
  out.precise_re = [tc, pr, pi](const Mp& s) {
    const Mp phi = exponent_phi(tc, s);
    const Mp den = (phi + pr) * (phi + pr) + pi * pi;
    return phi * (phi + pr) / (s * den);
  };
  out.precise_im = [tc, pr, pi](const Mp& s) {
    const Mp phi = exponent_phi(tc, s);
    const Mp den = (phi + pr) * (phi + pr) + pi * pi;
    return -phi * pi / (s * den);
  };
  return out;
}

Transform two_order_k_transform(double a, double b, double x) {
  require(a > 0.0 && b > 0.0, "orders must be positive");
  require(x >= 0.0, "x must be non-negative");
  return {[a, b, x](Complex s) { return two_order(a, b, Complex(x), s); },
          [a, b, x](const Mp& s) { return two_order(a, b, Mp(x), s); }};
}

double h_x_series(const TimeChangeParams& tc, double z, double t) {
  tc.validate_analytic();
  require(t > 0.0, "t must be positive");
  if (z == 0.0) return 1.0;
  const double mu = tc.order();
  const double y = -tc.lambda_rate * std::pow(t, tc.nu);
  const double base = -z * std::pow(t, mu);
  const specfun::SeriesOptions opt;
  double sum = 1.0;
  double max_abs = 1.0;
  double prev = 1.0;
  int quiet = 0;
  double power = 1.0;
  for (int r = 1; r < opt.max_terms; ++r) {
    power *= base;
    if (!std::isfinite(power)) {
      fail(ErrorKind::SeriesDiverges, "term " + std::to_string(r) + " overflows");
    }
    double inner = 0.0;
    try {
      inner = specfun::ml_prabhakar({tc.nu, r * mu + 1.0, r * tc.delta, 0.0}, y);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonConvergent) throw;
      fail(ErrorKind::SeriesDiverges, "Prabhakar factor of term " + std::to_string(r) + " did not converge");
    }
    const double term = power * inner;
    if (!std::isfinite(term)) fail(ErrorKind::SeriesDiverges, "term " + std::to_string(r) + " is not finite");
    sum += term;
    const double mag = std::abs(term);
    max_abs = std::max(max_abs, mag);
    if (max_abs > opt.cancellation_limit * std::max(1.0, std::abs(sum))) {
      // The sum is a Laplace transform bounded by 1 for z ≥ 0, so this much
      // growth cannot cancel down to a trustworthy double.
      fail(ErrorKind::SeriesDiverges, "term " + std::to_string(r) + " exceeds the cancellation budget");
    }
    const bool small = mag <= opt.rel_tol * std::abs(sum) && mag <= prev;
    quiet = small ? quiet + 1 : 0;
    prev = mag;
    if (quiet >= opt.consecutive) {
      if (max_abs > opt.cancellation_limit * std::abs(sum)) {
        fail(ErrorKind::SeriesDiverges, "cancellation across " + std::to_string(r + 1) + " terms");
      }
      return sum;
    }
    if (mag == 0.0 && power == 0.0) return sum;
  }
  fail(ErrorKind::SeriesDiverges, "term cap reached");
}

}  // namespace fracstoch::laplace

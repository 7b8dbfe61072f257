#pragma once

// Log-domain summation engine shared by the double and wide-precision
// evaluations of the Prabhakar, Wright and generalized Wright series.

#include <cmath>
#include <limits>
#include <type_traits>

#include <boost/math/special_functions/gamma.hpp>

#include "fracstoch/error.hpp"
#include "fracstoch/specfun.hpp"

namespace fracstoch::specfun::detail {

template <class Real>
struct LogTerm {
  Real log_mag = 0;
  int sign = 1;
  bool zero = false;  // vanishes through a reciprocal-Gamma pole
  bool end = false;   // this and every later term vanish
};

template <class Real>
struct SeriesSum {
  Real sum = 0;
  Real max_abs = 0;
  int terms = 0;
  bool overflow = false;
};

template <class Real>
bool is_pole(const Real& z) {
  using std::floor;
  return z <= 0 && floor(z) == z;
}

/// log|Γ(z)| and sign(Γ(z)); z must not be a pole.
template <class Real>
Real log_abs_gamma(const Real& z, int& sign) {
  return boost::math::lgamma(z, &sign);
}

template <class Real, class TermFn>
SeriesSum<Real> sum_series(TermFn&& term_at, const SeriesOptions& opt, const char* what) {
  using std::abs;
  using std::exp;
  using std::isfinite;
  SeriesSum<Real> out;
  Real prev = -1;
  int quiet = 0;
  for (int r = 0; r < opt.max_terms; ++r) {
    const LogTerm<Real> lt = term_at(r);
    out.terms = r + 1;
    if (lt.end) return out;
    if (lt.zero) continue;
    if (std::is_same_v<Real, double> && lt.log_mag > 700) {
      out.overflow = true;
      return out;
    }
    const Real mag = exp(lt.log_mag);
    out.sum += lt.sign < 0 ? Real(-mag) : mag;
    if (mag > out.max_abs) out.max_abs = mag;
    const bool small = mag <= Real(opt.rel_tol) * abs(out.sum) && (prev < 0 || mag <= prev);
    quiet = small ? quiet + 1 : 0;
    prev = mag;
    if (quiet >= opt.consecutive) return out;
  }
  fail(ErrorKind::NonConvergent, std::string(what) + ": term cap reached before convergence");
}

/// Terms of E^ξ_{α,η}(x); call with r = 0, 1, 2, … in order.
template <class Real>
class PrabhakarTerms {
 public:
  PrabhakarTerms(Real alpha, Real eta, Real xi, Real x) : alpha_(alpha), eta_(eta), xi_(xi), x_(x) {
    using std::abs;
    using std::log;
    log_abs_x_ = log(abs(x_));
  }

  LogTerm<Real> operator()(int r) {
    using std::abs;
    using std::log;
    if (r > 0) {
      const Real factor = xi_ + (r - 1);
      if (factor == 0) return {0, 1, true, true};
      log_c_ += log_abs_x_ + log(abs(factor)) - log(Real(r));
      if ((x_ < 0) != (factor < 0)) sign_c_ = -sign_c_;
    }
    const Real z = alpha_ * r + eta_;
    if (is_pole(z)) return {0, 1, true, false};
    int s = 1;
    const Real lg = log_abs_gamma(z, s);
    return {log_c_ - lg, sign_c_ * s, false, false};
  }

 private:
  Real alpha_, eta_, xi_, x_;
  Real log_abs_x_ = 0;
  Real log_c_ = 0;
  int sign_c_ = 1;
};

template <class Real>
class WrightTerms {
 public:
  WrightTerms(Real a, Real b, Real x) : a_(a), b_(b), x_(x) {
    using std::abs;
    using std::log;
    log_abs_x_ = log(abs(x_));
  }

  LogTerm<Real> operator()(int r) {
    using std::log;
    if (r > 0) {
      log_c_ += log_abs_x_ - log(Real(r));
      if (x_ < 0) sign_c_ = -sign_c_;
    }
    const Real z = a_ * r + b_;
    if (is_pole(z)) {
      // With a = 0 or a = −1 every later argument is a pole too.
      const bool stays_on_poles = a_ == 0 || a_ == -1;
      return {0, 1, true, stays_on_poles};
    }
    int s = 1;
    const Real lg = log_abs_gamma(z, s);
    return {log_c_ - lg, sign_c_ * s, false, false};
  }

 private:
  Real a_, b_, x_;
  Real log_abs_x_ = 0;
  Real log_c_ = 0;
  int sign_c_ = 1;
};

template <class Real>
class GenWrightTerms {
 public:
  GenWrightTerms(const GenWrightSpec& g, Real x) : g_(g), x_(x) {
    using std::abs;
    using std::log;
    log_abs_x_ = log(abs(x_));
  }

  LogTerm<Real> operator()(int k) {
    using std::log;
    if (k > 0) {
      log_c_ += log_abs_x_ - log(Real(k));
      if (x_ < 0) sign_c_ = -sign_c_;
    }
    Real log_mag = log_c_;
    int sign = sign_c_;
    for (const auto& [a, alpha] : g_.upper) {
      const Real z = Real(a) + Real(alpha) * k;
      if (is_pole(z)) fail(ErrorKind::GammaPole, "numerator Gamma evaluated at a non-positive integer");
      int s = 1;
      log_mag += log_abs_gamma(z, s);
      sign *= s;
    }
    for (const auto& [b, beta] : g_.lower) {
      const Real z = Real(b) + Real(beta) * k;
      if (is_pole(z)) {
        // A non-positive integral step keeps every later argument on a pole.
        const bool stays_on_poles = beta <= 0 && std::floor(beta) == beta;
        return {0, 1, true, stays_on_poles};
      }
      int s = 1;
      log_mag -= log_abs_gamma(z, s);
      sign *= s;
    }
    return {log_mag, sign, false, false};
  }

 private:
  const GenWrightSpec& g_;
  Real x_;
  Real log_abs_x_ = 0;
  Real log_c_ = 0;
  int sign_c_ = 1;
};

}  // namespace fracstoch::specfun::detail

#pragma once

#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fracstoch/error.hpp"

namespace fracstoch::quad {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Double-exponential rule on a finite interval; integrable algebraic
/// endpoint singularities are resolved without special treatment, provided
/// the singular endpoint sits at 0 or is expressed through the complement
/// argument.
template <class F>
QuadratureResult tanh_sinh(F&& f, double a, double b, double rel_tol = 1e-13) {
  // One rule per nesting level: the rule extends its tables lazily and is
  // not re-entrant.
  thread_local std::deque<boost::math::quadrature::tanh_sinh<double>> rules;
  thread_local std::size_t depth = 0;
  if (rules.size() <= depth) rules.emplace_back(15);
  auto& rule = rules[depth];
  struct Nest {
    std::size_t& d;
    explicit Nest(std::size_t& level) : d(level) { ++d; }
    ~Nest() { --d; }
  } nest(depth);
  double err = 0.0;
  double l1 = 0.0;
  std::size_t levels = 0;
  const double value = rule.integrate(f, a, b, rel_tol, &err, &l1, &levels);
  if (!std::isfinite(value)) fail(ErrorKind::QuadratureFailure, "tanh-sinh produced a non-finite value");
  return {value, err * std::max(l1, std::abs(value))};
}

template <unsigned Points = 61, class F>
QuadratureResult kronrod(F&& f, double a, double b, double rel_tol = 1e-13, unsigned max_depth = 15) {
  double err = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, Points>::integrate(f, a, b, max_depth, rel_tol, &err);
  if (!std::isfinite(value)) fail(ErrorKind::QuadratureFailure, "Gauss-Kronrod produced a non-finite value");
  return {value, err};
}

/// ∫_0^∞ f. The first panel [0, scale] uses tanh-sinh (singular origin),
/// then geometrically growing Gauss-Kronrod panels until a panel contributes
/// less than tail_rel·|accumulated| twice in a row.
template <class F>
QuadratureResult half_line(F&& f, double scale, double rel_tol = 1e-13, double tail_rel = 1e-16) {
  if (!(scale > 0.0)) fail(ErrorKind::InvalidParams, "half-line quadrature needs a positive scale");
  QuadratureResult acc = tanh_sinh(f, 0.0, scale, rel_tol);
  double a = scale;
  double width = scale;
  int quiet = 0;
  for (int panel = 0; panel < 400; ++panel) {
    // Panels that are negligible against the running total need no
    // refinement; the adaptive rule would chase their own relative error.
    QuadratureResult part = kronrod<31>(f, a, a + width, rel_tol, 0);
    if (part.error > rel_tol * std::abs(acc.value)) part = kronrod<31>(f, a, a + width, rel_tol);
    acc.value += part.value;
    acc.error += part.error;
    const double edge = std::abs(f(a + width)) * width;
    if (std::abs(part.value) <= tail_rel * std::abs(acc.value) && edge <= tail_rel * std::abs(acc.value)) {
      if (++quiet == 2) return acc;
    } else if (acc.value == 0.0 && part.value == 0.0 && edge == 0.0) {
      if (++quiet == 8) return acc;
    } else {
      quiet = 0;
    }
    a += width;
    width *= 2.0;
    if (!std::isfinite(a + width)) break;
  }
  fail(ErrorKind::QuadratureFailure, "half-line integral did not reach its tail tolerance");
}

}  // namespace fracstoch::quad

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracstoch/error.hpp"
#include "fracstoch/laplace.hpp"
#include "fracstoch/specfun.hpp"

using namespace fracstoch;
using namespace fracstoch::laplace;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Transform power_pair(double k) {
  // 1/s^k ↔ t^{k−1}/Γ(k)
  return {[k](Complex s) { return std::pow(s, -k); }, [k](const Mp& s) { return pow(s, Mp(-k)); }};
}

}  // namespace

TEST_CASE("Stehfest weights sum to zero") {
  for (int n : {14, 32}) {
    Mp sum = 0;
    for (const auto& v : stehfest_weights(n)) sum += v;
    CHECK(abs(sum) < Mp(1e-30));
  }
  CHECK_THROWS_AS(stehfest_weights(13), Error);
}

TEST_CASE("elementary inversions") {
  InversionConfig cfg;
  for (Method m : {Method::FixedTalbot, Method::GaverStehfest}) {
    cfg.method = m;
    CHECK(rel(invert_laplace(power_pair(2.0), 2.0, cfg).value, 2.0) < 1e-9);
    Transform decay{[](Complex s) { return 1.0 / (s + 1.0); }, [](const Mp& s) { return Mp(1) / (s + 1); }};
    CHECK(rel(invert_laplace(decay, 1.0, cfg).value, std::exp(-1.0)) < 1e-9);
  }
}

TEST_CASE("double-precision Gaver-Stehfest at order 14 is coarse") {
  Transform decay{[](Complex s) { return 1.0 / (s + 1.0); }, {}};
  const double v = gaver_stehfest(decay, 1.0, 14);
  CHECK(std::abs(v - std::exp(-1.0)) < 1e-3);
}

TEST_CASE("cross-check disagreement raises") {
  // e^{−s}/s is the unit step at t = 1: discontinuous, the methods disagree.
  Transform step{[](Complex s) { return std::exp(-s) / s; }, [](const Mp& s) { return exp(-s) / s; }};
  try {
    invert_laplace(step, 1.0);
    FAIL("expected InversionFailure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InversionFailure);
  }
}

TEST_CASE("complex-valued inversion") {
  // 1/(s − i) ↔ e^{it}
  ComplexTransform F;
  F.eval = [](Complex s) { return 1.0 / (s - Complex(0.0, 1.0)); };
  F.precise_re = [](const Mp& s) { return s / (s * s + 1); };
  F.precise_im = [](const Mp& s) { return Mp(1) / (s * s + 1); };
  const auto r = invert_laplace(F, 1.3);
  CHECK(std::abs(r.value - std::exp(Complex(0.0, 1.3))) < 1e-9);
  CHECK(r.cross_checked);
}

TEST_CASE("forward Laplace quadrature") {
  CHECK(rel(forward_laplace([](double) { return 1.0; }, 2.0), 0.5) < 1e-13);
  CHECK(rel(forward_laplace([](double t) { return t; }, 1.0), 1.0) < 1e-13);
  CHECK(rel(forward_laplace([](double t) { return std::exp(-t); }, 1.0), 0.5) < 1e-13);
  CHECK(rel(forward_laplace([](double t) { return 1.0 / std::sqrt(t); }, 1.5), std::sqrt(std::numbers::pi / 1.5)) <
        1e-11);
}

TEST_CASE("inverse-stable density from the time transform") {
  TimeChangeParams tc{0.3, 0.2, 0.0, 1.0, 1.0};
  const Transform F = transform_in_s(TransformId::H_TS, tc, 1.0);
  // μ = 1/2: l(x,t) = e^{−x²/(4t)}/√(πt)
  const double expect = std::exp(-0.25) / std::sqrt(std::numbers::pi);
  CHECK(rel(invert_laplace(F, 1.0).value, expect) < 1e-8);
  CHECK(rel(specfun::wright({-0.5, 0.5}, -1.0), expect) < 1e-13);
}

TEST_CASE("catalogue reductions") {
  TimeChangeParams tc{0.35, 0.25, 0.0, 1.0, 1.0};
  const double mu = tc.order();
  const Complex z = 0.7, s = 1.9;
  const Complex hx = analytic_transform(TransformId::H_XS, tc, {z, s});
  CHECK(std::abs(hx - std::pow(s, mu - 1.0) / (std::pow(s, mu) + z)) < 1e-15);

  for (double t : {0.4, 1.0, 2.2}) {
    CHECK(rel(h_x_series(tc, 0.8, t), specfun::mittag_leffler(mu, 1.0, -0.8 * std::pow(t, mu))) < 1e-12);
  }

  TimeChangeParams tel{0.5, 0.2, 1.0, 1.3, 1.0};
  CHECK(std::abs(analytic_transform(TransformId::G_FOURIER_LAPLACE, tel, {0.0, 2.0}) - 0.5) < 1e-15);
  CHECK(h_x_series(tel, 0.0, 0.7) == 1.0);
}

TEST_CASE("h_x_series agrees with the inverted double transform") {
  TimeChangeParams tc{0.4, 0.4, 1.0, 1.0, 1.0};
  for (double t : {0.5, 1.0}) {
    const double direct = h_x_series(tc, 1.0, t);
    const double inverted = invert_laplace(transform_in_s(TransformId::H_XS, tc, 1.0), t).value;
    CHECK(rel(direct, inverted) < 1e-7);
  }
}

TEST_CASE("time transform of the inverse-process law integrates back to the double transform") {
  TimeChangeParams tc{0.5, 0.2, 1.0, 1.0, 1.0};
  const double s = 1.4, z = 0.9;
  const double via_x = forward_laplace(
      [&](double x) { return analytic_transform(TransformId::H_TS, tc, {x, s}).real(); }, z);
  CHECK(rel(via_x, analytic_transform(TransformId::H_XS, tc, {z, s}).real()) < 1e-12);
}

TEST_CASE("two-order transform and catalogue entries") {
  TimeChangeParams tc{0.4, 0.3, 1.0, 1.0, 1.0};
  const Complex k = analytic_transform(TransformId::K_TS, tc, {0.5, 1.3});
  const double q = std::pow(1.3, 0.7) + std::pow(1.3, 0.3);
  CHECK(std::abs(k.real() - q / 1.3 * std::exp(-0.5 * q)) < 1e-15);
  CHECK(to_string(transform_from_string("G_X_LAPLACE")) == "G_X_LAPLACE");
  CHECK_THROWS_AS(transform_from_string("nope"), Error);
  CHECK_THROWS_AS(transform_in_s(TransformId::H_X_SERIES, tc, 1.0), Error);
}

TEST_CASE("series divergence is reported") {
  TimeChangeParams tc{0.2, 0.1, 1.0, 1.0, 1.0};
  try {
    h_x_series(tc, 50.0, 30.0);
    FAIL("expected SeriesDiverges");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SeriesDiverges);
  }
}

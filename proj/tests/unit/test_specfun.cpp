#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracstoch/error.hpp"
#include "fracstoch/laplace.hpp"
#include "fracstoch/specfun.hpp"

using namespace fracstoch;
using namespace fracstoch::specfun;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Plain double summation of the two-parameter Mittag-Leffler series, used
// only at small |x| where it is accurate.
double naive_ml(double alpha, double beta, double x) {
  double s = 0.0;
  double p = 1.0;
  for (int r = 0; r < 200; ++r) {
    s += p / std::tgamma(alpha * r + beta);
    p *= x;
  }
  return s;
}

}  // namespace

TEST_CASE("pochhammer rising factorial") {
  CHECK(pochhammer(7.3, 0) == 1.0);
  CHECK(pochhammer(0.0, 3) == 0.0);
  CHECK(pochhammer(3.0, 2) == 12.0);
  CHECK(pochhammer(-2.0, 3) == 0.0);
  CHECK(pochhammer(0.5, 3) == doctest::Approx(0.5 * 1.5 * 2.5));
}

TEST_CASE("reciprocal gamma vanishes at poles") {
  CHECK(rgamma(0.0) == 0.0);
  CHECK(rgamma(-3.0) == 0.0);
  CHECK(rgamma(4.0) == doctest::Approx(1.0 / 6.0));
  CHECK(rgamma(0.5) == doctest::Approx(1.0 / std::sqrt(std::numbers::pi)));
}

TEST_CASE("Prabhakar function special values") {
  CHECK(rel(ml_prabhakar({1.0, 1.0, 1.0, 0.0}, 1.0), std::numbers::e) < 1e-14);
  for (double x : {-3.0, 0.0, 0.4, 5.0}) {
    CHECK(rel(ml_prabhakar({0.7, 0.5, 0.0, 0.0}, x), 1.0 / std::sqrt(std::numbers::pi)) < 1e-12);
  }
  CHECK(rel(ml_prabhakar({0.6, 1.2, 2.5, 0.0}, -0.7), 0.21094701085977741916) < 1e-13);
}

TEST_CASE("Prabhakar with unit xi is the two-parameter Mittag-Leffler function") {
  for (double alpha : {0.3, 0.8, 1.4}) {
    for (double x = -2.0; x <= 2.0; x += 0.25) {
      CHECK(rel(ml_prabhakar({alpha, 1.3, 1.0, 0.0}, x), naive_ml(alpha, 1.3, x)) < 1e-10);
    }
  }
}

TEST_CASE("Prabhakar with negative integer xi is a finite sum") {
  const auto info = ml_prabhakar_info({0.9, 2.0, -3.0, 0.0}, -5.5);
  CHECK(info.method == EvalMethod::FiniteSum);
  CHECK(info.terms <= 5);
  CHECK(rel(info.value, 40.143497716892800998) < 1e-13);
}

TEST_CASE("Prabhakar cancellation fallbacks") {
  const auto a = ml_prabhakar_info({0.5, 1.0, 1.0, 0.0}, -10.0);
  CHECK(a.method == EvalMethod::LaplaceInversion);
  CHECK(rel(a.value, 0.056140992743822585858) < 1e-9);

  const auto far = ml_prabhakar_info({0.5, 1.0, 1.0, 0.0}, -40.0);
  CHECK(far.method == EvalMethod::LaplaceInversion);
  CHECK(rel(far.value, 0.014100335983377813625) < 1e-9);

  const auto b = ml_prabhakar_info({0.8, 1.3, 1.5, 0.0}, -20.0);
  CHECK(rel(b.value, 0.0013957862297461387445) < 1e-9);

  // α > 1: no inversion route; moderate cancellation stays in double, heavy
  // cancellation moves to the wide sum.
  CHECK(rel(ml_prabhakar({1.5, 1.0, 1.0, 0.0}, -30.0), -0.014470224834105874553) < 1e-8);
  const auto c = ml_prabhakar_info({1.5, 1.0, 1.0, 0.0}, -60.0);
  CHECK(c.method == EvalMethod::Multiprecision);
  CHECK(rel(c.value, -0.0042085916177409564451) < 1e-13);

  CHECK(rel(ml_prabhakar({1.7, 0.9, 0.7, 0.0}, -12.0), -0.23463891773943860324) < 1e-10);
}

TEST_CASE("Prabhakar rejects non-positive alpha") {
  CHECK_THROWS_AS(ml_prabhakar({0.0, 1.0, 1.0, 0.0}, 0.5), Error);
  SeriesOptions tight;
  tight.max_terms = 5;
  try {
    ml_prabhakar({1.0, 1.0, 1.0, 0.0}, 3.0, tight);
    FAIL("expected NonConvergent");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonConvergent);
  }
}

TEST_CASE("Wright function") {
  for (double x = -5.0; x <= 5.0; x += 0.5) CHECK(rel(wright({0.0, 1.0}, x), std::exp(x)) < 1e-10);
  CHECK(rel(wright({-0.5, 0.5}, 0.0), 1.0 / std::sqrt(std::numbers::pi)) < 1e-15);
  CHECK(rel(wright({-0.5, 0.5}, -1.0), 0.43939128946772239705) < 1e-13);
  CHECK(rel(wright({-0.3, 0.7}, -5.0), 0.0064665392145191341896) < 1e-9);
  CHECK(rel(wright({-0.3, 0.7}, 2.5), 1.2706055872044514921) < 1e-13);
  CHECK(rel(wright({0.4, 1.1}, -3.0), -0.010494138215573963602) < 1e-11);
  CHECK(std::abs(wright({-0.5, 0.5}, -8.0) - 6.3491173359332791342e-8) < 1e-14);
}

TEST_CASE("Wright function parameter region") {
  CHECK_THROWS_AS(wright({-1.2, 1.0}, 0.3), Error);
  CHECK_THROWS_AS(wright({-1.0, 1.0}, 1.5), Error);
  CHECK_THROWS_AS(wright({-1.0, -0.5}, 0.5), Error);
  // a = −1, b = 2: finitely many non-vanishing terms, 1/Γ(2) + x/Γ(1).
  CHECK(rel(wright({-1.0, 2.0}, 0.5), 1.5) < 1e-15);
}

TEST_CASE("generalized Wright function") {
  GenWrightSpec expo{{{1, 1}, {1, 1}}, {{1, 1}, {1, 1}}};
  for (double x : {-2.0, 0.3, 1.7}) CHECK(rel(generalized_wright(expo, x), std::exp(x)) < 1e-12);
  GenWrightSpec g{{{2.5, 0.3}, {1.5, 1.0}}, {{0.7, 0.5}, {3.0, 1.2}}};
  CHECK(rel(generalized_wright(g, 0.0), std::tgamma(2.5) * std::tgamma(1.5) / (std::tgamma(0.7) * std::tgamma(3.0))) <
        1e-14);
  GenWrightSpec pole{{{0.0, 1.0}}, {{1.0, 1.0}}};
  try {
    generalized_wright(pole, 0.5);
    FAIL("expected GammaPole");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GammaPole);
  }
  // A denominator pole silences the first term: Σ_{k≥1} x^k/(k!Γ(k)).
  GenWrightSpec silent{{{1.0, 1.0}}, {{0.0, 1.0}, {1.0, 1.0}}};
  double expect = 0.0;
  for (int k = 1; k < 40; ++k) expect += std::pow(0.8, k) / (std::tgamma(k + 1.0) * std::tgamma(k));
  CHECK(rel(generalized_wright(silent, 0.8), expect) < 1e-14);
}

TEST_CASE("Laplace identity of the Prabhakar kernel") {
  for (double alpha : {0.4, 1.0}) {
    const double eta = 1.5, xi = 2.0, zeta = -1.0, p = 2.0;
    auto f = [&](double t) {
      return std::pow(t, eta - 1.0) * ml_prabhakar({alpha, eta, xi, zeta}, zeta * std::pow(t, alpha));
    };
    const double expect = std::pow(p, -eta) * std::pow(1.0 - zeta * std::pow(p, -alpha), -xi);
    CHECK(rel(laplace::forward_laplace(f, p), expect) < 1e-9);
  }
}

TEST_CASE("Prabhakar convolution closed form") {
  const PrabhakarParams p{0.7, 1.0, 2.0, -1.0};
  const double closed = prabhakar_convolve_closed(1.5, p, 0.9, 1.0);
  CHECK(rel(closed, std::tgamma(1.5) * ml_prabhakar({0.7, 2.4, -2.0, 0.0}, -1.0)) < 1e-14);
  CHECK(rel(closed, std::tgamma(1.5) * 1.92814855750272762) < 1e-13);
  CHECK(rel(prabhakar_convolve(1.5, p, 0.9, 1.0), closed) < 1e-9);

  for (double theta : {0.6, 1.7}) {
    CHECK(rel(prabhakar_convolve(0.8, {0.5, 1.0, 0.6, -0.8}, theta, 1.3),
              prabhakar_convolve_closed(0.8, {0.5, 1.0, 0.6, -0.8}, theta, 1.3)) < 1e-9);
  }

  // ξ = 0: Riemann-Liouville integral of a power.
  const double rl = std::tgamma(1.5) / std::tgamma(1.5 + 0.9) * std::pow(2.0, 1.5 + 0.9 - 1.0);
  CHECK(rel(prabhakar_convolve(1.5, {0.7, 1.0, 0.0, -1.0}, 0.9, 2.0), rl) < 1e-10);

  // β = 1.
  CHECK(rel(prabhakar_convolve(1.0, p, 0.9, 1.2),
            std::pow(1.2, 0.9) * ml_prabhakar({0.7, 1.9, -2.0, 0.0}, -std::pow(1.2, 0.7))) < 1e-9);
}

TEST_CASE("derivative through the convolution does not depend on theta") {
  const PrabhakarParams p{0.7, 0.4, 1.2, -0.9};
  const double exact = prabhakar_derivative_monomial(p, 1.8, 1.2);
  const double first = prabhakar_derivative_via_convolution(p, 1.8, 0.6, 1.2);
  const double second = prabhakar_derivative_via_convolution(p, 1.8, 1.6, 1.2);
  CHECK(rel(first, exact) < 1e-8);
  CHECK(rel(second, exact) < 1e-7);
  CHECK_THROWS_AS(prabhakar_derivative_via_convolution(p, 1.8, 0.5, 1.2), Error);
}

TEST_CASE("Wright-operator series matches the derivative closed form for small zeta") {
  for (double zeta : {-0.05, 0.02}) {
    const PrabhakarParams p{0.6, 0.4, 1.3, zeta};
    CHECK(rel(wright_operator_series(p, 2.0, 1.1), prabhakar_derivative_monomial(p, 2.0, 1.1)) < 1e-10);
  }
  // Integer ξ: the operator series terminates.
  const PrabhakarParams q{0.5, 0.3, 2.0, -0.1};
  CHECK(rel(wright_operator_series(q, 1.5, 0.9), prabhakar_derivative_monomial(q, 1.5, 0.9)) < 1e-12);
}

TEST_CASE("regularized derivative") {
  laplace::Transform constant;
  constant.eval = [](laplace::Complex s) { return 3.0 / s; };
  constant.precise = [](const Mp& s) { return Mp(3) / s; };
  for (double t : {0.3, 1.0, 2.5}) {
    CHECK(std::abs(apply_regularized_D(constant, 3.0, {0.6, 0.5, 1.5, -1.0}, t)) < 1e-10);
  }

  laplace::Transform ramp;
  ramp.eval = [](laplace::Complex s) { return 1.0 / (s * s); };
  ramp.precise = [](const Mp& s) { return Mp(1) / (s * s); };
  CHECK(rel(apply_regularized_D(ramp, 0.0, {0.7, 0.5, 0.0, -1.0}, 1.0), 1.0 / std::tgamma(1.5)) < 1e-8);
  CHECK(rel(caputo_monomial(1, 0.5, 1.0), 1.1283791670955126) < 1e-14);
  CHECK(caputo_monomial(0, 0.3, 2.0) == 0.0);
}

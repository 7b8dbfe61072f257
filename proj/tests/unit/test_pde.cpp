#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fracstoch/error.hpp"
#include "fracstoch/pde.hpp"
#include "fracstoch/quadrature.hpp"
#include "fracstoch/specfun.hpp"

using namespace fracstoch;
using namespace fracstoch::pde;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double gaussian(double x, double c, double t) {
  return std::exp(-x * x / (4.0 * c * t)) / std::sqrt(4.0 * std::numbers::pi * c * t);
}

}  // namespace

TEST_CASE("Fourier series of the solution") {
  const TimeChangeParams tc{0.4, 0.4, 1.0, 1.0, 1.0};
  CHECK(g_hat_series(tc, 0.0, 0.7) == 1.0);
  CHECK(g_hat_double_series(tc, 0.0, 0.7) == 1.0);

  const TimeChangeParams zero{0.5, 0.3, 0.0, 1.0, 1.3};
  for (double beta : {0.3, 1.0, 2.0}) {
    const double t = 0.9;
    const double ml = specfun::mittag_leffler(0.8, 1.0, -1.3 * beta * beta * std::pow(t, 0.8));
    CHECK(rel(g_hat_series(zero, beta, t), ml) < 1e-12);
  }

  const double inv = g_hat_by_inversion(tc, 1.0, 0.5).value;
  CHECK(std::abs(g_hat_series(tc, 1.0, 0.5) - inv) < 1e-5);

  for (const TimeChangeParams& p : {tc, TimeChangeParams{0.5, 0.2, 1.5, 0.5, 0.7}, TimeChangeParams{0.9, 0.6, 2.0, 0.5, 1.0}}) {
    for (double beta : {0.5, 1.5}) {
      for (double t : {0.3, 1.2}) {
        CHECK(std::abs(g_hat_series(p, beta, t) - g_hat_double_series(p, beta, t)) < 1e-11);
        CHECK(std::abs(g_hat_series(p, beta, t) - g_hat_by_inversion(p, beta, t).value) < 1e-5);
      }
    }
  }
  // Small ν with λt^ν ≈ 2: the plain double series cancels; the Prabhakar
  // form does not.
  const TimeChangeParams hard{0.5, 0.2, 1.5, 2.0, 0.7};
  CHECK_THROWS_AS(g_hat_double_series(hard, 0.5, 1.2), Error);
  CHECK(std::abs(g_hat_series(hard, 0.5, 1.2) - g_hat_by_inversion(hard, 0.5, 1.2).value) < 1e-5);
}

TEST_CASE("Wright-function diffusion kernel") {
  CHECK(std::abs(diffusion_wright(1.0, 1.0, 0.0, 1.0) - 0.28209479177387814) < 1e-15);
  CHECK(std::abs(diffusion_wright(1.0, 1.0, 1.0, 1.0) - std::exp(-0.25) / (2.0 * std::sqrt(std::numbers::pi))) < 1e-14);
  for (int k = 0; k < 10; ++k) {
    const double x = -3.0 + 0.7 * k, t = 1.4, lam = 0.8;
    CHECK(rel(diffusion_wright(1.0, lam, x, t), gaussian(x, lam * lam, t)) < 1e-10);
  }
  for (double alpha : {0.5, 1.0, 1.5}) {
    const double mass = 2.0 * quad::half_line([&](double x) { return diffusion_wright(alpha, 1.0, x, 1.0); }, 1.0, 1e-10, 1e-14).value;
    CHECK(std::abs(mass - 1.0) < 1e-6);
    CHECK(diffusion_wright(alpha, 1.0, 0.8, 1.0) == diffusion_wright(alpha, 1.0, -0.8, 1.0));
  }
  CHECK_THROWS_AS(diffusion_wright(2.0, 1.0, 0.0, 1.0), Error);
}

TEST_CASE("density by inversion") {
  const TimeChangeParams heat{0.6, 0.4, 0.0, 1.0, 0.7};
  for (double x : {0.0, 0.3, 1.0, 2.5}) {
    CHECK(std::abs(density_g(heat, x, 1.2).raw - gaussian(x, 0.7, 1.2)) < 1e-6);
  }
  const TimeChangeParams slow{0.5, 0.2, 0.0, 1.0, 1.5};
  for (double x : {0.1, 0.5, 2.0}) {
    CHECK(std::abs(density_g(slow, x, 0.8).raw - diffusion_wright(0.7, std::sqrt(1.5), x, 0.8)) < 1e-5);
  }
  const TimeChangeParams tel{0.4, 0.4, 1.0, 1.0, 1.0};
  CHECK(density_g(tel, 0.6, 1.0).raw == density_g(tel, -0.6, 1.0).raw);
  const double mass =
      2.0 * quad::half_line([&](double x) { return density_g(tel, x, 1.0).raw; }, 1.0, 1e-8, 1e-10).value;
  CHECK(std::abs(mass - 1.0) < 1e-4);
}

TEST_CASE("Fourier quadrature of the density matches the series") {
  const TimeChangeParams tel{0.4, 0.4, 1.0, 1.0, 1.0};
  for (double beta : {0.5, 1.0}) {
    CHECK(std::abs(g_hat_by_quadrature(tel, beta, 0.8) - g_hat_series(tel, beta, 0.8)) < 1e-4);
  }
}

TEST_CASE("wave limit at the origin uses Talbot") {
  const TimeChangeParams wave{0.95, 0.9, 1.0, 1.0, 1.0};
  CHECK(density_config(wave, 0.0, {}).method == laplace::Method::FixedTalbot);
  const auto d = density_g(wave, 0.0, 0.5);
  CHECK(d.method == laplace::Method::FixedTalbot);
  CHECK(std::isfinite(d.value));
}

TEST_CASE("wave-telegraph admissibility") {
  const TimeChangeParams wave{1.0, 1.0, 1.0, 1.0, 1.0};
  const TimeChangeParams half{1.0, 1.0, 0.5, 1.0, 1.0};
  const TimeChangeParams beyond{1.0, 1.0, 1.5, 1.0, 1.0};
  CHECK_NOTHROW(wave.validate_analytic());
  CHECK_NOTHROW(half.validate_analytic());
  CHECK_THROWS_AS(beyond.validate_analytic(), Error);
  CHECK_THROWS_AS(density_g({1.0, 1.0, 1.5, 1.0, 1.0}, 0.5, 0.3), Error);
}

TEST_CASE("multi-term expansion") {
  CHECK(multiterm_expand(0, 1.0, 0.5, 0.2) == std::vector<MultitermTerm>{{1.0, 0.7}});
  CHECK(multiterm_expand(1, 1.7, 0.5, 0.2) == std::vector<MultitermTerm>{{1.0, 0.7}, {1.7, 0.5}});
  CHECK(multiterm_expand(2, 1.0, 0.5, 0.2) == std::vector<MultitermTerm>{{1.0, 0.7}, {2.0, 0.5}, {1.0, 0.3}});
  CHECK(multiterm_expand(2, 3.0, 0.5, 0.2) == std::vector<MultitermTerm>{{1.0, 0.7}, {6.0, 0.5}, {9.0, 0.3}});
  CHECK_THROWS_AS(multiterm_expand(3, 1.0, 0.5, 0.3), Error);
}

TEST_CASE("regularized operator at integer order equals the Caputo combination") {
  struct Case {
    unsigned n;
    double lambda, gamma, nu;
  };
  for (const Case& c : {Case{1, 1.0, 0.5, 0.2}, Case{2, 0.8, 0.6, 0.25}, Case{1, 2.0, 1.2, 0.5}}) {
    for (unsigned k : {2u, 3u}) {
      const double t = 0.9;
      laplace::Transform F;
      F.eval = [k](laplace::Complex s) { return std::tgamma(k + 1.0) / std::pow(s, k + 1.0); };
      F.precise = [k](const Mp& s) { return Mp(std::tgamma(k + 1.0)) / pow(s, Mp(k + 1.0)); };
      const double lhs =
          specfun::apply_regularized_D(F, 0.0, {c.nu, c.gamma + c.nu, static_cast<double>(c.n), -c.lambda}, t);
      double rhs = 0.0;
      for (const auto& term : multiterm_expand(c.n, c.lambda, c.gamma, c.nu)) {
        rhs += term.coefficient * specfun::caputo_monomial(k, term.order, t);
      }
      CHECK(std::abs(lhs - rhs) < 1e-6 * std::max(1.0, std::abs(rhs)));
    }
  }
}

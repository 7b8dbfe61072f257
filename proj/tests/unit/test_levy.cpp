#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fracstoch/error.hpp"
#include "fracstoch/laplace.hpp"
#include "fracstoch/levy.hpp"
#include "fracstoch/specfun.hpp"
#include "fracstoch/stats.hpp"

using namespace fracstoch;
using namespace fracstoch::levy;

namespace {

LevySpec brownian(double c = 1.0, double a = 0.0) { return {BrownianDrift{{a}, c}}; }

/// Empirical E cos(ξX), E sin(ξX) of sample_levy_path at time t.
std::pair<McEstimate, McEstimate> path_ecf(const LevySpec& spec, double xi, double t, std::size_t n, std::uint64_t seed) {
  std::vector<double> re(n), im(n);
  const std::vector<double> grid{0.0, 0.5 * t, t};
  for (std::size_t i = 0; i < n; ++i) {
    RngStream rng(seed, i, StreamPurpose::OuterPath);
    const auto p = sample_levy_path(spec, grid, rng);
    const double x = p.values[2 * p.dim];
    re[i] = std::cos(xi * x);
    im[i] = std::sin(xi * x);
  }
  return {estimate(re), estimate(im)};
}

}  // namespace

TEST_CASE("Levy symbols") {
  const double pi = std::numbers::pi;
  CHECK(std::abs(psi_symbol({Poisson{1.0}}, std::vector{pi}) - Complex(2.0, 0.0)) < 1e-15);
  CHECK(psi_symbol(brownian(), std::vector{2.0}) == Complex(4.0, 0.0));
  CHECK(psi_symbol({IsotropicStable{0.75, 1.0, 1}}, std::vector{1.0}) == Complex(1.0, 0.0));
  CHECK(psi_symbol({BrownianDrift{{0.5}, 1.0}}, std::vector{2.0}) == Complex(4.0, 1.0));
  const std::vector<LevySpec> all{brownian(), {BrownianDrift{{1.0, -2.0}, 0.3}}, {IsotropicStable{0.4, 2.0, 3}},
                                  {Poisson{2.0}}, {CompensatedPoisson{3.0}}};
  for (const auto& s : all) {
    const std::vector<double> zero(static_cast<std::size_t>(s.dim()), 0.0);
    CHECK(psi_symbol(s, zero) == Complex(0.0, 0.0));
  }
  CHECK_THROWS_AS(psi_symbol(brownian(), std::vector{1.0, 2.0}), Error);
  CHECK_THROWS_AS(psi_symbol({Poisson{-1.0}}, std::vector{1.0}), Error);
  CHECK_THROWS_AS(psi_symbol({IsotropicStable{1.2, 1.0, 1}}, std::vector{1.0}), Error);
}

TEST_CASE("Levy path moments") {
  const std::size_t n = 20000;
  std::vector<double> sq(n), counts(n);
  bool integer_paths = true;
  const std::vector<double> grid{0.0, 0.3, 1.0, 2.0};
  for (std::size_t i = 0; i < n; ++i) {
    RngStream a(11, i, StreamPurpose::OuterPath), b(12, i, StreamPurpose::OuterPath);
    const auto bm = sample_levy_path(brownian(), grid, a);
    sq[i] = bm.values[2] * bm.values[2];
    const auto pp = sample_levy_path({Poisson{3.0}}, grid, b);
    integer_paths = integer_paths && pp.monotone;
    for (double v : pp.values) integer_paths = integer_paths && v == std::floor(v);
    counts[i] = pp.values[3];
  }
  CHECK(integer_paths);
  CHECK(estimate(sq).within(2.0, 3.0));
  CHECK(estimate(counts).within(6.0, 3.0));
}

TEST_CASE("Levy path characteristic functions") {
  const std::vector<LevySpec> all{brownian(0.7, 0.4), {IsotropicStable{0.6, 1.0, 1}}, {IsotropicStable{1.0, 0.5, 1}},
                                  {Poisson{2.0}}, {CompensatedPoisson{1.5}}};
  std::uint64_t seed = 20;
  for (const auto& s : all) {
    for (double xi : {0.5, 1.0}) {
      const auto [re, im] = path_ecf(s, xi, 1.0, 20000, seed++);
      const Complex expect = std::exp(-psi_symbol(s, std::vector{xi}));
      CHECK(re.within(expect.real(), 3.0, 1e-12));
      CHECK(im.within(expect.imag(), 3.0, 1e-12));
    }
  }
}

TEST_CASE("isotropic stable in two dimensions") {
  const LevySpec s{IsotropicStable{0.6, 1.0, 2}};
  const std::size_t n = 20000;
  std::vector<double> re(n);
  const std::vector<double> grid{0.0, 1.0};
  for (std::size_t i = 0; i < n; ++i) {
    RngStream rng(31, i, StreamPurpose::OuterPath);
    const auto p = sample_levy_path(s, grid, rng);
    re[i] = std::cos(0.6 * p.values[2] + 0.8 * p.values[3]);
  }
  CHECK(estimate(re).within(std::exp(-1.0), 3.0));
}

TEST_CASE("stream provenance is enforced") {
  const TimeChangeParams tc{0.5, 0.2, 1.0, 1.0, 1.0};
  const std::vector<double> x0{0.0};
  RngStream t1(1, 0, StreamPurpose::TimeChange), p1(1, 0, StreamPurpose::OuterPath);
  CHECK_NOTHROW(sample_time_changed(brownian(), tc, x0, 1.0, 1e-2, t1, p1));
  CHECK_THROWS_AS(sample_time_changed(brownian(), tc, x0, 1.0, 1e-2, t1, t1), Error);
  CHECK_THROWS_AS(sample_time_changed(brownian(), tc, x0, 1.0, 1e-2, p1, t1), Error);
  RngStream aux(1, 0);
  CHECK_THROWS_AS(sample_time_changed(brownian(), tc, x0, 1.0, 1e-2, aux, p1), Error);
}

TEST_CASE("time-changed Poisson mean") {
  const TimeChangeParams tc{0.5, 0.2, 1.0, 1.0, 1.0};
  const double t = 1.0, rate = 2.0;
  const double mean_clock =
      std::pow(t, tc.order()) * specfun::ml_prabhakar({tc.nu, tc.order() + 1.0, tc.delta, -1.0}, -std::pow(t, tc.nu));
  const auto est = mc_expectation([](std::span<const double> x) { return x[0]; }, {Poisson{rate}}, tc,
                                  std::vector{0.0}, t, 20000, 42);
  CHECK(est.within(rate * mean_clock, 3.0));
}

TEST_CASE("time-changed Brownian motion: second moment at delta zero") {
  const TimeChangeParams tc{0.4, 0.3, 0.0, 1.0, 1.0};
  const double t = 1.3, c = 0.8;
  const auto est = mc_expectation([](std::span<const double> x) { return x[0] * x[0]; }, brownian(c), tc,
                                  std::vector{0.0}, t, 20000, 43);
  CHECK(est.within(2.0 * c * std::pow(t, 0.7) / std::tgamma(1.7), 3.0));
}

TEST_CASE("time-changed characteristic function matches the Fourier-Laplace transform") {
  const TimeChangeParams tc{0.5, 0.2, 1.0, 1.0, 1.0};
  const double t = 1.0;
  for (const LevySpec& s : {brownian(), LevySpec{Poisson{2.0}}}) {
    for (double xi : {0.5, 1.0}) {
      const Complex psi = psi_symbol(s, std::vector{xi});
      const Complex expect = laplace::invert_laplace(laplace::fourier_laplace_in_s(tc, psi), t).value;
      const auto est = mc_expectations({[xi](std::span<const double> x) { return std::cos(xi * x[0]); },
                                        [xi](std::span<const double> x) { return std::sin(xi * x[0]); }},
                                       s, tc, std::vector{0.0}, t, 20000, 44);
      CHECK(est[0].within(expect.real(), 3.0, 2e-3));
      CHECK(est[1].within(expect.imag(), 3.0, 2e-3));
    }
  }
}

TEST_CASE("Monte Carlo bookkeeping") {
  const TimeChangeParams tc{0.5, 0.2, 1.0, 1.0, 1.0};
  const std::vector<double> x0{0.25};
  const auto one = mc_expectation([](std::span<const double>) { return 1.0; }, brownian(), tc, x0, 1.0, 500, 7);
  CHECK(one.mean == 1.0);
  CHECK(one.std_error == 0.0);

  auto f = [](std::span<const double> x) { return std::cos(x[0]); };
  auto g = [](std::span<const double> x) { return x[0] * x[0]; };
  auto h = [&](std::span<const double> x) { return 2.0 * f(x) - 3.0 * g(x); };
  const auto e = mc_expectations({f, g, h}, brownian(), tc, x0, 1.0, 2000, 8);
  CHECK(e[2].mean == doctest::Approx(2.0 * e[0].mean - 3.0 * e[1].mean).epsilon(1e-14));

  McOptions serial{1e-3, 1}, wide{1e-3, 4};
  const auto a = sample_time_changed_batch(brownian(), tc, x0, 1.0, 1e-3, 300, 9, 1);
  const auto b = sample_time_changed_batch(brownian(), tc, x0, 1.0, 1e-3, 300, 9, 4);
  CHECK(a == b);
  CHECK(mc_expectation(f, brownian(), tc, x0, 1.0, 300, 9, serial).mean ==
        mc_expectation(f, brownian(), tc, x0, 1.0, 300, 9, wide).mean);
}

TEST_CASE("standard error scales as one over root n") {
  const TimeChangeParams tc{0.5, 0.2, 0.0, 1.0, 1.0};
  auto f = [](std::span<const double> x) { return std::cos(x[0]); };
  double prev = 0.0;
  for (std::size_t n : {1000u, 10000u, 100000u}) {
    const double se = mc_expectation(f, brownian(), tc, std::vector{0.0}, 1.0, n, 10, {1e-2, 0}).std_error;
    if (prev > 0.0) CHECK(std::abs(prev / se / std::sqrt(10.0) - 1.0) < 0.2);
    prev = se;
  }
}

TEST_CASE("Euler scheme for the time-changed SDE") {
  const TimeChangeParams tc{0.5, 0.2, 1.0, 1.0, 1.0};
  SdeCoefficients still{[](double, double) { return 0.0; }, [](double, double) { return 0.0; }, {}};
  SdeCoefficients unit_drift{[](double, double) { return 1.0; }, [](double, double) { return 0.0; }, {}};
  for (std::uint64_t i = 0; i < 20; ++i) {
    PathStreams s1(3, i), s2(3, i);
    CHECK(euler_time_changed_sde(still, tc, 0.7, 1.0, {}, s1).value == 0.7);
    const auto r = euler_time_changed_sde(unit_drift, tc, 0.7, 1.0, {}, s2);
    PathStreams s3(3, i);
    const double clock = stoch::sample_inverse_E(tc, 1.0, 1e-3, s3.time_change).value;
    CHECK(r.time_change == clock);
    CHECK(r.value == doctest::Approx(0.7 + clock).epsilon(1e-12));
    CHECK(r.step <= std::max(clock / 1000.0, 1e-6) * (1.0 + 1e-12));
  }

  PathStreams s(4, 0);
  CHECK_THROWS_AS(euler_time_changed_sde(still, tc, 0.0, 1.0, {1e-3, 10.0, false}, s), Error);
  PathStreams s5(4, 0);
  const auto refined = euler_time_changed_sde(still, tc, 0.0, 1.0, {1e-3, 10.0, true}, s5);
  CHECK(refined.steps == 10);
}

TEST_CASE("Euler scheme agrees in law with the exact time-changed Brownian motion") {
  const TimeChangeParams tc{0.5, 0.2, 1.0, 1.0, 1.0};
  const double c = 0.5;
  SdeCoefficients coeffs{[](double, double) { return 0.0; }, [c](double, double) { return std::sqrt(2.0 * c); }, {}};
  const std::size_t n = 10000;
  std::vector<double> euler(n);
  for (std::size_t i = 0; i < n; ++i) {
    PathStreams s(60, i);
    euler[i] = euler_time_changed_sde(coeffs, tc, 0.0, 1.0, {1e-3, 0.0, true}, s).value;
  }
  const auto exact = sample_time_changed_batch(brownian(c), tc, std::vector{0.0}, 1.0, 1e-3, n, 61, 1);
  CHECK(ks_two_sample(euler, exact).p_value > 0.01);
}

TEST_CASE("Euler scheme with Poisson jumps") {
  const TimeChangeParams tc{0.5, 0.2, 1.0, 1.0, 1.0};
  const double rate = 2.0;
  SdeCoefficients plain{[](double, double) { return 0.0; }, [](double, double) { return 0.0; },
                        SdeJumps{rate, [](double, double) { return 1.0; }, false}};
  SdeCoefficients comp = plain;
  comp.jumps->compensated = true;
  const std::size_t n = 10000;
  std::vector<double> a(n), b(n), ref(n);
  for (std::size_t i = 0; i < n; ++i) {
    PathStreams s1(70, i), s2(71, i);
    a[i] = euler_time_changed_sde(plain, tc, 0.0, 1.0, {}, s1).value;
    b[i] = euler_time_changed_sde(comp, tc, 0.0, 1.0, {}, s2).value;
  }
  const auto exact = sample_time_changed_batch({Poisson{rate}}, tc, std::vector{0.0}, 1.0, 1e-3, n, 72, 1);
  CHECK(ks_two_sample(a, exact).p_value > 0.01);
  CHECK(estimate(b).within(0.0, 3.0));
}

TEST_CASE("generators") {
  const std::vector<double> f{0.0, 1.0, 4.0, 2.0, 0.0, 0.0};
  const auto g = apply_generator({Poisson{1.5}}, f);
  const std::vector<double> expect{0.0, 1.5, 4.5, -3.0, -3.0, 0.0};
  CHECK(g.applied == expect);

  std::vector<double> q;
  for (int k = 0; k < 11; ++k) q.push_back(std::pow(-1.0 + 0.2 * k, 2));
  const auto b = apply_generator({BrownianDrift{{0.5}, 2.0}}, q, -1.0, 0.2);
  REQUIRE(b.applied.size() == 9);
  for (std::size_t k = 0; k < b.points.size(); ++k) {
    CHECK(b.applied[k] == doctest::Approx(-0.5 * 2.0 * b.points[k] - 2.0 * 2.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(apply_generator({CompensatedPoisson{1.0}}, f), Error);
}

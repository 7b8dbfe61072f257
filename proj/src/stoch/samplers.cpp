#include <algorithm>
#include <array>
#include <cmath>

#include "fracstoch/error.hpp"
#include "fracstoch/simd/kernels.hpp"
#include "fracstoch/stoch.hpp"

namespace fracstoch::stoch {

namespace {

constexpr std::size_t kBlock = 256;
constexpr std::size_t kHardStepCap = 2'000'000'000;

/// Generates increments of 𝔙 (or of 𝒱 when the outer clock is off) over
/// steps of equal length, one block at a time.
class Stepper {
 public:
  Stepper(const TimeChangeParams& tc, bool outer_clock) : tc_(tc), outer_(outer_clock) {
    const int n = tc.n();
    for (int r = 0; r <= n; ++r) {
      orders_.push_back(tc.inner_order(r));
      coefs_.push_back(tc.inner_coefficient(r));
    }
  }

  /// Fills `out` with increments over steps of length `dt` each.
  void fill(double dt, RngStream& rng, std::span<double> out) {
    const std::size_t m = out.size();
    clock_.resize(m);
    draws_.resize(m);
    const double outer = tc_.outer_order();
    if (outer_ && outer < 1.0) {
      standard_stable(outer, rng, clock_);
      const double scale = std::pow(dt, 1.0 / outer);
      for (double& c : clock_) c *= scale;
    } else {
      std::fill(clock_.begin(), clock_.end(), dt);
    }
    std::fill(out.begin(), out.end(), 0.0);
    const auto& k = simd::kernels();
    for (std::size_t r = 0; r < orders_.size(); ++r) {
      standard_stable(orders_[r], rng, draws_);
      k.scaled_power_accumulate(coefs_[r], 1.0 / orders_[r], clock_.data(), draws_.data(), out.data(), m);
    }
  }

 private:
  TimeChangeParams tc_;
  bool outer_;
  std::vector<double> orders_;
  std::vector<double> coefs_;
  std::vector<double> clock_;
  std::vector<double> draws_;
};

PassageSample first_passage(Stepper& stepper, double level, double resolution, std::size_t cap, RngStream& rng) {
  std::array<double, kBlock> incr{};
  double position = 0.0;
  std::size_t steps = 0;
  while (steps < cap) {
    stepper.fill(resolution, rng, incr);
    for (std::size_t i = 0; i < kBlock; ++i) {
      position += incr[i];
      ++steps;
      if (position > level) {
        return {(static_cast<double>(steps) - 0.5) * resolution, resolution, steps};
      }
    }
  }
  fail(ErrorKind::HorizonExceeded, "path did not cross level " + std::to_string(level) + " within " +
                                       std::to_string(cap) + " steps");
}

}  // namespace

void SamplePath::check() const {
  require(dim >= 1, "path dimension must be positive");
  require(values.size() == times.size() * dim, "path values and times disagree in length");
  for (std::size_t i = 1; i < times.size(); ++i) require(times[i] > times[i - 1], "path times must increase");
  if (monotone) {
    require(times.empty() || (times.front() == 0.0 && values.front() == 0.0), "subordinator paths start at 0");
    for (std::size_t i = 1; i < values.size(); ++i) require(values[i] >= values[i - 1], "subordinator path decreased");
  }
}

void standard_stable(double alpha, RngStream& rng, std::span<double> out) {
  require(alpha > 0.0 && alpha <= 1.0, "stable order must lie in (0,1]");
  thread_local std::vector<double> u, v;
  const std::size_t n = out.size();
  u.resize(n);
  v.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = rng.uniform();
    v[i] = rng.uniform();
  }
  simd::kernels().positive_stable(alpha, u.data(), v.data(), out.data(), n);
}

double sample_stable_increment(double alpha, double dt, RngStream& rng) {
  require(dt > 0.0, "time step must be positive");
  double s = 0.0;
  standard_stable(alpha, rng, std::span<double>(&s, 1));
  return std::pow(dt, 1.0 / alpha) * s;
}

SamplePath sample_frakV_path(const TimeChangeParams& tc, std::span<const double> grid, RngStream& rng) {
  tc.validate_simulation();
  require(!grid.empty() && grid.front() == 0.0, "grid must start at 0");
  SamplePath path;
  path.times.assign(grid.begin(), grid.end());
  path.values.assign(grid.size(), 0.0);
  path.monotone = true;
  Stepper stepper(tc, true);
  double acc = 0.0;
  double incr = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double dt = grid[i] - grid[i - 1];
    require(dt > 0.0, "grid must increase strictly");
    stepper.fill(dt, rng, std::span<double>(&incr, 1));
    acc += incr;
    path.values[i] = acc;
  }
  path.check();
  return path;
}

double sample_frakV(const TimeChangeParams& tc, double t, RngStream& rng) {
  tc.validate_simulation();
  require(t > 0.0, "t must be positive");
  Stepper stepper(tc, true);
  double v = 0.0;
  stepper.fill(t, rng, std::span<double>(&v, 1));
  return v;
}

double sample_inner_sum(const TimeChangeParams& tc, double x, RngStream& rng) {
  tc.validate_simulation();
  require(x > 0.0, "x must be positive");
  Stepper stepper(tc, false);
  double v = 0.0;
  stepper.fill(x, rng, std::span<double>(&v, 1));
  return v;
}

std::size_t passage_step_cap(const TimeChangeParams& tc, double t, double resolution) {
  // The inverse process grows like t^{γ+ν} for small t and like
  // t^{γ+ν−δν} λ^{−δ} for large t; the horizon covers both with a wide margin.
  const double growth = std::max(1.0, std::pow(std::max(t, 1.0), tc.order()));
  const double rate = std::max(1.0, std::pow(tc.lambda_rate, -std::max(tc.delta, 0.0)));
  const double horizon = 200.0 * growth * rate;
  return static_cast<std::size_t>(std::min(std::ceil(horizon / resolution), static_cast<double>(kHardStepCap)));
}

PassageSample sample_inverse_E(const TimeChangeParams& tc, double t, double resolution, RngStream& rng) {
  tc.validate_simulation();
  require(t > 0.0 && resolution > 0.0, "t and resolution must be positive");
  Stepper stepper(tc, true);
  return first_passage(stepper, t, resolution, passage_step_cap(tc, t, resolution), rng);
}

PassageSample sample_K(const TimeChangeParams& tc, double t, double resolution, RngStream& rng) {
  tc.validate_simulation();
  require(t > 0.0 && resolution > 0.0, "t and resolution must be positive");
  Stepper stepper(tc, false);
  return first_passage(stepper, t, resolution, passage_step_cap(tc, t, resolution), rng);
}

PassageSample sample_inverse_E_composed(const TimeChangeParams& tc, double t, double resolution, RngStream& rng) {
  PassageSample k = sample_K(tc, t, resolution, rng);
  k.value = sample_inverse_stable_exact(tc.outer_order(), k.value, rng);
  return k;
}

PassageSample sample_inverse_stable_passage(double alpha, double t, double resolution, RngStream& rng) {
  require(alpha > 0.0 && alpha < 1.0, "stable order must lie in (0,1)");
  TimeChangeParams single;
  single.gamma = alpha / 2.0;
  single.nu = alpha / 2.0;
  single.delta = 0.0;
  return sample_K(single, t, resolution, rng);
}

double sample_inverse_stable_exact(double delta, double t, RngStream& rng) {
  require(delta > 0.0 && delta <= 1.0, "order must lie in (0,1]");
  require(t > 0.0, "t must be positive");
  if (delta == 1.0) return t;
  double v = 0.0;
  standard_stable(delta, rng, std::span<double>(&v, 1));
  return std::pow(t / v, delta);
}

}  // namespace fracstoch::stoch

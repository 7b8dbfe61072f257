#include "fracstoch/levy.hpp"

#include <cmath>
#include <sstream>

#include "fracstoch/error.hpp"
#include "fracstoch/parallel.hpp"

namespace fracstoch::levy {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double norm2(std::span<const double> xi) {
  double s = 0.0;
  for (double v : xi) s += v * v;
  return s;
}

}  // namespace

int LevySpec::dim() const {
  return std::visit(Overloaded{[](const BrownianDrift& b) { return static_cast<int>(b.a.size()); },
                               [](const IsotropicStable& s) { return s.dim; },
                               [](const Poisson&) { return 1; }, [](const CompensatedPoisson&) { return 1; }},
                    variant);
}

void LevySpec::validate() const {
  std::visit(Overloaded{[](const BrownianDrift& b) {
                          require(!b.a.empty(), "Brownian drift needs a non-empty drift vector");
                          require(b.c > 0.0, "diffusivity c must be positive");
                          for (double v : b.a) require(std::isfinite(v), "drift must be finite");
                        },
                        [](const IsotropicStable& s) {
                          require(s.alpha_s > 0.0 && s.alpha_s <= 1.0, "alpha_s must lie in (0,1]");
                          require(s.scale > 0.0, "scale must be positive");
                          require(s.dim >= 1, "dimension must be positive");
                        },
                        [](const Poisson& p) { require(p.rate > 0.0, "Poisson rate must be positive"); },
                        [](const CompensatedPoisson& p) { require(p.rate > 0.0, "Poisson rate must be positive"); }},
             variant);
}

std::string LevySpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(Overloaded{[&](const BrownianDrift& b) {
                          os << "brownian-drift(c=" << b.c << ",a=[";
                          for (std::size_t i = 0; i < b.a.size(); ++i) os << (i ? "," : "") << b.a[i];
                          os << "])";
                        },
                        [&](const IsotropicStable& s) {
                          os << "isotropic-stable(alpha_s=" << s.alpha_s << ",scale=" << s.scale << ",dim=" << s.dim
                             << ")";
                        },
                        [&](const Poisson& p) { os << "poisson(rate=" << p.rate << ")"; },
                        [&](const CompensatedPoisson& p) { os << "compensated-poisson(rate=" << p.rate << ")"; }},
             variant);
  return os.str();
}

Complex psi_symbol(const LevySpec& spec, std::span<const double> xi) {
  spec.validate();
  require(static_cast<int>(xi.size()) == spec.dim(), "frequency dimension does not match the process");
  const Complex i(0.0, 1.0);
  return std::visit(Overloaded{[&](const BrownianDrift& b) {
                                 double dot = 0.0;
                                 for (std::size_t k = 0; k < xi.size(); ++k) dot += b.a[k] * xi[k];
                                 return i * dot + b.c * norm2(xi);
                               },
                               [&](const IsotropicStable& s) {
                                 return Complex(s.scale * std::pow(norm2(xi), s.alpha_s), 0.0);
                               },
                               [&](const Poisson& p) { return p.rate * (1.0 - std::exp(i * xi[0])); },
                               [&](const CompensatedPoisson& p) {
                                 return p.rate * (1.0 + i * xi[0] - std::exp(i * xi[0]));
                               }},
                    spec.variant);
}

void add_increment(const LevySpec& spec, double dt, RngStream& rng, std::span<double> state) {
  require(dt >= 0.0, "time span must be non-negative");
  require(static_cast<int>(state.size()) == spec.dim(), "state dimension does not match the process");
  if (dt == 0.0) return;
  std::visit(Overloaded{[&](const BrownianDrift& b) {
                          const double sd = std::sqrt(2.0 * b.c * dt);
                          for (std::size_t k = 0; k < state.size(); ++k) state[k] += -b.a[k] * dt + sd * rng.normal();
                        },
                        [&](const IsotropicStable& s) {
                          const double clock = s.alpha_s < 1.0
                                                   ? stoch::sample_stable_increment(s.alpha_s, s.scale * dt, rng)
                                                   : s.scale * dt;
                          const double sd = std::sqrt(2.0 * clock);
                          for (double& v : state) v += sd * rng.normal();
                        },
                        [&](const Poisson& p) { state[0] += static_cast<double>(rng.poisson(p.rate * dt)); },
                        [&](const CompensatedPoisson& p) {
                          state[0] += static_cast<double>(rng.poisson(p.rate * dt)) - p.rate * dt;
                        }},
             spec.variant);
}

stoch::SamplePath sample_levy_path(const LevySpec& spec, std::span<const double> grid, RngStream& rng) {
  spec.validate();
  require(!grid.empty() && grid.front() == 0.0, "grid must start at 0");
  const auto d = static_cast<std::size_t>(spec.dim());
  stoch::SamplePath path;
  path.dim = d;
  path.times.assign(grid.begin(), grid.end());
  path.values.assign(grid.size() * d, 0.0);
  path.monotone = std::holds_alternative<Poisson>(spec.variant);
  std::vector<double> state(d, 0.0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double dt = grid[i] - grid[i - 1];
    require(dt > 0.0, "grid must increase strictly");
    add_increment(spec, dt, rng, state);
    std::copy(state.begin(), state.end(), path.values.begin() + static_cast<std::ptrdiff_t>(i * d));
  }
  path.check();
  return path;
}

std::vector<double> sample_time_changed(const LevySpec& spec, const TimeChangeParams& tc, std::span<const double> x0,
                                        double t, double resolution, RngStream& time_rng, RngStream& path_rng) {
  spec.validate();
  require(&time_rng != &path_rng, "time change and outer path must use distinct streams");
  require(time_rng.id().purpose == StreamPurpose::TimeChange, "time-change stream must carry the TimeChange role");
  require(path_rng.id().purpose == StreamPurpose::OuterPath, "outer path stream must carry the OuterPath role");
  require(static_cast<int>(x0.size()) == spec.dim(), "start point dimension does not match the process");
  const double clock = stoch::sample_inverse_E(tc, t, resolution, time_rng).value;
  std::vector<double> x(x0.begin(), x0.end());
  add_increment(spec, clock, path_rng, x);
  return x;
}

std::vector<double> sample_time_changed(const LevySpec& spec, const TimeChangeParams& tc, std::span<const double> x0,
                                        double t, double resolution, PathStreams& streams) {
  return sample_time_changed(spec, tc, x0, t, resolution, streams.time_change, streams.outer_path);
}

std::vector<double> sample_time_changed_batch(const LevySpec& spec, const TimeChangeParams& tc,
                                              std::span<const double> x0, double t, double resolution,
                                              std::size_t n_paths, std::uint64_t seed, unsigned threads) {
  spec.validate();
  tc.validate_simulation();
  const auto d = static_cast<std::size_t>(spec.dim());
  std::vector<double> out(n_paths * d);
  parallel_for(n_paths, threads, [&](std::size_t i) {
    PathStreams streams(seed, i);
    const auto x = sample_time_changed(spec, tc, x0, t, resolution, streams);
    std::copy(x.begin(), x.end(), out.begin() + static_cast<std::ptrdiff_t>(i * d));
  });
  return out;
}

std::vector<McEstimate> mc_expectations(const std::vector<Payoff>& fs, const LevySpec& spec, const TimeChangeParams& tc,
                                        std::span<const double> x0, double t, std::size_t n_paths, std::uint64_t seed,
                                        const McOptions& opt) {
  require(n_paths >= 1, "need at least one path");
  const auto d = static_cast<std::size_t>(spec.dim());
  const auto points = sample_time_changed_batch(spec, tc, x0, t, opt.resolution, n_paths, seed, opt.threads);
  std::vector<McEstimate> out;
  std::vector<double> values(n_paths);
  for (const auto& f : fs) {
    for (std::size_t i = 0; i < n_paths; ++i) values[i] = f(std::span<const double>(points.data() + i * d, d));
    out.push_back(estimate(values));
  }
  return out;
}

McEstimate mc_expectation(const Payoff& f, const LevySpec& spec, const TimeChangeParams& tc,
                          std::span<const double> x0, double t, std::size_t n_paths, std::uint64_t seed,
                          const McOptions& opt) {
  return mc_expectations({f}, spec, tc, x0, t, n_paths, seed, opt).front();
}

EulerSample euler_time_changed_sde(const SdeCoefficients& coeffs, const TimeChangeParams& tc, double x0, double t,
                                   const EulerOptions& opt, PathStreams& streams) {
  require(static_cast<bool>(coeffs.drift) && static_cast<bool>(coeffs.diffusion), "drift and diffusion are required");
  require(opt.step >= 0.0, "Euler step must be non-negative");
  if (coeffs.jumps) {
    require(coeffs.jumps->rate >= 0.0, "jump rate must be non-negative");
    require(static_cast<bool>(coeffs.jumps->size), "jump size function is required");
  }
  EulerSample out;
  out.time_change = stoch::sample_inverse_E(tc, t, opt.resolution, streams.time_change).value;
  const double horizon = out.time_change;
  double h = opt.step > 0.0 ? opt.step : std::max(horizon / 1000.0, 1e-6);
  if (h > horizon / 10.0) {
    if (!opt.auto_refine) {
      fail(ErrorKind::StepTooLarge, "Euler step " + std::to_string(h) + " exceeds a tenth of the drawn time " +
                                        std::to_string(horizon));
    }
    h = horizon / 10.0;
  }
  const auto n = static_cast<std::size_t>(std::ceil(horizon / h));
  h = horizon / static_cast<double>(n);
  RngStream& rng = streams.outer_path;
  const double sqrt_h = std::sqrt(h);
  double y = x0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = static_cast<double>(i) * h;
    const double y0 = y;
    y += coeffs.drift(s, y0) * h + coeffs.diffusion(s, y0) * sqrt_h * rng.normal();
    if (coeffs.jumps && coeffs.jumps->rate > 0.0) {
      const auto& j = *coeffs.jumps;
      // Events inside the step are applied one after another, each at the
      // current post-jump state.
      const std::uint64_t events = rng.poisson(j.rate * h);
      for (std::uint64_t e = 0; e < events; ++e) y += j.size(s, y);
      if (j.compensated) y -= j.rate * j.size(s, y0) * h;
    }
  }
  out.value = y;
  out.step = h;
  out.steps = n;
  return out;
}

GeneratorSample apply_generator(const LevySpec& spec, std::span<const double> values, double x_first, double spacing) {
  spec.validate();
  require(!values.empty(), "generator needs function values");
  GeneratorSample g;
  g.values.assign(values.begin(), values.end());
  const std::size_t m = values.size();
  if (const auto* p = std::get_if<Poisson>(&spec.variant)) {
    for (std::size_t k = 0; k < m; ++k) {
      g.points.push_back(static_cast<double>(k));
      g.applied.push_back(p->rate * (values[k] - (k > 0 ? values[k - 1] : 0.0)));
    }
    return g;
  }
  require(spec.dim() == 1, "grid generators are one-dimensional");
  require(spacing > 0.0, "grid spacing must be positive");
  require(m >= 3, "grid generator needs at least three points");
  double a = 0.0;
  double c = 0.0;
  if (const auto* b = std::get_if<BrownianDrift>(&spec.variant)) {
    a = b->a[0];
    c = b->c;
  } else if (const auto* s = std::get_if<IsotropicStable>(&spec.variant)) {
    require(s->alpha_s == 1.0, "only the local case alpha_s = 1 has a grid generator");
    c = s->scale;
  } else {
    fail(ErrorKind::InvalidParams, "compensated Poisson has no lattice generator (the drift is not a lattice shift)");
  }
  // Multiplier Ψ(ξ) = iaξ + cξ² corresponds to −a∂ − c∂² under ∫e^{iξx}.
  for (std::size_t k = 1; k + 1 < m; ++k) {
    const double d1 = (values[k + 1] - values[k - 1]) / (2.0 * spacing);
    const double d2 = (values[k + 1] - 2.0 * values[k] + values[k - 1]) / (spacing * spacing);
    g.points.push_back(x_first + static_cast<double>(k) * spacing);
    g.applied.push_back(-a * d1 - c * d2);
  }
  g.values.assign(values.begin() + 1, values.end() - 1);
  return g;
}

}  // namespace fracstoch::levy

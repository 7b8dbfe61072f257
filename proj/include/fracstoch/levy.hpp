#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fracstoch/params.hpp"
#include "fracstoch/rng.hpp"
#include "fracstoch/stats.hpp"
#include "fracstoch/stoch.hpp"

namespace fracstoch::levy {

/// Ψ(ξ) = i⟨a,ξ⟩ + c|ξ|²: drift −a, covariance Q = 2c·I per unit time.
struct BrownianDrift {
  std::vector<double> a{0.0};
  double c = 1.0;
};

/// Ψ(ξ) = scale·|ξ|^{2α_s}, realized as Brownian motion run at an
/// independent α_s-stable time.
struct IsotropicStable {
  double alpha_s = 1.0;
  double scale = 1.0;
  int dim = 1;
};

/// Ψ(ξ) = λ_p(1 − e^{iξ}).
struct Poisson {
  double rate = 1.0;
};

/// Ψ(ξ) = λ_p(1 + iξ − e^{iξ}): N_t − λ_p t.
struct CompensatedPoisson {
  double rate = 1.0;
};

struct LevySpec {
  std::variant<BrownianDrift, IsotropicStable, Poisson, CompensatedPoisson> variant;

  int dim() const;
  void validate() const;
  std::string describe() const;
};

using Complex = std::complex<double>;

/// Lévy symbol with E e^{i⟨ξ,X_t⟩} = e^{−tΨ(ξ)}.
Complex psi_symbol(const LevySpec& spec, std::span<const double> xi);

/// Adds one increment over a time span dt ≥ 0 to `state` (length dim()).
void add_increment(const LevySpec& spec, double dt, RngStream& rng, std::span<double> state);

/// Path on a grid starting at 0; values are stored point-major, dim() per time.
stoch::SamplePath sample_levy_path(const LevySpec& spec, std::span<const double> grid, RngStream& rng);

/// The pair of streams feeding one time-changed sample. Built from a single
/// (seed, index), the two roles can never share an engine.
struct PathStreams {
  RngStream time_change;
  RngStream outer_path;

  PathStreams(std::uint64_t master_seed, std::uint64_t index)
      : time_change(master_seed, index, StreamPurpose::TimeChange),
        outer_path(master_seed, index, StreamPurpose::OuterPath) {}
};

/// One draw of x0 + Ξ at the independent random time 𝔈_t (first passage
/// at the given resolution). The time-change and path streams must carry the
/// TimeChange and OuterPath roles and otherwise identical provenance checks
/// are enforced: sharing or swapping them throws InvalidParams.
std::vector<double> sample_time_changed(const LevySpec& spec, const TimeChangeParams& tc, std::span<const double> x0,
                                        double t, double resolution, RngStream& time_rng, RngStream& path_rng);

std::vector<double> sample_time_changed(const LevySpec& spec, const TimeChangeParams& tc, std::span<const double> x0,
                                        double t, double resolution, PathStreams& streams);

/// Runs `n_paths` independent samples and returns them path-major
/// (n_paths × dim). Path i uses PathStreams(seed, i), so the output does not
/// depend on `threads` (0 means all cores).
std::vector<double> sample_time_changed_batch(const LevySpec& spec, const TimeChangeParams& tc,
                                              std::span<const double> x0, double t, double resolution,
                                              std::size_t n_paths, std::uint64_t seed, unsigned threads = 0);

using Payoff = std::function<double(std::span<const double>)>;

struct McOptions {
  double resolution = 1e-3;
  unsigned threads = 0;
};

/// Monte Carlo estimate of E f(x0 + Ξ_{𝔈_t}); aggregation is in path order.
McEstimate mc_expectation(const Payoff& f, const LevySpec& spec, const TimeChangeParams& tc,
                          std::span<const double> x0, double t, std::size_t n_paths, std::uint64_t seed,
                          const McOptions& opt = {});

/// Applies the same payoff family to one batch of samples (common random
/// numbers), one estimate per payoff.
std::vector<McEstimate> mc_expectations(const std::vector<Payoff>& fs, const LevySpec& spec, const TimeChangeParams& tc,
                                        std::span<const double> x0, double t, std::size_t n_paths, std::uint64_t seed,
                                        const McOptions& opt = {});

/// Compound-Poisson jump term of the inner SDE: at each event of a rate-λ
/// Poisson clock the state jumps by size(s, y−); the compensated form also
/// subtracts λ·size(s, y) ds.
struct SdeJumps {
  double rate = 0.0;
  std::function<double(double, double)> size;
  bool compensated = false;
};

struct SdeCoefficients {
  std::function<double(double, double)> drift;      // b(s, y)
  std::function<double(double, double)> diffusion;  // σ(s, y)
  std::optional<SdeJumps> jumps;
};

struct EulerOptions {
  double resolution = 1e-3;  // first-passage step for 𝔈_t
  double step = 0.0;         // inner Euler step h; 0 selects max(E/1000, 1e-6)
  bool auto_refine = true;   // shrink h to E/10 instead of failing with StepTooLarge
};

struct EulerSample {
  double value = 0.0;
  double time_change = 0.0;  // drawn 𝔈_t
  double step = 0.0;         // effective h
  std::size_t steps = 0;
};

/// X_t = Y_{𝔈_t}: draws 𝔈_t, then runs Euler–Maruyama for
/// dY = b(s,Y)ds + σ(s,Y)dW (+ jumps) on [0, 𝔈_t].
EulerSample euler_time_changed_sde(const SdeCoefficients& coeffs, const TimeChangeParams& tc, double x0, double t,
                                   const EulerOptions& opt, PathStreams& streams);

/// Generator values on a lattice or uniform grid.
struct GeneratorSample {
  std::vector<double> points;
  std::vector<double> values;
  std::vector<double> applied;
};

/// 𝒜f for the operator with Fourier multiplier Ψ, i.e. ∫e^{iξx}(𝒜f)(x)dx =
/// Ψ(ξ)·f̂(ξ). Poisson acts on f(0), f(1), … as λ_p(f(x) − f(x−1)) with
/// f(−1) = 0 (exact). BrownianDrift and IsotropicStable with α_s = 1 use
/// second-order central differences on the uniform grid x_k = x_first + k·h,
/// interior points only. Other variants throw InvalidParams.
GeneratorSample apply_generator(const LevySpec& spec, std::span<const double> values, double x_first = 0.0,
                                double spacing = 1.0);

}  // namespace fracstoch::levy

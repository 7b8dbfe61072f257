#include "fracstoch/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "fracstoch/error.hpp"
#include "fracstoch/laplace.hpp"
#include "fracstoch/levy.hpp"
#include "fracstoch/parallel.hpp"
#include "fracstoch/pde.hpp"
#include "fracstoch/specfun.hpp"
#include "fracstoch/stats.hpp"
#include "fracstoch/stoch.hpp"

namespace fracstoch::verify {

namespace {

using laplace::Complex;
using laplace::InversionConfig;
using laplace::Method;
using laplace::Transform;

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

/// Accumulates checks; the criterion passes when every check does.
class Recorder {
 public:
  explicit Recorder(CriterionResult& r) : r_(r) {}

  void relative(const std::string& label, double observed, double expected, double tol) {
    add(label, observed, expected, tol, rel_err(observed, expected) < tol);
  }
  void absolute(const std::string& label, double observed, double expected, double tol) {
    add(label, observed, expected, tol, std::abs(observed - expected) < tol);
  }
  void exact(const std::string& label, double observed, double expected) {
    add(label, observed, expected, 0.0, observed == expected);
  }
  /// |mean − expected| within max(k·stderr, floor).
  void monte_carlo(const std::string& label, const McEstimate& e, double expected, double k, double floor = 0.0) {
    add(label, e.mean, expected, std::max(k * e.std_error, floor), e.within(expected, k, floor));
  }
  /// Records the KS p-value against the 1% level.
  void ks(const std::string& label, const KsResult& k) {
    add(label + " D=" + fmt(k.statistic), k.p_value, 0.01, 0.0, k.p_value > 0.01);
  }

 private:
  void add(const std::string& label, double obs, double exp, double tol, bool pass) {
    r_.checks.push_back({label, obs, exp, tol, pass});
  }
  CriterionResult& r_;
};

std::size_t scaled(std::size_t n, const SuiteOptions& opt) { return opt.tier == Tier::Full ? n : n / 10; }

/// Stream master seed for the `block`-th sample set of criterion `id`;
/// blocks never share engines.
std::uint64_t block_seed(const SuiteOptions& opt, int id, int block) {
  return opt.seed * 1'000'003ull + static_cast<std::uint64_t>(id) * 1'000ull + static_cast<std::uint64_t>(block);
}

std::vector<double> draws(std::size_t n, std::uint64_t seed, StreamPurpose purpose, unsigned threads,
                          const std::function<double(RngStream&)>& f) {
  std::vector<double> out(n);
  parallel_for(n, threads, [&](std::size_t i) {
    RngStream rng(seed, i, purpose);
    out[i] = f(rng);
  });
  return out;
}

McEstimate laplace_functional(const std::vector<double>& x, double z) {
  std::vector<double> e(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) e[i] = std::exp(-z * x[i]);
  return estimate(e);
}

std::vector<double> indicator(const std::vector<double>& x, const std::function<bool(double)>& p) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = p(x[i]) ? 1.0 : 0.0;
  return out;
}

constexpr double kResolution = 1e-3;

void laplace_identity(Recorder& rec) {
  const double p = 2.0, zeta = -1.0;
  for (double alpha : {0.4, 0.7, 1.0}) {
    for (double eta : {0.8, 1.5}) {
      for (double xi : {0.5, 2.0}) {
        const specfun::PrabhakarParams pp{alpha, eta, xi, zeta};
        auto f = [&](double t) { return std::pow(t, eta - 1.0) * specfun::ml_prabhakar(pp, zeta * std::pow(t, alpha)); };
        const double expect = std::pow(p, -eta) * std::pow(1.0 - zeta * std::pow(p, -alpha), -xi);
        rec.relative("alpha=" + fmt(alpha) + " eta=" + fmt(eta) + " xi=" + fmt(xi), laplace::forward_laplace(f, p, 1e-12),
                     expect, 1e-8);
      }
    }
  }
}

void saigo_convolution(Recorder& rec) {
  struct Point {
    double beta;
    specfun::PrabhakarParams p;
    double theta, t;
  };
  const Point points[] = {{1.5, {0.7, 1.0, 2.0, -1.0}, 0.9, 1.0},
                          {0.8, {0.5, 1.0, 0.6, -0.8}, 0.6, 1.3},
                          {0.8, {0.5, 1.0, 0.6, -0.8}, 1.7, 1.3},
                          {1.0, {0.7, 1.0, 2.0, -1.0}, 0.9, 1.2},
                          {2.5, {0.9, 1.0, 1.5, -0.5}, 1.2, 0.7}};
  int k = 0;
  for (const auto& q : points) {
    rec.relative("convolution point " + std::to_string(++k), specfun::prabhakar_convolve(q.beta, q.p, q.theta, q.t),
                 specfun::prabhakar_convolve_closed(q.beta, q.p, q.theta, q.t), 1e-6);
  }
  const specfun::PrabhakarParams p{0.7, 0.4, 1.2, -0.9};
  const double a = specfun::prabhakar_derivative_via_convolution(p, 1.8, 0.6, 1.2);
  const double b = specfun::prabhakar_derivative_via_convolution(p, 1.8, 1.6, 1.2);
  rec.relative("derivative theta=0.6 vs theta=1.6", a, b, 1e-6);
  rec.relative("derivative theta=0.6 vs closed form", a, specfun::prabhakar_derivative_monomial(p, 1.8, 1.2), 1e-6);
}

void frakV_functional(Recorder& rec, const SuiteOptions& opt) {
  const TimeChangeParams sets[] = {{0.5, 0.2, 1.0, 1.0, 1.0}, {0.4, 0.1, 2.0, 1.0, 1.0}, {0.45, 0.2, 1.5, 1.0, 1.0}};
  const std::size_t n = scaled(100000, opt);
  int block = 0;
  for (const auto& tc : sets) {
    const auto v = draws(n, block_seed(opt, 3, block++), StreamPurpose::TimeChange, opt.threads,
                         [&](RngStream& r) { return stoch::sample_frakV(tc, 1.0, r); });
    for (double z : {0.5, 1.0, 2.0}) {
      const double expect = std::exp(-std::pow(z, tc.order()) * std::pow(1.0 + std::pow(z, -tc.nu), tc.delta));
      rec.monte_carlo("(" + fmt(tc.gamma) + "," + fmt(tc.nu) + "," + fmt(tc.delta) + ") z=" + fmt(z),
                      laplace_functional(v, z), expect, 3.0);
    }
  }
}

void duality(Recorder& rec, const SuiteOptions& opt) {
  const TimeChangeParams tc{0.5, 0.2, 1.0, 1.0, 1.0};
  const std::size_t n = scaled(10000, opt);
  const std::pair<double, double> pairs[] = {{0.3, 0.5}, {0.6, 1.0}, {1.0, 1.0}, {1.2, 2.0}};
  int block = 0;
  for (const auto& [x, t] : pairs) {
    const auto e = draws(n, block_seed(opt, 4, block++), StreamPurpose::TimeChange, opt.threads,
                         [&](RngStream& r) { return stoch::sample_inverse_E(tc, t, kResolution, r).value; });
    const auto v = draws(n, block_seed(opt, 4, block++), StreamPurpose::TimeChange, opt.threads,
                         [&](RngStream& r) { return stoch::sample_frakV(tc, x, r); });
    rec.ks("x=" + fmt(x) + " t=" + fmt(t), ks_two_sample(indicator(e, [x](double y) { return y > x; }),
                                                           indicator(v, [t](double y) { return y < t; })));
  }
}

void subordination(Recorder& rec, const SuiteOptions& opt) {
  const std::size_t n = scaled(10000, opt);
  int block = 0;
  for (double delta : {0.7, 1.6}) {
    const TimeChangeParams tc{0.3, 0.2, delta, 1.0, 1.0};
    const auto direct = draws(n, block_seed(opt, 5, block++), StreamPurpose::TimeChange, opt.threads,
                              [&](RngStream& r) { return stoch::sample_inverse_E(tc, 1.0, kResolution, r).value; });
    const auto composed =
        draws(n, block_seed(opt, 5, block++), StreamPurpose::TimeChange, opt.threads,
              [&](RngStream& r) { return stoch::sample_inverse_E_composed(tc, 1.0, kResolution, r).value; });
    rec.ks("delta=" + fmt(delta), ks_two_sample(direct, composed));
  }
}

void inverse_stable(Recorder& rec, const SuiteOptions& opt) {
  const TimeChangeParams tc{0.5, 0.2, 0.0, 1.0, 1.0};
  const std::size_t n = scaled(100000, opt);
  const double t = 1.0;
  const auto e = draws(n, block_seed(opt, 6, 0), StreamPurpose::TimeChange, opt.threads,
                       [&](RngStream& r) { return stoch::sample_inverse_E(tc, t, kResolution, r).value; });
  for (double z : {0.5, 1.0, 2.0}) {
    rec.monte_carlo("z=" + fmt(z), laplace_functional(e, z),
                    specfun::mittag_leffler(tc.order(), 1.0, -z * std::pow(t, tc.order())), 3.0);
  }
}

void abstract_solution(Recorder& rec, const SuiteOptions& opt) {
  const TimeChangeParams tc{0.5, 0.2, 1.0, 1.0, 1.0};
  const std::size_t n = scaled(100000, opt);
  const double t = 1.0;
  const std::vector<std::pair<std::string, levy::LevySpec>> specs{
      {"brownian", levy::LevySpec{levy::BrownianDrift{{0.0}, 1.0}}}, {"poisson", levy::LevySpec{levy::Poisson{2.0}}}};
  int block = 0;
  for (const auto& [name, spec] : specs) {
    std::vector<levy::Payoff> fs;
    const double xis[] = {0.5, 1.0};
    for (double xi : xis) {
      fs.push_back([xi](std::span<const double> x) { return std::cos(xi * x[0]); });
      fs.push_back([xi](std::span<const double> x) { return std::sin(xi * x[0]); });
    }
    const auto est = levy::mc_expectations(fs, spec, tc, std::vector{0.0}, t, n, block_seed(opt, 7, block++),
                                           {kResolution, opt.threads});
    for (int k = 0; k < 2; ++k) {
      const Complex psi = levy::psi_symbol(spec, std::vector{xis[k]});
      const Complex expect = laplace::invert_laplace(laplace::fourier_laplace_in_s(tc, psi), t).value;
      rec.monte_carlo(name + " xi=" + fmt(xis[k]) + " re", est[2 * k], expect.real(), 3.0, 2e-3);
      rec.monte_carlo(name + " xi=" + fmt(xis[k]) + " im", est[2 * k + 1], expect.imag(), 3.0, 2e-3);
    }
  }
}

void diffusion_moment(Recorder& rec, const SuiteOptions& opt) {
  const TimeChangeParams tc{0.5, 0.2, 0.0, 1.0, 1.0};
  const double c = 1.0, t = 1.0;
  const std::size_t n = scaled(100000, opt);
  const auto est = levy::mc_expectation([](std::span<const double> x) { return x[0] * x[0]; },
                                        levy::LevySpec{levy::BrownianDrift{{0.0}, c}}, tc, std::vector{0.0}, t, n,
                                        block_seed(opt, 8, 0), {kResolution, opt.threads});
  rec.monte_carlo("E X^2", est, 2.0 * c * std::pow(t, tc.order()) / std::tgamma(1.0 + tc.order()), 3.0);
}

void consistency_triangle(Recorder& rec) {
  const TimeChangeParams tc{0.4, 0.4, 1.0, 1.0, 1.0};
  for (double beta : {0.5, 1.0, 2.0}) {
    for (double t : {0.5, 1.5}) {
      rec.relative("g_hat beta=" + fmt(beta) + " t=" + fmt(t), pde::g_hat_series(tc, beta, t),
                   pde::g_hat_by_inversion(tc, beta, t).value, 1e-5);
    }
  }
  const TimeChangeParams heat{0.6, 0.4, 0.0, 1.0, 1.0};
  for (double x : {0.0, 0.5, 1.0, 2.0}) {
    const double t = 1.0;
    rec.absolute("heat kernel x=" + fmt(x), pde::density_g(heat, x, t).raw,
                 std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * std::numbers::pi * t), 1e-6);
  }
  for (int k = 0; k < 10; ++k) {
    const double x = -2.25 + 0.5 * k, t = 1.0;
    rec.relative("wright kernel x=" + fmt(x), pde::diffusion_wright(1.0, 1.0, x, t),
                 std::exp(-x * x / (4.0 * t)) / (2.0 * std::sqrt(std::numbers::pi * t)), 1e-10);
  }
}

void multiterm(Recorder& rec) {
  const double lam = 1.3, g = 0.5, v = 0.2;
  const auto check_display = [&](unsigned n, const std::vector<pde::MultitermTerm>& display) {
    const auto got = pde::multiterm_expand(n, lam, g, v);
    rec.exact("n=" + std::to_string(n) + " term count", static_cast<double>(got.size()),
              static_cast<double>(display.size()));
    for (std::size_t r = 0; r < std::min(got.size(), display.size()); ++r) {
      rec.exact("n=" + std::to_string(n) + " r=" + std::to_string(r) + " coefficient", got[r].coefficient,
                display[r].coefficient);
      rec.exact("n=" + std::to_string(n) + " r=" + std::to_string(r) + " order", got[r].order, display[r].order);
    }
  };
  check_display(0, {{1.0, g + v}});
  check_display(1, {{1.0, g + v}, {lam, g}});
  check_display(2, {{1.0, g + v}, {2.0 * lam, g}, {lam * lam, g - v}});
  const auto unit = pde::multiterm_expand(1, 1.0, g, v);
  rec.exact("advective case lambda=1 coefficient", unit[1].coefficient, 1.0);

  struct Case {
    unsigned n;
    double lambda, gamma, nu;
  };
  for (const Case& c : {Case{1, 1.0, 0.5, 0.2}, Case{2, 0.8, 0.6, 0.25}, Case{1, 2.0, 1.2, 0.5}}) {
    for (unsigned k : {2u, 3u}) {
      const double t = 0.9;
      Transform F;
      F.eval = [k](Complex s) { return std::tgamma(k + 1.0) / std::pow(s, k + 1.0); };
      F.precise = [k](const Mp& s) { return Mp(std::tgamma(k + 1.0)) / pow(s, Mp(k + 1.0)); };
      const double lhs =
          specfun::apply_regularized_D(F, 0.0, {c.nu, c.gamma + c.nu, static_cast<double>(c.n), -c.lambda}, t);
      double rhs = 0.0;
      for (const auto& term : pde::multiterm_expand(c.n, c.lambda, c.gamma, c.nu)) {
        rhs += term.coefficient * specfun::caputo_monomial(k, term.order, t);
      }
      rec.absolute("n=" + std::to_string(c.n) + " gamma=" + fmt(c.gamma) + " nu=" + fmt(c.nu) + " t^" +
                       std::to_string(k),
                   lhs, rhs, 1e-6 * std::max(1.0, std::abs(rhs)));
    }
  }
}

void inversion_pairs(Recorder& rec) {
  struct Pair {
    std::string name;
    Transform F;
    std::function<double(double)> f;
  };
  const std::vector<Pair> pairs{
      {"1/s", {[](Complex s) { return 1.0 / s; }, [](const Mp& s) { return Mp(1) / s; }}, [](double) { return 1.0; }},
      {"1/s^2", {[](Complex s) { return 1.0 / (s * s); }, [](const Mp& s) { return Mp(1) / (s * s); }},
       [](double t) { return t; }},
      {"1/(s+1)", {[](Complex s) { return 1.0 / (s + 1.0); }, [](const Mp& s) { return Mp(1) / (s + 1); }},
       [](double t) { return std::exp(-t); }},
      {"1/(s^2+1)", {[](Complex s) { return 1.0 / (s * s + 1.0); }, [](const Mp& s) { return Mp(1) / (s * s + 1); }},
       [](double t) { return std::sin(t); }},
      {"s^-1/2", {[](Complex s) { return 1.0 / std::sqrt(s); }, [](const Mp& s) { return Mp(1) / sqrt(s); }},
       [](double t) { return 1.0 / std::sqrt(std::numbers::pi * t); }}};
  for (Method m : {Method::FixedTalbot, Method::GaverStehfest}) {
    InversionConfig cfg;
    cfg.method = m;
    cfg.cross_check = false;
    for (const auto& p : pairs) {
      for (double t : {0.5, 1.0, 2.0}) {
        rec.relative(laplace::to_string(m) + " " + p.name + " t=" + fmt(t), laplace::invert_laplace(p.F, t, cfg).value,
                     p.f(t), 1e-6);
      }
    }
  }
}

const char* const kTitles[kCriterionCount] = {
    "Laplace identity of the Prabhakar kernel",
    "Prabhakar convolution closed form and theta independence",
    "Laplace functional of frakV",
    "duality between the inverse process and frakV",
    "subordination identity for the inverse process",
    "inverse-stable reduction at delta = 0",
    "characteristic function of the time-changed Levy process",
    "second moment of time-changed Brownian motion",
    "solution consistency triangle",
    "multi-term expansion at integer delta",
    "Laplace inversion on known pairs",
};

const char* const kMethods[kCriterionCount] = {
    "forward-laplace(tanh-sinh+kronrod)",
    "tanh-sinh convolution; 8th-order central difference",
    "monte-carlo(stable subordinators)",
    "first-passage(step=1e-3); two-sample KS",
    "first-passage(step=1e-3); exact inverse stable; two-sample KS",
    "first-passage(step=1e-3); monte-carlo",
    "first-passage(step=1e-3); monte-carlo; talbot inversion",
    "first-passage(step=1e-3); monte-carlo",
    "prabhakar series; talbot+gaver-stehfest inversion; wright series",
    "closed form; talbot+gaver-stehfest inversion",
    "talbot; gaver-stehfest(50-digit)",
};

}  // namespace

Tier tier_from_string(const std::string& name) {
  if (name == "fast") return Tier::Fast;
  if (name == "full") return Tier::Full;
  fail(ErrorKind::InvalidParams, "unknown tier '" + name + "' (expected fast or full)");
}

std::string to_string(Tier tier) { return tier == Tier::Fast ? "fast" : "full"; }

std::string criterion_title(int id) {
  require(id >= 1 && id <= kCriterionCount, "criterion id out of range");
  return kTitles[id - 1];
}

CriterionResult run_criterion(int id, const SuiteOptions& opt) {
  CriterionResult r;
  r.id = id;
  r.title = criterion_title(id);
  r.method = kMethods[id - 1];
  Recorder rec(r);
  try {
    switch (id) {
      case 1: laplace_identity(rec); break;
      case 2: saigo_convolution(rec); break;
      case 3: frakV_functional(rec, opt); break;
      case 4: duality(rec, opt); break;
      case 5: subordination(rec, opt); break;
      case 6: inverse_stable(rec, opt); break;
      case 7: abstract_solution(rec, opt); break;
      case 8: diffusion_moment(rec, opt); break;
      case 9: consistency_triangle(rec); break;
      case 10: multiterm(rec); break;
      case 11: inversion_pairs(rec); break;
    }
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.pass = r.error.empty() && !r.checks.empty();
  for (const auto& c : r.checks) r.pass = r.pass && c.pass;
  return r;
}

}  // namespace fracstoch::verify

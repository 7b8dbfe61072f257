#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <boost/math/special_functions/factorials.hpp>

#include "fracstoch/error.hpp"
#include "fracstoch/laplace.hpp"
#include "fracstoch/quadrature.hpp"

namespace fracstoch::laplace {

namespace {

void check_order(int order) {
  require(order >= 2 && order % 2 == 0 && order <= 60, "Gaver-Stehfest order must be even and within [2, 60]");
}

double finite_or_fail(double v, const char* what) {
  if (!std::isfinite(v)) fail(ErrorKind::EvaluationError, std::string(what) + " produced a non-finite value");
  return v;
}

Complex finite_or_fail(Complex v, const char* what) {
  finite_or_fail(v.real(), what);
  finite_or_fail(v.imag(), what);
  return v;
}

struct TalbotNode {
  Complex s;
  Complex weight;  // (1 + iσ) for the upper node
};

std::vector<TalbotNode> talbot_nodes(double t, int nodes, double& r) {
  require(nodes >= 4, "Talbot needs at least 4 nodes");
  r = 2.0 * nodes / (5.0 * t);
  std::vector<TalbotNode> out;
  out.reserve(nodes - 1);
  for (int k = 1; k < nodes; ++k) {
    const double theta = k * std::numbers::pi / nodes;
    const double cot = std::cos(theta) / std::sin(theta);
    const double sigma = theta + (theta * cot - 1.0) * cot;
    out.push_back({Complex(r * theta * cot, r * theta), Complex(1.0, sigma)});
  }
  return out;
}

double threshold(const InversionConfig& cfg, double magnitude) {
  return 100.0 * std::max(cfg.tolerance, 1e-6 * magnitude);
}

}  // namespace

std::string to_string(Method m) { return m == Method::GaverStehfest ? "gaver-stehfest" : "talbot"; }

Method method_from_string(const std::string& name) {
  if (name == "gaver-stehfest" || name == "stehfest" || name == "gs") return Method::GaverStehfest;
  if (name == "talbot" || name == "fixed-talbot") return Method::FixedTalbot;
  fail(ErrorKind::InvalidParams, "unknown inversion method '" + name + "'");
}

const std::vector<Mp>& stehfest_weights(int order) {
  check_order(order);
  static std::mutex mutex;
  static std::map<int, std::vector<Mp>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  const int half = order / 2;
  auto fact = [](int k) { return boost::math::factorial<Mp>(static_cast<unsigned>(k)); };
  std::vector<Mp> v(order);
  for (int k = 1; k <= order; ++k) {
    Mp sum = 0;
    for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
      sum += boost::multiprecision::pow(Mp(j), half) * fact(2 * j) /
             (fact(half - j) * fact(j) * fact(j - 1) * fact(k - j) * fact(2 * j - k));
    }
    v[k - 1] = ((k + half) % 2 == 0) ? sum : Mp(-sum);
  }
  return cache.emplace(order, std::move(v)).first->second;
}

double gaver_stehfest(const Transform& F, double t, int order) {
  require(t > 0.0, "inversion time must be positive");
  const auto& w = stehfest_weights(order);
  const double a = std::numbers::ln2 / t;
  double sum = 0.0;
  for (int k = 1; k <= order; ++k) sum += static_cast<double>(w[k - 1]) * F.eval(Complex(k * a, 0.0)).real();
  return finite_or_fail(a * sum, "Gaver-Stehfest");
}

double gaver_stehfest_precise(const Transform& F, double t, int order) {
  require(t > 0.0, "inversion time must be positive");
  require(static_cast<bool>(F.precise), "transform has no high-precision evaluator");
  const auto& w = stehfest_weights(order);
  const Mp a = log(Mp(2)) / Mp(t);
  Mp sum = 0;
  for (int k = 1; k <= order; ++k) sum += w[k - 1] * F.precise(a * k);
  return finite_or_fail(static_cast<double>(a * sum), "Gaver-Stehfest");
}

double fixed_talbot(const Transform& F, double t, int nodes) {
  require(t > 0.0, "inversion time must be positive");
  double r = 0.0;
  const auto ns = talbot_nodes(t, nodes, r);
  double sum = 0.5 * F.eval(Complex(r, 0.0)).real() * std::exp(r * t);
  for (const auto& n : ns) sum += (std::exp(t * n.s) * F.eval(n.s) * n.weight).real();
  return finite_or_fail(r / nodes * sum, "fixed Talbot");
}

Complex gaver_stehfest(const ComplexTransform& F, double t, int order) {
  require(t > 0.0, "inversion time must be positive");
  const auto& w = stehfest_weights(order);
  const double a = std::numbers::ln2 / t;
  Complex sum = 0.0;
  for (int k = 1; k <= order; ++k) sum += static_cast<double>(w[k - 1]) * F.eval(Complex(k * a, 0.0));
  return finite_or_fail(a * sum, "Gaver-Stehfest");
}

Complex gaver_stehfest_precise(const ComplexTransform& F, double t, int order) {
  require(t > 0.0, "inversion time must be positive");
  require(F.precise_re && F.precise_im, "transform has no high-precision evaluator");
  const auto& w = stehfest_weights(order);
  const Mp a = log(Mp(2)) / Mp(t);
  Mp re = 0, im = 0;
  for (int k = 1; k <= order; ++k) {
    const Mp s = a * k;
    re += w[k - 1] * F.precise_re(s);
    im += w[k - 1] * F.precise_im(s);
  }
  return finite_or_fail(Complex(static_cast<double>(a * re), static_cast<double>(a * im)), "Gaver-Stehfest");
}

Complex fixed_talbot(const ComplexTransform& F, double t, int nodes) {
  require(t > 0.0, "inversion time must be positive");
  double r = 0.0;
  const auto ns = talbot_nodes(t, nodes, r);
  Complex sum = 0.5 * F.eval(Complex(r, 0.0)) * std::exp(r * t);
  for (const auto& n : ns) {
    const Complex lo = std::conj(n.s);
    sum += 0.5 * (std::exp(t * n.s) * F.eval(n.s) * n.weight + std::exp(t * lo) * F.eval(lo) * std::conj(n.weight));
  }
  return finite_or_fail(r / nodes * sum, "fixed Talbot");
}

namespace {

template <class Tr>
auto run_method(const Tr& F, double t, Method m, const InversionConfig& cfg, bool has_precise) {
  if (m == Method::FixedTalbot) return fixed_talbot(F, t, cfg.talbot_nodes);
  return has_precise ? gaver_stehfest_precise(F, t, cfg.precise_order) : gaver_stehfest(F, t, cfg.order);
}

Method other(Method m) { return m == Method::FixedTalbot ? Method::GaverStehfest : Method::FixedTalbot; }

}  // namespace

InversionResult invert_laplace(const Transform& F, double t, const InversionConfig& cfg) {
  require(static_cast<bool>(F.eval), "transform has no evaluator");
  const bool precise = static_cast<bool>(F.precise);
  InversionResult out;
  out.method = cfg.method;
  out.value = run_method(F, t, cfg.method, cfg, precise);
  if (cfg.cross_check) {
    out.cross_checked = true;
    out.cross_value = run_method(F, t, other(cfg.method), cfg, precise);
    out.disagreement = std::abs(out.value - out.cross_value);
    if (out.disagreement > threshold(cfg, std::abs(out.value))) {
      fail(ErrorKind::InversionFailure, "Talbot and Gaver-Stehfest disagree by " + std::to_string(out.disagreement) +
                                            " at t=" + std::to_string(t));
    }
  }
  return out;
}

ComplexInversionResult invert_laplace(const ComplexTransform& F, double t, const InversionConfig& cfg) {
  require(static_cast<bool>(F.eval), "transform has no evaluator");
  const bool precise = F.precise_re && F.precise_im;
  ComplexInversionResult out;
  out.method = cfg.method;
  out.value = run_method(F, t, cfg.method, cfg, precise);
  if (cfg.cross_check) {
    out.cross_checked = true;
    out.cross_value = run_method(F, t, other(cfg.method), cfg, precise);
    out.disagreement = std::max(std::abs(out.value.real() - out.cross_value.real()),
                                std::abs(out.value.imag() - out.cross_value.imag()));
    if (out.disagreement > threshold(cfg, std::abs(out.value))) {
      fail(ErrorKind::InversionFailure, "Talbot and Gaver-Stehfest disagree by " + std::to_string(out.disagreement) +
                                            " at t=" + std::to_string(t));
    }
  }
  return out;
}

double forward_laplace(const std::function<double(double)>& f, double s, double rel_tol) {
  require(s > 0.0, "forward Laplace needs s > 0");
  auto g = [&](double t) {
    const double w = std::exp(-s * t);
    return w == 0.0 ? 0.0 : w * f(t);
  };
  return quad::half_line(g, 1.0 / s, rel_tol, std::max(1e-16, 1e-3 * rel_tol)).value;
}

}  // namespace fracstoch::laplace

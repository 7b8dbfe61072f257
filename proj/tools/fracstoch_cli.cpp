#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracstoch/error.hpp"
#include "fracstoch/laplace.hpp"
#include "fracstoch/levy.hpp"
#include "fracstoch/parallel.hpp"
#include "fracstoch/pde.hpp"
#include "fracstoch/specfun.hpp"
#include "fracstoch/stoch.hpp"
#include "fracstoch/verify.hpp"

using namespace fracstoch;
using json = nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

/// Reads a flat JSON object as CLI11 config: keys are long option names of
/// the subcommand being run, arrays become repeated values.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const std::string& subcommand) : subcommand_(subcommand) {}

  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}\n"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    try {
      input >> j;
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : j.items()) {
      CLI::ConfigItem item;
      if (!subcommand_.empty()) item.parents = {subcommand_};
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
    return items;
  }

 private:
  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    throw CLI::ConversionError("config values must be numbers, strings, booleans or arrays of those");
  }

  const std::string& subcommand_;
};

/// Shortest decimal form that reads back to the same double (at most 17
/// significant digits).
std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string num(std::size_t v) { return std::to_string(v); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) {
    if (row.size() != columns.size()) throw std::logic_error("row width does not match the header");
    rows.push_back(std::move(row));
  }
};

/// Options shared by every subcommand.
struct Common {
  std::string output;
  unsigned threads = 0;
  bool timestamp = false;
};

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--output,-o", common.output, "write the CSV here instead of stdout");
  sub->add_option("--threads", common.threads, "worker thread cap (0: all cores)");
  sub->add_flag("--timestamp", common.timestamp, "add a second header line with the UTC run time");
}

/// Option values of `sub` as JSON, for the metadata header. Output routing
/// and thread count are left out: they never change the numbers.
json collect_params(const CLI::App* sub) {
  json params = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string name = opt->get_lnames().front();
    if (name == "help" || name == "config" || name == "output" || name == "threads" || name == "timestamp") continue;
    auto typed = [](const std::string& s) {
      const json j = json::parse(s, nullptr, false);
      return j.is_discarded() || j.is_object() ? json(s) : j;
    };
    std::vector<std::string> values = opt->results();
    if (values.empty()) {
      if (opt->get_default_str().empty()) continue;
      params[name] = typed(opt->get_default_str());
      continue;
    }
    if (values.size() == 1 && opt->get_expected_max() <= 1) {
      params[name] = typed(values.front());
    } else {
      json arr = json::array();
      for (const auto& v : values) arr.push_back(typed(v));
      params[name] = arr;
    }
  }
  return params;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_table(const std::string& command, const CLI::App* sub, const Common& common, const Table& table,
                 const json& extra) {
  json meta;
  meta["command"] = command;
  meta["version"] = kVersion;
  meta["params"] = collect_params(sub);
  meta["columns"] = table.columns;
  for (const auto& [k, v] : extra.items()) meta[k] = v;
  std::ostringstream os;
  os << "# " << meta.dump() << '\n';
  if (common.timestamp) os << "# " << json{{"timestamp", utc_now()}}.dump() << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << csv_field(table.columns[i]);
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << '\n';
  }
  if (common.output.empty()) {
    std::cout << os.str() << std::flush;
  } else {
    std::ofstream f(common.output, std::ios::binary);
    if (!f) fail(ErrorKind::InvalidParams, "cannot open output file '" + common.output + "'");
    f << os.str();
  }
}

void add_time_change(CLI::App* sub, TimeChangeParams& tc) {
  sub->add_option("--gamma", tc.gamma, "gamma")->capture_default_str();
  sub->add_option("--nu", tc.nu, "nu")->capture_default_str();
  sub->add_option("--delta", tc.delta, "delta")->capture_default_str();
  sub->add_option("--lambda", tc.lambda_rate, "lambda")->capture_default_str();
}

struct ProcessOptions {
  std::string kind = "brownian";
  std::vector<double> drift{0.0};
  double diffusivity = 1.0;
  double alpha_s = 1.0;
  double scale = 1.0;
  int dim = 1;
  double rate = 1.0;

  levy::LevySpec spec() const {
    levy::LevySpec s;
    if (kind == "brownian") {
      s.variant = levy::BrownianDrift{drift, diffusivity};
    } else if (kind == "stable") {
      s.variant = levy::IsotropicStable{alpha_s, scale, dim};
    } else if (kind == "poisson") {
      s.variant = levy::Poisson{rate};
    } else {
      s.variant = levy::CompensatedPoisson{rate};
    }
    s.validate();
    return s;
  }
};

void add_process(CLI::App* sub, ProcessOptions& p) {
  sub->add_option("--process", p.kind, "outer Levy process")
      ->check(CLI::IsMember({"brownian", "stable", "poisson", "compensated-poisson"}))
      ->capture_default_str();
  sub->add_option("--drift", p.drift, "brownian: drift vector a (one entry per dimension)")->capture_default_str();
  sub->add_option("--diffusivity", p.diffusivity, "brownian: c in psi = i<a,xi> + c|xi|^2")->capture_default_str();
  sub->add_option("--alpha-s", p.alpha_s, "stable: psi = scale |xi|^(2 alpha_s)")->capture_default_str();
  sub->add_option("--scale", p.scale, "stable: scale")->capture_default_str();
  sub->add_option("--dim", p.dim, "stable: dimension")->capture_default_str();
  sub->add_option("--rate", p.rate, "poisson: jump rate")->capture_default_str();
}

CLI::Option* add_seed(CLI::App* sub, std::uint64_t& seed) {
  return sub->add_option("--seed", seed, "master seed (falls back to FRACSTOCH_SEED)")
      ->envname("FRACSTOCH_SEED")
      ->required();
}

/// Evaluates `f` on every point in parallel and keeps point order.
template <class Row>
std::vector<Row> map_points(const std::vector<double>& points, unsigned threads, const std::function<Row(double)>& f) {
  std::vector<Row> out(points.size());
  parallel_for(points.size(), threads, [&](std::size_t i) { out[i] = f(points[i]); });
  return out;
}

std::string to_string(bool b) { return b ? "true" : "false"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prabhakar-type fractional operators, stable time changes and time-changed Levy processes"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  std::string active;
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.config_formatter(std::make_shared<JsonConfig>(active));
  app.set_config("--config", "", "JSON file of subcommand option values; command-line flags take precedence");
  Common common;
  std::function<void()> action;
  const CLI::App* chosen = nullptr;
  std::string command;
  json extra = json::object();
  Table table;
  int status = 0;

  auto bind = [&](CLI::App* sub, std::function<void()> body) {
    add_common(sub, common);
    sub->callback([&, sub, body] {
      chosen = sub;
      command = sub->get_name();
      action = body;
    });
  };

  // eval-ml
  specfun::PrabhakarParams ml;
  std::vector<double> ml_x;
  auto* eval_ml = app.add_subcommand("eval-ml", "Prabhakar function E^xi_{alpha,eta}(x)\n"
                                                 "columns: x,value,method,terms,tolerance");
  eval_ml->add_option("--alpha", ml.alpha, "alpha > 0")->capture_default_str();
  eval_ml->add_option("--eta", ml.eta, "eta")->capture_default_str();
  eval_ml->add_option("--xi", ml.xi, "xi")->capture_default_str();
  eval_ml->add_option("--x", ml_x, "arguments")->required();
  bind(eval_ml, [&] {
    const specfun::SeriesOptions so;
    table.columns = {"x", "value", "method", "terms", "tolerance"};
    for (const auto& info : map_points<specfun::EvalInfo>(
             ml_x, common.threads, [&](double x) { return specfun::ml_prabhakar_info(ml, x, so); })) {
      table.add({num(ml_x[table.rows.size()]), num(info.value), specfun::to_string(info.method),
                 std::to_string(info.terms), num(so.rel_tol)});
    }
  });

  // eval-wright
  specfun::WrightParams wp;
  std::vector<double> wright_x;
  auto* eval_wright = app.add_subcommand("eval-wright", "Wright function W_{a,b}(x)\n"
                                                         "columns: x,value,method,terms,tolerance");
  eval_wright->add_option("--a", wp.a, "a > -1")->capture_default_str();
  eval_wright->add_option("--b", wp.b, "b")->capture_default_str();
  eval_wright->add_option("--x", wright_x, "arguments")->required();
  bind(eval_wright, [&] {
    const specfun::SeriesOptions so;
    table.columns = {"x", "value", "method", "terms", "tolerance"};
    for (const auto& info : map_points<specfun::EvalInfo>(
             wright_x, common.threads, [&](double x) { return specfun::wright_info(wp, x, so); })) {
      table.add({num(wright_x[table.rows.size()]), num(info.value), specfun::to_string(info.method),
                 std::to_string(info.terms), num(so.rel_tol)});
    }
  });

  // invert
  TimeChangeParams inv_tc;
  std::string inv_name = "H_TS";
  std::string inv_method = "talbot";
  double inv_first = 1.0;
  bool inv_no_cross = false;
  double inv_tol = 1e-6;
  std::vector<double> inv_t;
  auto* invert = app.add_subcommand(
      "invert", "numerical inversion in s of a catalogue transform\n"
                "columns: t,value,method,cross_checked,cross_value,disagreement,tolerance");
  invert->add_option("--transform", inv_name, "H_XS, H_TS, E_DENS_TS, K_TS, G_FOURIER_LAPLACE or G_X_LAPLACE")
      ->capture_default_str();
  invert->add_option("--first", inv_first, "frozen first coordinate: x, z or Psi")->capture_default_str();
  add_time_change(invert, inv_tc);
  invert->add_option("--c", inv_tc.c, "diffusivity, G_X_LAPLACE only")->capture_default_str();
  invert->add_option("--method", inv_method, "talbot or gaver-stehfest")->capture_default_str();
  invert->add_flag("--no-cross-check", inv_no_cross, "skip the second method");
  invert->add_option("--tolerance", inv_tol, "cross-check tolerance")->capture_default_str();
  invert->add_option("--t", inv_t, "times")->required();
  bind(invert, [&] {
    laplace::InversionConfig cfg;
    cfg.method = laplace::method_from_string(inv_method);
    cfg.cross_check = !inv_no_cross;
    cfg.tolerance = inv_tol;
    const auto F = laplace::transform_in_s(laplace::transform_from_string(inv_name), inv_tc, inv_first);
    table.columns = {"t", "value", "method", "cross_checked", "cross_value", "disagreement", "tolerance"};
    for (const auto& r : map_points<laplace::InversionResult>(
             inv_t, common.threads, [&](double t) { return laplace::invert_laplace(F, t, cfg); })) {
      table.add({num(inv_t[table.rows.size()]), num(r.value), laplace::to_string(r.method), to_string(r.cross_checked),
                 num(r.cross_value), num(r.disagreement), num(cfg.tolerance)});
    }
  });

  // simulate-path
  TimeChangeParams sim_tc;
  ProcessOptions sim_proc;
  std::string sim_kind = "frakV";
  double sim_horizon = 1.0;
  std::size_t sim_points = 100, sim_paths = 1;
  std::uint64_t sim_seed = 0;
  auto* simulate = app.add_subcommand(
      "simulate-path", "sample paths on a uniform grid of (0, horizon]\n"
                       "frakV: the stable-sum subordinator; levy: the outer process alone\n"
                       "columns: path,time,value (value_k per dimension for levy),method,tolerance");
  simulate->add_option("--kind", sim_kind, "frakV or levy")->check(CLI::IsMember({"frakV", "levy"}))->capture_default_str();
  add_time_change(simulate, sim_tc);
  add_process(simulate, sim_proc);
  simulate->add_option("--horizon", sim_horizon, "last grid time")->capture_default_str();
  simulate->add_option("--points", sim_points, "grid points after 0")->capture_default_str();
  simulate->add_option("--paths", sim_paths, "number of paths")->capture_default_str();
  add_seed(simulate, sim_seed);
  bind(simulate, [&] {
    require(sim_horizon > 0.0 && sim_points > 0 && sim_paths > 0, "horizon, points and paths must be positive");
    std::vector<double> grid(sim_points + 1);
    for (std::size_t k = 0; k <= sim_points; ++k) grid[k] = sim_horizon * static_cast<double>(k) / sim_points;
    const bool frak = sim_kind == "frakV";
    const levy::LevySpec spec = frak ? levy::LevySpec{} : sim_proc.spec();
    if (frak) sim_tc.validate_simulation();
    std::vector<stoch::SamplePath> paths(sim_paths);
    parallel_for(sim_paths, common.threads, [&](std::size_t i) {
      RngStream rng(sim_seed, i, frak ? StreamPurpose::TimeChange : StreamPurpose::OuterPath);
      paths[i] = frak ? stoch::sample_frakV_path(sim_tc, grid, rng) : levy::sample_levy_path(spec, grid, rng);
    });
    const std::size_t dim = paths.front().dim;
    table.columns = {"path", "time"};
    if (dim == 1) {
      table.columns.push_back("value");
    } else {
      for (std::size_t d = 0; d < dim; ++d) table.columns.push_back("value_" + std::to_string(d));
    }
    table.columns.insert(table.columns.end(), {"method", "tolerance"});
    const std::string method = frak ? "exact stable increments" : "exact increments";
    for (std::size_t i = 0; i < sim_paths; ++i) {
      for (std::size_t k = 0; k < paths[i].times.size(); ++k) {
        std::vector<std::string> row{num(i), num(paths[i].times[k])};
        for (std::size_t d = 0; d < dim; ++d) row.push_back(num(paths[i].values[k * dim + d]));
        row.insert(row.end(), {method, "0"});
        table.add(std::move(row));
      }
    }
    extra["process"] = frak ? sim_tc.describe() : spec.describe();
  });

  // sample-inverse
  TimeChangeParams si_tc;
  std::string si_sampler = "passage";
  double si_t = 1.0, si_resolution = 1e-3;
  std::size_t si_n = 1000;
  std::uint64_t si_seed = 0;
  auto* sample_inverse = app.add_subcommand(
      "sample-inverse", "draws of the inverse process E_t\n"
                        "passage: first passage of frakV; composed: inverse outer clock over first passage of the "
                        "inner sum; exact: delta = 0 only, exact inverse stable law\n"
                        "columns: index,value,bracket,steps,method,resolution");
  add_time_change(sample_inverse, si_tc);
  sample_inverse->add_option("--sampler", si_sampler, "passage, composed or exact")
      ->check(CLI::IsMember({"passage", "composed", "exact"}))
      ->capture_default_str();
  sample_inverse->add_option("--t", si_t, "time")->capture_default_str();
  sample_inverse->add_option("--n", si_n, "number of draws")->capture_default_str();
  sample_inverse->add_option("--resolution", si_resolution, "first-passage grid step")->capture_default_str();
  add_seed(sample_inverse, si_seed);
  bind(sample_inverse, [&] {
    si_tc.validate_simulation();
    require(si_t > 0.0, "t must be positive");
    require(si_sampler != "exact" || si_tc.delta == 0.0, "the exact sampler needs delta = 0");
    std::vector<stoch::PassageSample> out(si_n);
    parallel_for(si_n, common.threads, [&](std::size_t i) {
      RngStream rng(si_seed, i, StreamPurpose::TimeChange);
      if (si_sampler == "passage") {
        out[i] = stoch::sample_inverse_E(si_tc, si_t, si_resolution, rng);
      } else if (si_sampler == "composed") {
        out[i] = stoch::sample_inverse_E_composed(si_tc, si_t, si_resolution, rng);
      } else {
        out[i].value = stoch::sample_inverse_stable_exact(si_tc.order(), si_t, rng);
      }
    });
    table.columns = {"index", "value", "bracket", "steps", "method", "resolution"};
    const bool exact = si_sampler == "exact";
    for (std::size_t i = 0; i < si_n; ++i) {
      table.add({num(i), num(out[i].value), num(out[i].bracket), num(out[i].steps), si_sampler,
                 exact ? "0" : num(si_resolution)});
    }
  });

  // mc-verify
  TimeChangeParams mc_tc;
  ProcessOptions mc_proc;
  std::vector<double> mc_xi{0.5, 1.0};
  double mc_t = 1.0, mc_resolution = 1e-3, mc_floor = 2e-3, mc_k = 3.0;
  std::size_t mc_paths = 100000;
  std::uint64_t mc_seed = 0;
  auto* mc_verify = app.add_subcommand(
      "mc-verify", "Monte Carlo characteristic function of X(E_t) against inversion of its Fourier-Laplace "
                   "transform; exits 1 if any frequency misses\n"
                   "columns: xi,re_mc,im_mc,re_stderr,im_stderr,re_exact,im_exact,pass,method,tolerance");
  add_time_change(mc_verify, mc_tc);
  add_process(mc_verify, mc_proc);
  mc_verify->add_option("--xi", mc_xi, "frequencies (first coordinate; others 0)")->capture_default_str();
  mc_verify->add_option("--t", mc_t, "time")->capture_default_str();
  mc_verify->add_option("--paths", mc_paths, "number of paths")->capture_default_str();
  mc_verify->add_option("--resolution", mc_resolution, "first-passage grid step")->capture_default_str();
  mc_verify->add_option("--stderr-multiple", mc_k, "allowed gap in standard errors")->capture_default_str();
  mc_verify->add_option("--floor", mc_floor, "absolute gap always allowed")->capture_default_str();
  add_seed(mc_verify, mc_seed);
  bind(mc_verify, [&] {
    const auto spec = mc_proc.spec();
    const std::size_t dim = static_cast<std::size_t>(spec.dim());
    std::vector<levy::Payoff> fs;
    for (double xi : mc_xi) {
      fs.push_back([xi](std::span<const double> x) { return std::cos(xi * x[0]); });
      fs.push_back([xi](std::span<const double> x) { return std::sin(xi * x[0]); });
    }
    const auto est = levy::mc_expectations(fs, spec, mc_tc, std::vector<double>(dim, 0.0), mc_t, mc_paths, mc_seed,
                                           {mc_resolution, common.threads});
    table.columns = {"xi", "re_mc", "im_mc", "re_stderr", "im_stderr", "re_exact", "im_exact", "pass", "method",
                     "tolerance"};
    for (std::size_t k = 0; k < mc_xi.size(); ++k) {
      std::vector<double> xi(dim, 0.0);
      xi[0] = mc_xi[k];
      const auto exact =
          laplace::invert_laplace(laplace::fourier_laplace_in_s(mc_tc, levy::psi_symbol(spec, xi)), mc_t);
      const auto& re = est[2 * k];
      const auto& im = est[2 * k + 1];
      const bool pass =
          re.within(exact.value.real(), mc_k, mc_floor) && im.within(exact.value.imag(), mc_k, mc_floor);
      status = pass ? status : 1;
      table.add({num(mc_xi[k]), num(re.mean), num(im.mean), num(re.std_error), num(im.std_error),
                 num(exact.value.real()), num(exact.value.imag()), to_string(pass),
                 "monte-carlo vs " + laplace::to_string(exact.method),
                 num(std::max(mc_k * std::max(re.std_error, im.std_error), mc_floor))});
    }
    extra["process"] = spec.describe();
  });

  // solve-pde
  TimeChangeParams pde_tc;
  std::string pde_quantity = "density";
  std::string pde_route = "series";
  std::vector<double> pde_points;
  double pde_t = 1.0, pde_alpha = 1.0, pde_scale = 1.0;
  auto* solve = app.add_subcommand(
      "solve-pde", "solution of the Prabhakar-type diffusion equation from a point initial datum\n"
                   "density: g(x,t) by inversion; columns x,t,value,raw,method,cross_checked,cross_value,tolerance\n"
                   "fourier: g_hat(beta,t) by series, inversion or quadrature; columns beta,t,value,method,tolerance\n"
                   "wright: the space-time fractional kernel; columns x,t,value,method,tolerance");
  solve->add_option("--quantity", pde_quantity, "density, fourier or wright")
      ->check(CLI::IsMember({"density", "fourier", "wright"}))
      ->capture_default_str();
  add_time_change(solve, pde_tc);
  solve->add_option("--c", pde_tc.c, "diffusivity")->capture_default_str();
  solve->add_option("--route", pde_route, "fourier: series, inversion or quadrature")
      ->check(CLI::IsMember({"series", "inversion", "quadrature"}))
      ->capture_default_str();
  solve->add_option("--alpha", pde_alpha, "wright: alpha in (0,2)")->capture_default_str();
  solve->add_option("--scale", pde_scale, "wright: length scale")->capture_default_str();
  solve->add_option("--t", pde_t, "time")->capture_default_str();
  solve->add_option("--points", pde_points, "x values (beta for fourier)")->required();
  bind(solve, [&] {
    const laplace::InversionConfig cfg;
    if (pde_quantity == "density") {
      table.columns = {"x", "t", "value", "raw", "method", "cross_checked", "cross_value", "tolerance"};
      for (const auto& r : map_points<pde::DensityResult>(
               pde_points, common.threads, [&](double x) { return pde::density_g(pde_tc, x, pde_t, cfg); })) {
        table.add({num(pde_points[table.rows.size()]), num(pde_t), num(r.value), num(r.raw), laplace::to_string(r.method),
                   to_string(r.cross_checked), num(r.cross_value), num(cfg.tolerance)});
      }
    } else if (pde_quantity == "fourier") {
      table.columns = {"beta", "t", "value", "method", "tolerance"};
      using Cell = std::pair<double, std::string>;
      for (const auto& [v, m] : map_points<Cell>(pde_points, common.threads, [&](double beta) -> Cell {
             if (pde_route == "series") return {pde::g_hat_series(pde_tc, beta, pde_t), "prabhakar series"};
             if (pde_route == "quadrature") return {pde::g_hat_by_quadrature(pde_tc, beta, pde_t, cfg), "quadrature"};
             const auto r = pde::g_hat_by_inversion(pde_tc, beta, pde_t, cfg);
             return {r.value, laplace::to_string(r.method)};
           })) {
        table.add({num(pde_points[table.rows.size()]), num(pde_t), num(v), m,
                   num(pde_route == "series" ? 1e-15 : cfg.tolerance)});
      }
    } else {
      table.columns = {"x", "t", "value", "method", "tolerance"};
      for (double v : map_points<double>(pde_points, common.threads,
                                         [&](double x) { return pde::diffusion_wright(pde_alpha, pde_scale, x, pde_t); })) {
        table.add({num(pde_points[table.rows.size()]), num(pde_t), num(v), "wright", "1e-12"});
      }
    }
  });

  // multiterm
  unsigned mt_n = 1;
  double mt_lambda = 1.0, mt_gamma = 0.5, mt_nu = 0.2;
  auto* multiterm = app.add_subcommand("multiterm", "Caputo multi-term form of the operator at integer delta = n\n"
                                                     "columns: r,coefficient,order,method,tolerance");
  multiterm->add_option("--n", mt_n, "integer delta")->capture_default_str();
  multiterm->add_option("--lambda", mt_lambda, "lambda")->capture_default_str();
  multiterm->add_option("--gamma", mt_gamma, "gamma")->capture_default_str();
  multiterm->add_option("--nu", mt_nu, "nu")->capture_default_str();
  bind(multiterm, [&] {
    table.columns = {"r", "coefficient", "order", "method", "tolerance"};
    const auto terms = pde::multiterm_expand(mt_n, mt_lambda, mt_gamma, mt_nu);
    for (std::size_t r = 0; r < terms.size(); ++r) {
      table.add({num(r), num(terms[r].coefficient), num(terms[r].order), "closed form", "0"});
    }
  });

  // verify-suite
  std::string vs_tier = "full";
  std::uint64_t vs_seed = 0;
  std::vector<int> vs_only;
  auto* verify_suite = app.add_subcommand(
      "verify-suite", "acceptance criteria; one row per check, summary on stderr; exits 1 if a criterion fails\n"
                      "columns: criterion,title,check,observed,expected,tolerance,pass,method");
  verify_suite->add_option("--tier", vs_tier, "fast or full")->check(CLI::IsMember({"fast", "full"}))->capture_default_str();
  verify_suite->add_option("--only", vs_only, "criterion ids")->check(CLI::Range(1, verify::kCriterionCount));
  add_seed(verify_suite, vs_seed);
  bind(verify_suite, [&] {
    verify::SuiteOptions opt;
    opt.seed = vs_seed;
    opt.threads = common.threads;
    opt.tier = verify::tier_from_string(vs_tier);
    if (vs_only.empty()) {
      for (int id = 1; id <= verify::kCriterionCount; ++id) vs_only.push_back(id);
    }
    table.columns = {"criterion", "title", "check", "observed", "expected", "tolerance", "pass", "method"};
    json summary = json::array();
    for (int id : vs_only) {
      const auto r = verify::run_criterion(id, opt);
      for (const auto& c : r.checks) {
        table.add({std::to_string(id), r.title, c.label, num(c.observed), num(c.expected), num(c.tolerance),
                   to_string(c.pass), r.method});
      }
      if (!r.error.empty()) table.add({std::to_string(id), r.title, "error: " + r.error, "", "", "", "false", r.method});
      std::fprintf(stderr, "criterion %2d %s  %s\n", id, r.pass ? "PASS" : "FAIL", r.title.c_str());
      summary.push_back({{"criterion", id}, {"pass", r.pass}});
      status = r.pass ? status : 1;
    }
    extra["summary"] = summary;
  });

  // The subcommand named on the command line owns the config keys.
  for (int i = 1; i < argc && active.empty(); ++i) {
    const std::string arg = argv[i];
    if (arg == "--config") {
      ++i;
    } else if (app.get_subcommand_no_throw(arg) != nullptr) {
      active = arg;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    action();
    write_table(command, chosen, common, table, extra);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::InvalidParams ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return status;
}

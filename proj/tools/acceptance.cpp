#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracstoch/verify.hpp"

using namespace fracstoch;

int main(int argc, char** argv) {
  CLI::App app{"Runs the acceptance criteria and prints one PASS/FAIL line per criterion"};
  verify::SuiteOptions opt;
  std::string tier = "full";
  std::vector<int> only;
  bool verbose = false;
  app.add_option("--tier", tier, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  app.add_option("--seed", opt.seed, "master seed");
  app.add_option("--threads", opt.threads, "worker threads (0: all cores)");
  app.add_option("--only", only, "criterion ids to run")->check(CLI::Range(1, verify::kCriterionCount));
  app.add_flag("-v,--verbose", verbose, "print every check");
  CLI11_PARSE(app, argc, argv);
  opt.tier = verify::tier_from_string(tier);
  if (only.empty()) {
    for (int id = 1; id <= verify::kCriterionCount; ++id) only.push_back(id);
  }

  int failed = 0;
  for (int id : only) {
    const auto r = verify::run_criterion(id, opt);
    std::size_t passed = 0;
    for (const auto& c : r.checks) passed += c.pass;
    std::printf("criterion %2d %s  %s  [%zu/%zu checks; %s]\n", id, r.pass ? "PASS" : "FAIL", r.title.c_str(), passed,
                r.checks.size(), r.method.c_str());
    for (const auto& c : r.checks) {
      if (verbose || !c.pass) {
        std::printf("    %s %-44s observed=%.12g expected=%.12g tolerance=%.3g\n", c.pass ? "ok  " : "FAIL",
                    c.label.c_str(), c.observed, c.expected, c.tolerance);
      }
    }
    if (!r.error.empty()) std::printf("    error: %s\n", r.error.c_str());
    failed += !r.pass;
  }
  std::printf("%d/%zu criteria passed (tier %s, seed %llu)\n", static_cast<int>(only.size()) - failed, only.size(),
              tier.c_str(), static_cast<unsigned long long>(opt.seed));
  return failed == 0 ? 0 : 1;
}

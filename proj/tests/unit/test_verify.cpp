#include <doctest.h>

#include "fracstoch/error.hpp"
#include "fracstoch/verify.hpp"

using namespace fracstoch;
using namespace fracstoch::verify;

TEST_CASE("tier names round trip and reject unknown names") {
  CHECK(tier_from_string("fast") == Tier::Fast);
  CHECK(tier_from_string("full") == Tier::Full);
  CHECK(to_string(Tier::Fast) == "fast");
  CHECK_THROWS_AS(tier_from_string("quick"), Error);
}

TEST_CASE("criterion titles exist for every id and only those") {
  for (int id = 1; id <= kCriterionCount; ++id) CHECK_FALSE(criterion_title(id).empty());
  CHECK_THROWS_AS(criterion_title(0), Error);
  CHECK_THROWS_AS(criterion_title(kCriterionCount + 1), Error);
}

TEST_CASE("a deterministic criterion passes and repeats exactly") {
  const SuiteOptions opt{7, 1, Tier::Fast};
  const auto a = run_criterion(10, opt);
  const auto b = run_criterion(10, opt);
  CHECK(a.pass);
  CHECK(a.error.empty());
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) CHECK(a.checks[i].observed == b.checks[i].observed);
}

TEST_CASE("stochastic criteria depend on the seed but not on the thread count") {
  const auto one = run_criterion(8, {11, 1, Tier::Fast});
  const auto many = run_criterion(8, {11, 3, Tier::Fast});
  const auto other = run_criterion(8, {12, 1, Tier::Fast});
  REQUIRE(one.checks.size() == 1);
  CHECK(one.checks[0].observed == many.checks[0].observed);
  CHECK(one.checks[0].observed != other.checks[0].observed);
}

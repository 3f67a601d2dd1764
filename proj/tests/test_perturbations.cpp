#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "preauction/perturbations.hpp"

using namespace preauction;

static Distribution base() { return Distribution::uniform(0.5, 2.0); }

TEST_CASE("entry subsidy factor") {
  auto F = base();

  // any-high: the marginal type's own message already triggers the auction
  for (double tau : {0.8, 1.25, 1.7}) {
    auto s = entry_subsidy_factor(F, tau, RunPolicy::AnyHigh);
    CHECK(s.k == doctest::Approx(1.0).epsilon(1e-12));
  }

  // both-high: scale by the inverse chance the rival signals high
  auto s = entry_subsidy_factor(F, 1.25, RunPolicy::BothHigh);
  CHECK(s.k == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s.deliverable_by_reserve);

  // 1/(1 - F(tau)) = (3 + sqrt(5))/4 at tau = (3*sqrt(5) - 5)/2
  auto t = entry_subsidy_factor(F, 0.8541019662496845, RunPolicy::BothHigh);
  CHECK(t.k == doctest::Approx((3.0 + std::sqrt(5.0)) / 4.0).epsilon(1e-9));
  CHECK_FALSE(t.deliverable_by_reserve);

  CHECK(entry_subsidy_factor(F, 1.0, RunPolicy::BothHigh).deliverable_by_reserve);
  CHECK_FALSE(entry_subsidy_factor(F, 0.8, RunPolicy::AnyHigh).deliverable_by_reserve);

  CHECK_THROWS_AS(entry_subsidy_factor(F, 2.0 - 1e-14, RunPolicy::BothHigh),
                  std::invalid_argument);
}

TEST_CASE("lying cost scale") {
  auto F = base();
  CHECK(min_density(F) == doctest::Approx(2.0 / 3).epsilon(1e-12));

  auto lc = quadratic_lying_cost(F);
  CHECK(lc.min_density == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(lc.max_second_deriv == doctest::Approx(2.0));
  CHECK(lying_cost_epsilon_bar(lc) == doctest::Approx(1.0 / 3).epsilon(1e-12));

  auto pw = Distribution::piecewise_linear_cdf(
      {{0.0, 0.0}, {0.2, 0.25}, {0.5, 0.5}, {0.6, 0.75}, {1.0, 1.0}});
  CHECK(min_density(pw) == doctest::Approx(0.625).epsilon(1e-12));
}

TEST_CASE("sustainable sets under a small lying cost") {
  auto F = base();

  auto s1 = lying_cost_sustainable_set(F, 1.0);
  CHECK_FALSE(s1.window_empty);
  CHECK(s1.window_lo == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(s1.window_hi == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE_FALSE(s1.restricted_any_high.empty());
  CHECK(s1.restricted_any_high.parts[0].first == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(s1.restricted_any_high.parts[0].second == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(s1.unrestricted.empty());

  auto s2 = lying_cost_sustainable_set(F, 0.9);
  CHECK(s2.window_empty);
  CHECK(s2.restricted_any_high.empty());
  CHECK(s2.restricted_both_high.empty());
  CHECK(s2.unrestricted.empty());

  // c = 1.2: any-high needs the one-high revenue (= tau above the posted
  // price) to reach c, leaving only the window's right edge; both-high keeps
  // the whole window
  auto s3 = lying_cost_sustainable_set(F, 1.2);
  CHECK_FALSE(s3.window_empty);
  REQUIRE_FALSE(s3.restricted_any_high.empty());
  CHECK(s3.restricted_any_high.parts[0].first == doctest::Approx(1.2).epsilon(1e-6));
  CHECK(s3.restricted_any_high.parts[0].second == doctest::Approx(1.2).epsilon(1e-6));
  REQUIRE_FALSE(s3.restricted_both_high.empty());
  CHECK(s3.restricted_both_high.parts[0].first == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(s3.restricted_both_high.parts[0].second == doctest::Approx(1.2).epsilon(1e-6));
}

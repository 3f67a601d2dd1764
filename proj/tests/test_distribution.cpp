#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "preauction/distribution.hpp"

using namespace preauction;

static Distribution base() { return Distribution::uniform(0.5, 2.0); }

TEST_CASE("uniform basics") {
  auto d = base();
  CHECK(d.lo() == doctest::Approx(0.5));
  CHECK(d.hi() == doctest::Approx(2.0));
  CHECK(d.cdf(0.5) == doctest::Approx(0.0));
  CHECK(d.cdf(2.0) == doctest::Approx(1.0));
  CHECK(d.cdf(1.0) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(d.pdf(1.7) == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(d.cdf(0.2) == doctest::Approx(0.0));
  CHECK(d.cdf(3.0) == doctest::Approx(1.0));
  for (double p : {0.0, 0.1, 0.37, 0.5, 0.99, 1.0})
    CHECK(d.cdf(d.quantile(p)) == doctest::Approx(p).epsilon(1e-10));
  CHECK_THROWS_AS(Distribution::uniform(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(d.quantile(-0.1), std::domain_error);
}

TEST_CASE("piecewise linear cdf") {
  auto d = Distribution::piecewise_linear_cdf(
      {{0.0, 0.0}, {0.2, 0.25}, {0.5, 0.5}, {0.6, 0.75}, {1.0, 1.0}});
  CHECK(d.pdf(0.1) == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(d.pdf(0.55) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(d.pdf(0.8) == doctest::Approx(0.625).epsilon(1e-12));
  CHECK(d.cdf(0.55) == doctest::Approx(0.625).epsilon(1e-12));
  for (double p : {0.05, 0.25, 0.4, 0.6, 0.9})
    CHECK(d.cdf(d.quantile(p)) == doctest::Approx(p).epsilon(1e-10));
  CHECK(d.breakpoints().size() == 5);

  CHECK_THROWS_AS(Distribution::piecewise_linear_cdf({{0, 0}, {1, 0.5}}),
                  std::invalid_argument);  // cdf must end at 1
  CHECK_THROWS_AS(Distribution::piecewise_linear_cdf({{0, 0}, {0.5, 0.6}, {1, 0.4}}),
                  std::invalid_argument);  // non-monotone
  CHECK_THROWS_AS(Distribution::piecewise_linear_cdf({{0, 0}}), std::invalid_argument);
}

TEST_CASE("virtual value") {
  auto d = base();
  CHECK(virtual_value(d, 1.5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(virtual_value(d, 2.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(virtual_value(d, 0.5) == doctest::Approx(-1.0).epsilon(1e-12));
  auto u01 = Distribution::uniform(0, 1);
  CHECK(virtual_value(u01, 0.25) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK_THROWS_AS(virtual_value(d, 0.4), std::domain_error);
  CHECK_THROWS_AS(virtual_value(d, 2.1), std::domain_error);
}

TEST_CASE("truncation and posteriors") {
  auto d = base();
  auto hi = truncate(d, 1.5, 2.0);
  CHECK(hi.lo() == doctest::Approx(1.5));
  CHECK(hi.cdf(1.75) == doctest::Approx(0.5).epsilon(1e-12));
  // truncation from below preserves the virtual value on the kept range
  for (double v : {1.55, 1.7, 1.9})
    CHECK(virtual_value(hi, v) == doctest::Approx(virtual_value(d, v)).epsilon(1e-10));

  auto u01 = Distribution::uniform(0, 1);
  auto lowp = low_posterior(u01, 0.6);
  CHECK(lowp.hi() == doctest::Approx(0.6));
  CHECK(virtual_value(lowp, 0.5) == doctest::Approx(0.4).epsilon(1e-12));

  auto pw = Distribution::piecewise_linear_cdf(
      {{0.0, 0.0}, {0.2, 0.25}, {0.5, 0.5}, {0.6, 0.75}, {1.0, 1.0}});
  auto pw_hi = truncate(pw, 0.55, 1.0);
  for (double v : {0.58, 0.7, 0.95})
    CHECK(virtual_value(pw_hi, v) ==
          doctest::Approx(virtual_value(pw, v)).epsilon(1e-10));

  CHECK_THROWS_AS(truncate(d, 2.0, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(truncate(d, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(low_posterior(d, 0.5), std::domain_error);
  CHECK_THROWS_AS(low_posterior(d, 2.0), std::domain_error);
}

TEST_CASE("high posterior extends below the support") {
  auto d = base();
  auto in = high_posterior(d, 0.9);
  CHECK(in.lo() == doctest::Approx(0.9));
  CHECK(virtual_value(in, 1.2) == doctest::Approx(virtual_value(d, 1.2)).epsilon(1e-10));

  // cutoff below the lower endpoint: density pattern continues leftward
  auto ext = high_posterior(d, 0.42);
  CHECK(ext.lo() == doctest::Approx(0.42));
  CHECK(ext.hi() == doctest::Approx(2.0));
  CHECK(ext.cdf(1.21) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(ext.pdf(1.0) == doctest::Approx(1.0 / 1.58).epsilon(1e-10));

  auto at_lo = high_posterior(d, 0.5);
  CHECK(at_lo.cdf(1.25) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("regularity check") {
  CHECK(is_regular(base()));
  CHECK(is_regular(Distribution::uniform(0, 1)));
  auto irr = Distribution::piecewise_linear_cdf(
      {{0.0, 0.0}, {0.2, 0.25}, {0.5, 0.5}, {0.6, 0.75}, {1.0, 1.0}});
  CHECK_FALSE(is_regular(irr));
}

TEST_CASE("monopoly price") {
  auto p = monopoly_price(base());
  CHECK(p.price == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(p.revenue == doctest::Approx(2.0 / 3).epsilon(1e-9));

  auto q = monopoly_price(Distribution::uniform(0, 1));
  CHECK(q.price == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(q.revenue == doctest::Approx(0.25).epsilon(1e-9));

  // support strictly above the unrestricted optimum: corner solution
  auto r = monopoly_price(truncate(base(), 1.5, 2.0));
  CHECK(r.price == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(r.revenue == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("montone-virtual reserve") {
  CHECK(r_star(base(), 1.0) == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(r_star(Distribution::uniform(0, 1), 0.5) == doctest::Approx(0.75).epsilon(1e-9));
  // outside option below every virtual value on the support: clamp to lo
  CHECK(r_star(Distribution::uniform(3, 4), 0.5) == doctest::Approx(3.0));
  CHECK_THROWS_AS(r_star(base(), 0.0), std::domain_error);
  CHECK_THROWS_AS(r_star(base(), 2.5), std::domain_error);
}

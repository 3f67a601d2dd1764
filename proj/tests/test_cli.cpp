#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <string>

#include "doctest.h"
#include "preauction/report.hpp"

using namespace preauction;
using namespace preauction::cli;

static const char* kGood = R"(# sample configuration
[distribution]
family = uniform
lo = 0.5
hi = 2.0

[seller]
outside_option = 1.0

[equilibrium]
policy = any_high
regime = restricted
tau = 1.5

[simulate]
seed = 77
draws = 50000
workers = 2

[sweep]
c_min = 0.4
c_max = 1.1
c_points = 8
)";

TEST_CASE("config parsing: happy path") {
  auto cfg = parse_config_text(kGood, "good.ini");
  CHECK(cfg.dist.family == Family::Uniform);
  CHECK(cfg.dist.lo == doctest::Approx(0.5));
  CHECK(cfg.dist.hi == doctest::Approx(2.0));
  CHECK(cfg.outside_option == doctest::Approx(1.0));
  REQUIRE(cfg.tau.has_value());
  CHECK(*cfg.tau == doctest::Approx(1.5));
  CHECK(cfg.policy == RunPolicy::AnyHigh);
  CHECK(cfg.regime == Regime::RestrictedAnyHigh);
  CHECK(cfg.simulate.seed == 77);
  CHECK(cfg.simulate.draws == 50000);
  CHECK(cfg.simulate.workers == 2);
  CHECK(cfg.sweep.c_points == 8);

  auto d = make_distribution(cfg.dist);
  CHECK(d.lo() == doctest::Approx(0.5));
}

TEST_CASE("config parsing: piecewise knots and policy combinations") {
  const char* text = R"([distribution]
family = piecewise_linear_cdf
knots = 0:0, 0.2:0.25, 0.5:0.5, 0.6:0.75, 1:1

[seller]
outside_option = 0.4

[equilibrium]
policy = both_high
regime = restricted
)";
  auto cfg = parse_config_text(text, "pw.ini");
  CHECK(cfg.dist.family == Family::PiecewiseLinearCdf);
  REQUIRE(cfg.dist.knots.size() == 5);
  CHECK(cfg.dist.knots[3].first == doctest::Approx(0.6));
  CHECK(cfg.dist.knots[3].second == doctest::Approx(0.75));
  CHECK(cfg.regime == Regime::RestrictedBothHigh);
  CHECK_FALSE(cfg.tau.has_value());
  auto d = make_distribution(cfg.dist);
  CHECK(d.pdf(0.55) == doctest::Approx(2.5).epsilon(1e-12));

  // unrestricted regime implies the both-high run rule
  const char* unres = R"([distribution]
family = uniform
lo = 0.5
hi = 2.0

[seller]
outside_option = 1.0

[equilibrium]
regime = unrestricted
)";
  auto u = parse_config_text(unres, "u.ini");
  CHECK(u.regime == Regime::UnrestrictedBothHigh);
  CHECK(u.policy == RunPolicy::BothHigh);
}

static int error_line(const std::string& text, const std::string& name) {
  try {
    parse_config_text(text, name);
  } catch (const ConfigError& e) {
    return e.line;
  }
  return -1;
}

TEST_CASE("config parsing: errors carry location") {
  // unknown key
  {
    const char* text = "[distribution]\nfamily = uniform\nskew = 1.2\n";
    try {
      parse_config_text(text, "bad.ini");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line == 3);
      CHECK(e.col == 1);
      CHECK(std::string(e.what()).find("bad.ini:3:1") == 0);
      CHECK(std::string(e.what()).find("skew") != std::string::npos);
    }
  }
  // unknown section
  CHECK(error_line("[distribution]\nfamily = uniform\n\n[auction]\nx = 1\n", "s.ini") == 4);
  // bad number: the column points at the value
  {
    const char* text = "[distribution]\nfamily = uniform\nlo = abc\n";
    try {
      parse_config_text(text, "n.ini");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line == 3);
      CHECK(e.col == 6);
    }
  }
  // missing required sections
  CHECK(error_line("[seller]\noutside_option = 1\n", "m.ini") == 0);
  CHECK(error_line("[distribution]\nfamily = uniform\nlo = 0.5\nhi = 2\n", "m2.ini") == 0);
  // outside option must sit inside (0, hi)
  CHECK(error_line(
            "[distribution]\nfamily = uniform\nlo = 0.5\nhi = 2\n\n[seller]\noutside_option = 2.5\n",
            "c.ini") == 0);
  // explicit any-high conflicts with the unrestricted regime
  CHECK(error_line("[distribution]\nfamily = uniform\nlo = 0.5\nhi = 2\n\n[seller]\n"
                   "outside_option = 1\n\n[equilibrium]\npolicy = any_high\nregime = unrestricted\n",
                   "x.ini") == 0);
  // malformed knots
  CHECK(error_line("[distribution]\nfamily = piecewise_linear_cdf\nknots = 0:0, 1\n\n"
                   "[seller]\noutside_option = 0.4\n",
                   "k.ini") == 3);
  // key before any section
  CHECK(error_line("family = uniform\n[distribution]\n", "pre.ini") == 1);
}

TEST_CASE("config round trip") {
  auto cfg = parse_config_text(kGood, "good.ini");
  const std::string ini = to_ini(cfg);
  auto back = parse_config_text(ini, "roundtrip.ini");
  CHECK(back.dist.lo == cfg.dist.lo);
  CHECK(back.dist.hi == cfg.dist.hi);
  CHECK(back.outside_option == cfg.outside_option);
  CHECK(back.tau.has_value() == cfg.tau.has_value());
  CHECK(*back.tau == *cfg.tau);
  CHECK(back.policy == cfg.policy);
  CHECK(back.regime == cfg.regime);
  CHECK(back.simulate.seed == cfg.simulate.seed);
  CHECK(back.simulate.draws == cfg.simulate.draws);
  CHECK(back.sweep.c_min == cfg.sweep.c_min);
  CHECK(back.sweep.c_points == cfg.sweep.c_points);
  CHECK(to_ini(back) == ini);
}

TEST_CASE("names") {
  CHECK(policy_name(RunPolicy::AnyHigh) == "any_high");
  CHECK(policy_name(RunPolicy::BothHigh) == "both_high");
  CHECK(regime_name(Regime::RestrictedAnyHigh) == "restricted_any_high");
  CHECK(regime_name(Regime::RestrictedBothHigh) == "restricted_both_high");
  CHECK(regime_name(Regime::UnrestrictedBothHigh) == "unrestricted_both_high");
}

TEST_CASE("report json") {
  auto cfg = parse_config_text(kGood, "good.ini");
  auto hdr = report_header(cfg);
  CHECK(hdr["schema_version"] == 1);
  CHECK(hdr["tool"]["name"] == "preauction");
  CHECK(hdr["config"]["distribution"]["family"] == "uniform");

  // deterministic serialization
  auto F = make_distribution(cfg.dist);
  auto rep = regime_report(F, 1.0);
  const std::string a = to_json(rep).dump(2);
  const std::string b = to_json(regime_report(F, 1.0)).dump(2);
  CHECK(a == b);

  auto j = to_json(rep);
  CHECK_NOTHROW(require_finite(j, "regime_report"));
  CHECK(j["full_commitment"]["reserve"].get<double>() == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(j["seller_optimal"]["found"].get<bool>());

  Json bad;
  bad["x"] = std::nan("");
  CHECK_THROWS_AS(require_finite(bad, "bad"), std::runtime_error);
  Json inf;
  inf["nested"]["y"] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(require_finite(inf, "inf"), std::runtime_error);
}

TEST_CASE("csv and plot tables") {
  auto F = Distribution::uniform(0.5, 2.0);
  auto sweep = sweep_c(F, {0.4, 1.0});
  const std::string csv = sweep_csv(sweep);
  CHECK(csv.find("c,valid,tau,seller_payoff,p_auction,p_no_trade_given_auction,note") == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

  const std::string tab = plot_table({{1.0, 2.0}, {1.5, 2.5}}, "x", "y");
  CHECK(tab.find("# x y") == 0);
  CHECK(tab.find("1.5") != std::string::npos);
}

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "preauction/equilibria.hpp"

namespace preauction::cli {

struct ConfigError : std::runtime_error {
  ConfigError(const std::string& file, int line, int col, const std::string& msg);
  int line = 0;
  int col = 0;
};

struct DistributionSpec {
  Family family = Family::Uniform;
  double lo = 0, hi = 1;
  std::vector<std::pair<double, double>> knots;  // piecewise_linear_cdf only
};

struct SimulateSpec {
  std::uint64_t seed = 12345;
  std::uint64_t draws = 200000;
  int workers = 0;
};

struct SweepSpec {
  double c_min = 0.3;
  double c_max = 1.2;
  int c_points = 20;
};

struct RunConfig {
  DistributionSpec dist;
  double outside_option = 1.0;
  std::optional<double> tau;
  RunPolicy policy = RunPolicy::AnyHigh;
  Regime regime = Regime::RestrictedAnyHigh;
  num::NumericConfig numeric;
  SimulateSpec simulate;
  SweepSpec sweep;
};

// Strict INI: unknown sections or keys are errors carrying line and column.
RunConfig parse_config_text(const std::string& text, const std::string& filename);
RunConfig load_config(const std::string& path);

// Canonical round-trippable encoding of a config.
std::string to_ini(const RunConfig& cfg);

Distribution make_distribution(const DistributionSpec& spec);

std::string policy_name(RunPolicy pol);
std::string regime_name(Regime regime);

}  // namespace preauction::cli

#include "preauction/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace preauction::cli {

namespace {

std::string format_error(const std::string& file, int line, int col,
                         const std::string& msg) {
  std::ostringstream os;
  os << file << ":" << line << ":" << col << ": " << msg;
  return os.str();
}

}  // namespace

ConfigError::ConfigError(const std::string& file, int line, int col,
                         const std::string& msg)
    : std::runtime_error(format_error(file, line, col, msg)), line(line), col(col) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

struct Cursor {
  const std::string& file;
  int line = 0;
  int col = 1;
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(file, line, col, msg);
  }
};

double parse_double(std::string_view v, const Cursor& at) {
  const std::string s(trim(v));
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') at.fail("expected a number, got '" + s + "'");
  return x;
}

long long parse_int(std::string_view v, const Cursor& at) {
  const std::string s(trim(v));
  char* end = nullptr;
  const long long x = std::strtoll(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0') at.fail("expected an integer, got '" + s + "'");
  return x;
}

std::vector<std::pair<double, double>> parse_knots(std::string_view v, const Cursor& at) {
  std::vector<std::pair<double, double>> knots;
  std::string s(v);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      at.fail("knot entries look like value:cdf, got '" + std::string(trim(item)) + "'");
    knots.push_back({parse_double(item.substr(0, colon), at),
                     parse_double(item.substr(colon + 1), at)});
  }
  if (knots.empty()) at.fail("knots list is empty");
  return knots;
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& filename) {
  RunConfig cfg;
  bool have_dist = false, have_seller = false, policy_was_set = false;
  bool dist_is_piecewise = false, regime_unrestricted = false;

  std::istringstream in(text);
  std::string raw;
  std::string section;
  Cursor at{filename, 0, 1};

  while (std::getline(in, raw)) {
    ++at.line;
    std::string line = raw;
    if (const auto hash = line.find_first_of("#;"); hash != std::string::npos)
      line.erase(hash);
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    at.col = static_cast<int>(raw.find_first_not_of(" \t")) + 1;

    if (body.front() == '[') {
      if (body.back() != ']') at.fail("unterminated section header");
      section = std::string(trim(body.substr(1, body.size() - 2)));
      if (section != "distribution" && section != "seller" && section != "equilibrium" &&
          section != "numeric" && section != "simulate" && section != "sweep")
        at.fail("unknown section [" + section + "]");
      if (section == "distribution") have_dist = true;
      if (section == "seller") have_seller = true;
      continue;
    }

    const auto eq = body.find('=');
    if (eq == std::string_view::npos) at.fail("expected key = value");
    const std::string key(trim(body.substr(0, eq)));
    const std::string_view val = trim(body.substr(eq + 1));
    if (section.empty()) at.fail("key '" + key + "' appears before any section");
    Cursor vat = at;
    const auto eq_raw = raw.find('=');
    const auto vstart = raw.find_first_not_of(" \t", eq_raw + 1);
    vat.col = static_cast<int>(vstart == std::string::npos ? eq_raw + 2 : vstart + 1);
    if (val.empty()) vat.fail("key '" + key + "' has no value");

    if (section == "distribution") {
      if (key == "family") {
        if (val == "uniform") {
          cfg.dist.family = Family::Uniform;
        } else if (val == "piecewise_linear_cdf") {
          cfg.dist.family = Family::PiecewiseLinearCdf;
          dist_is_piecewise = true;
        } else {
          vat.fail("family must be uniform or piecewise_linear_cdf");
        }
      } else if (key == "lo") {
        cfg.dist.lo = parse_double(val, vat);
      } else if (key == "hi") {
        cfg.dist.hi = parse_double(val, vat);
      } else if (key == "knots") {
        cfg.dist.knots = parse_knots(val, vat);
      } else {
        at.fail("unknown key '" + key + "' in [distribution]");
      }
    } else if (section == "seller") {
      if (key == "outside_option") {
        cfg.outside_option = parse_double(val, vat);
      } else {
        at.fail("unknown key '" + key + "' in [seller]");
      }
    } else if (section == "equilibrium") {
      if (key == "tau") {
        cfg.tau = parse_double(val, vat);
      } else if (key == "policy") {
        policy_was_set = true;
        if (val == "any_high") {
          cfg.policy = RunPolicy::AnyHigh;
        } else if (val == "both_high") {
          cfg.policy = RunPolicy::BothHigh;
        } else {
          vat.fail("policy must be any_high or both_high");
        }
      } else if (key == "regime") {
        if (val == "restricted") {
          regime_unrestricted = false;
        } else if (val == "unrestricted") {
          regime_unrestricted = true;
        } else {
          vat.fail("regime must be restricted or unrestricted");
        }
      } else {
        at.fail("unknown key '" + key + "' in [equilibrium]");
      }
    } else if (section == "numeric") {
      if (key == "quad_points") {
        cfg.numeric.quad_points = static_cast<int>(parse_int(val, vat));
      } else if (key == "root_tol") {
        cfg.numeric.root_tol = parse_double(val, vat);
      } else if (key == "grid_points") {
        cfg.numeric.grid_points = static_cast<int>(parse_int(val, vat));
      } else {
        at.fail("unknown key '" + key + "' in [numeric]");
      }
    } else if (section == "simulate") {
      if (key == "seed") {
        cfg.simulate.seed = static_cast<std::uint64_t>(parse_int(val, vat));
      } else if (key == "draws") {
        const long long d = parse_int(val, vat);
        if (d <= 0) vat.fail("draws must be positive");
        cfg.simulate.draws = static_cast<std::uint64_t>(d);
      } else if (key == "workers") {
        cfg.simulate.workers = static_cast<int>(parse_int(val, vat));
      } else {
        at.fail("unknown key '" + key + "' in [simulate]");
      }
    } else if (section == "sweep") {
      if (key == "c_min") {
        cfg.sweep.c_min = parse_double(val, vat);
      } else if (key == "c_max") {
        cfg.sweep.c_max = parse_double(val, vat);
      } else if (key == "c_points") {
        const long long n = parse_int(val, vat);
        if (n < 2) vat.fail("c_points must be at least 2");
        cfg.sweep.c_points = static_cast<int>(n);
      } else {
        at.fail("unknown key '" + key + "' in [sweep]");
      }
    }
  }

  if (!have_dist) throw ConfigError(filename, 0, 0, "missing [distribution] section");
  if (!have_seller) throw ConfigError(filename, 0, 0, "missing [seller] section");
  if (dist_is_piecewise && cfg.dist.knots.empty())
    throw ConfigError(filename, 0, 0, "piecewise_linear_cdf requires knots");
  if (regime_unrestricted) {
    if (policy_was_set && cfg.policy == RunPolicy::AnyHigh)
      throw ConfigError(filename, 0, 0,
                        "the unrestricted regime runs only after two high messages; "
                        "use policy = both_high");
    cfg.policy = RunPolicy::BothHigh;
    cfg.regime = Regime::UnrestrictedBothHigh;
  } else {
    cfg.regime = cfg.policy == RunPolicy::AnyHigh ? Regime::RestrictedAnyHigh
                                                  : Regime::RestrictedBothHigh;
  }

  Distribution F = make_distribution(cfg.dist);  // validates the family parameters
  if (!(cfg.outside_option > 0 && cfg.outside_option < F.hi()))
    throw ConfigError(filename, 0, 0, "outside_option must lie in (0, hi)");
  try {
    cfg.numeric.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(filename, 0, 0, e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

Distribution make_distribution(const DistributionSpec& spec) {
  try {
    if (spec.family == Family::Uniform)
      return Distribution::uniform(spec.lo, spec.hi);
    return Distribution::piecewise_linear_cdf(spec.knots);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("config", 0, 0, e.what());
  }
}

std::string policy_name(RunPolicy pol) {
  return pol == RunPolicy::AnyHigh ? "any_high" : "both_high";
}

std::string regime_name(Regime regime) {
  switch (regime) {
    case Regime::RestrictedAnyHigh:
      return "restricted_any_high";
    case Regime::RestrictedBothHigh:
      return "restricted_both_high";
    default:
      return "unrestricted_both_high";
  }
}

std::string to_ini(const RunConfig& cfg) {
  std::ostringstream os;
  os.precision(17);
  os << "[distribution]\n";
  if (cfg.dist.family == Family::Uniform) {
    os << "family = uniform\n";
    os << "lo = " << cfg.dist.lo << "\n";
    os << "hi = " << cfg.dist.hi << "\n";
  } else {
    os << "family = piecewise_linear_cdf\n";
    os << "knots = ";
    for (size_t i = 0; i < cfg.dist.knots.size(); ++i) {
      if (i) os << ", ";
      os << cfg.dist.knots[i].first << ":" << cfg.dist.knots[i].second;
    }
    os << "\n";
  }
  os << "\n[seller]\n";
  os << "outside_option = " << cfg.outside_option << "\n";
  os << "\n[equilibrium]\n";
  if (cfg.tau) os << "tau = " << *cfg.tau << "\n";
  os << "policy = " << policy_name(cfg.policy) << "\n";
  os << "regime = "
     << (cfg.regime == Regime::UnrestrictedBothHigh ? "unrestricted" : "restricted")
     << "\n";
  os << "\n[numeric]\n";
  os << "quad_points = " << cfg.numeric.quad_points << "\n";
  os << "root_tol = " << cfg.numeric.root_tol << "\n";
  os << "grid_points = " << cfg.numeric.grid_points << "\n";
  os << "\n[simulate]\n";
  os << "seed = " << cfg.simulate.seed << "\n";
  os << "draws = " << cfg.simulate.draws << "\n";
  os << "workers = " << cfg.simulate.workers << "\n";
  os << "\n[sweep]\n";
  os << "c_min = " << cfg.sweep.c_min << "\n";
  os << "c_max = " << cfg.sweep.c_max << "\n";
  os << "c_points = " << cfg.sweep.c_points << "\n";
  return os.str();
}

}  // namespace preauction::cli

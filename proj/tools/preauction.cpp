#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include "CLI11.hpp"
#include "preauction/perturbations.hpp"
#include "preauction/report.hpp"

namespace pa = preauction;
namespace cli = preauction::cli;
namespace fs = std::filesystem;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
};

cli::RunConfig load(const CommonArgs& args) { return cli::load_config(args.config_path); }

void ensure_out(const std::string& dir) {
  if (!dir.empty() && dir != ".") fs::create_directories(dir);
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void write_report(const std::string& path, const cli::Json& j) {
  cli::require_finite(j, "report");
  cli::write_text(path, j.dump(2) + "\n");
  std::printf("wrote %s\n", path.c_str());
}

double resolve_tau(const cli::RunConfig& cfg, const pa::Distribution& F,
                   const pa::num::NumericConfig& num) {
  if (cfg.tau) return *cfg.tau;
  if (cfg.regime == pa::Regime::RestrictedAnyHigh) {
    const auto res = pa::seller_optimal_restricted(F, cfg.outside_option, num);
    if (res.found) {
      std::printf("tau not set; using the seller-preferred cutoff %.9g\n", res.eq.tau);
      return res.eq.tau;
    }
    throw std::runtime_error("no seller-preferred cutoff exists; pass --tau");
  }
  throw std::runtime_error("set tau in [equilibrium] or pass --tau for this regime");
}

int run_analyze(const CommonArgs& args) {
  const cli::RunConfig cfg = load(args);
  const pa::Distribution F = cli::make_distribution(cfg.dist);
  const pa::RegimeReport rep = pa::regime_report(F, cfg.outside_option, cfg.numeric);
  const pa::LyingSustainableSets lying =
      pa::lying_cost_sustainable_set(F, cfg.outside_option, cfg.numeric);

  cli::Json j = cli::report_header(cfg);
  j["analysis"] = cli::to_json(rep);
  j["lying_cost"] = cli::to_json(lying);

  ensure_out(args.out_dir);
  write_report(join(args.out_dir, "report.json"), j);

  // cutoff -> payoff / utility curves for plotting
  const double lo = F.lo(), hi = F.hi();
  std::vector<std::pair<double, double>> payoff, utility;
  const int n = 200;
  for (int i = 1; i < n; ++i) {
    const double tau = lo + (hi - lo) * i / n;
    payoff.push_back({tau, pa::seller_payoff(F, tau, cfg.outside_option,
                                             cfg.policy, cfg.numeric)});
    utility.push_back({tau, pa::bidder_utility(F, tau, cfg.policy, cfg.numeric)});
  }
  cli::write_text(join(args.out_dir, "seller_payoff.dat"),
                  cli::plot_table(payoff, "tau", "seller_payoff"));
  cli::write_text(join(args.out_dir, "bidder_utility.dat"),
                  cli::plot_table(utility, "tau", "bidder_utility"));

  std::printf("full commitment: reserve %.6f payoff %.6f\n", rep.fc.reserve,
              rep.fc.payoff);
  if (rep.unrestricted.found)
    std::printf("unrestricted cutoffs: [%.6f, %.6f] (%s / %s)\n", rep.unrestricted.tau_lo,
                rep.unrestricted.tau_hi, rep.unrestricted.binding_lo.c_str(),
                rep.unrestricted.binding_hi.c_str());
  if (rep.seller_opt.found)
    std::printf("seller-preferred cutoff %.6f payoff %.6f\n", rep.seller_opt.eq.tau,
                rep.seller_opt.eq.seller_payoff);
  if (rep.bidder_opt.found)
    std::printf("bidder-preferred cutoff %.6f utility %.6f\n", rep.bidder_opt.eq.tau,
                rep.bidder_opt.eq.bidder_utility);
  for (const auto& note : rep.notes) std::printf("note: %s\n", note.c_str());
  return 0;
}

int run_sweep(const CommonArgs& args) {
  const cli::RunConfig cfg = load(args);
  const pa::Distribution F = cli::make_distribution(cfg.dist);
  const auto cs = pa::linspace(cfg.sweep.c_min, cfg.sweep.c_max, cfg.sweep.c_points);
  const pa::SweepResult sweep = pa::sweep_c(F, cs, cfg.numeric);

  cli::Json j = cli::report_header(cfg);
  j["sweep"] = cli::to_json(sweep);
  ensure_out(args.out_dir);
  write_report(join(args.out_dir, "sweep.json"), j);
  cli::write_text(join(args.out_dir, "sweep.csv"), cli::sweep_csv(sweep));
  std::printf("wrote %s\n", join(args.out_dir, "sweep.csv").c_str());

  int valid = 0;
  for (const auto& r : sweep.records) valid += r.valid;
  std::printf("%d/%zu grid points have a seller-preferred equilibrium\n", valid,
              sweep.records.size());
  for (const auto& v : sweep.violations) std::printf("violation: %s\n", v.c_str());
  return 0;
}

int run_simulate(const CommonArgs& args, std::uint64_t* seed, std::uint64_t* draws,
                 double* tau, int* workers) {
  cli::RunConfig cfg = load(args);
  if (seed) cfg.simulate.seed = *seed;
  if (draws) cfg.simulate.draws = *draws;
  if (tau) cfg.tau = *tau;
  if (workers) cfg.simulate.workers = *workers;

  const pa::Distribution F = cli::make_distribution(cfg.dist);
  const double t = resolve_tau(cfg, F, cfg.numeric);
  const pa::ThresholdEquilibrium eq =
      pa::make_equilibrium(F, cfg.outside_option, t, cfg.regime, cfg.numeric);

  pa::sim::SimConfig sc;
  sc.seed = cfg.simulate.seed;
  sc.draws = cfg.simulate.draws;
  sc.tau = t;
  sc.c = cfg.outside_option;
  sc.policy = cfg.policy;
  sc.workers = cfg.simulate.workers;
  const pa::sim::SimResult res = pa::sim::simulate_game(F, sc);

  const double dp = std::abs(res.seller_payoff.mean - eq.seller_payoff);
  const double du = std::abs(res.bidder_utility.mean - eq.bidder_utility);
  const bool payoff_ok = dp <= 3.0 * res.seller_payoff.se + 1e-12;
  const bool utility_ok = du <= 3.0 * res.bidder_utility.se + 1e-12;

  cli::Json j = cli::report_header(cfg);
  j["equilibrium"] = cli::to_json(eq);
  j["simulation"] = cli::to_json(res);
  j["agreement"] = {{"seller_payoff_delta", dp},
                    {"seller_payoff_ok", payoff_ok},
                    {"bidder_utility_delta", du},
                    {"bidder_utility_ok", utility_ok}};
  ensure_out(args.out_dir);
  write_report(join(args.out_dir, "simulate.json"), j);

  std::printf("draws %llu workers %d p_auction %.6f\n",
              static_cast<unsigned long long>(res.draws), res.workers_used,
              res.p_auction);
  std::printf("seller payoff mc %.6f +- %.2g vs model %.6f  %s\n",
              res.seller_payoff.mean, res.seller_payoff.se, eq.seller_payoff,
              payoff_ok ? "PASS" : "FAIL");
  std::printf("bidder utility mc %.6f +- %.2g vs model %.6f  %s\n",
              res.bidder_utility.mean, res.bidder_utility.se, eq.bidder_utility,
              utility_ok ? "PASS" : "FAIL");
  return payoff_ok && utility_ok ? 0 : 1;
}

int run_verify(const CommonArgs& args, double* tau) {
  cli::RunConfig cfg = load(args);
  if (tau) cfg.tau = *tau;
  const pa::Distribution F = cli::make_distribution(cfg.dist);
  const double t = resolve_tau(cfg, F, cfg.numeric);
  const pa::ThresholdEquilibrium eq =
      pa::make_equilibrium(F, cfg.outside_option, t, cfg.regime, cfg.numeric);
  const pa::sim::SlackReport slack = pa::sim::seller_ic_slack(F, eq, cfg.numeric);
  const pa::sim::DeviationReport dev = pa::sim::deviation_regret(F, eq, 200, cfg.numeric);

  const bool regret_ok = dev.max_regret <= 1e-4;
  cli::Json j = cli::report_header(cfg);
  j["equilibrium"] = cli::to_json(eq);
  j["seller_slack"] = cli::to_json(slack);
  j["deviation"] = cli::to_json(dev, true);
  j["pass"] = slack.all_consistent && regret_ok;
  ensure_out(args.out_dir);
  write_report(join(args.out_dir, "verify.json"), j);

  std::printf("seller run pattern consistent: %s\n",
              slack.all_consistent ? "PASS" : "FAIL");
  std::printf("max message regret %.3g at v=%.6f: %s\n", dev.max_regret, dev.worst.v,
              regret_ok ? "PASS" : "FAIL");
  return slack.all_consistent && regret_ok ? 0 : 1;
}

int run_example() {
  const pa::Distribution F = pa::Distribution::uniform(0.5, 2.0);
  const double c = 1.0;
  int failures = 0;
  auto check = [&](const char* what, bool ok) {
    std::printf("%-52s %s\n", what, ok ? "PASS" : "FAIL");
    failures += ok ? 0 : 1;
  };

  const pa::FullCommitment fc = pa::full_commitment(F, c);
  std::printf("full-commitment reserve %.9f payoff %.9f\n", fc.reserve, fc.payoff);
  check("reserve of the committed seller is 1.5", std::abs(fc.reserve - 1.5) < 1e-9);

  const pa::UnrestrictedRange ur = pa::unrestricted_threshold_range(F, c);
  if (ur.found)
    std::printf("unrestricted cutoffs [%.6f, %.6f]\n", ur.tau_lo, ur.tau_hi);
  check("unrestricted range near [0.423, 0.854]",
        ur.found && std::abs(ur.tau_lo - 0.423) < 5e-3 &&
            std::abs(ur.tau_hi - 0.854) < 5e-3);

  const pa::EquilibriumResult so = pa::seller_optimal_restricted(F, c);
  if (so.found)
    std::printf("seller-preferred cutoff %.9f payoff %.9f\n", so.eq.tau,
                so.eq.seller_payoff);
  check("seller-preferred cutoff matches full commitment",
        so.found && std::abs(so.eq.tau - fc.reserve) < 1e-6 &&
            std::abs(so.eq.seller_payoff - fc.payoff) < 1e-6);

  const pa::EquilibriumResult bo = pa::bidder_optimal_restricted(F, c);
  if (bo.found)
    std::printf("bidder-preferred cutoff %.9f utility %.9f\n", bo.eq.tau,
                bo.eq.bidder_utility);
  check("bidder-preferred cutoff is 1.0", bo.found && std::abs(bo.eq.tau - 1.0) < 1e-6);

  const pa::Posterior low = pa::truncate(F, 0.5, 1.5);
  const pa::ReserveChoice rc = pa::optimal_common_reserve(low, low);
  std::printf("low-low reserve %.9f revenue %.9f\n", rc.reserve, rc.revenue);
  check("low-low optimum is (0.75, 27/32)", std::abs(rc.reserve - 0.75) < 1e-4 &&
                                                std::abs(rc.revenue - 27.0 / 32) < 1e-6);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equilibrium analysis for pre-auction cheap talk with a "
               "limited-commitment seller"};
  app.require_subcommand(1);

  CommonArgs analyze_args, sweep_args, sim_args, verify_args;
  std::uint64_t seed = 0, draws = 0;
  double sim_tau = 0, verify_tau = 0;
  int workers = 0;
  bool has_seed = false, has_draws = false, has_sim_tau = false, has_verify_tau = false,
       has_workers = false;

  auto add_common = [](CLI::App* sub, CommonArgs& args) {
    sub->add_option("--config", args.config_path, "INI configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", args.out_dir, "output directory (default .)");
  };

  CLI::App* analyze =
      app.add_subcommand("analyze", "equilibrium sets, optima, and curves");
  add_common(analyze, analyze_args);

  CLI::App* sweep = app.add_subcommand("sweep", "seller optimum across outside options");
  add_common(sweep, sweep_args);

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo check of a cutoff");
  add_common(simulate, sim_args);
  simulate->add_option("--seed", seed, "rng seed override")
      ->each([&](const std::string&) { has_seed = true; });
  simulate->add_option("--draws", draws, "draw count override")
      ->each([&](const std::string&) { has_draws = true; });
  simulate->add_option("--tau", sim_tau, "cutoff override")
      ->each([&](const std::string&) { has_sim_tau = true; });
  simulate->add_option("--workers", workers, "worker thread override")
      ->each([&](const std::string&) { has_workers = true; });

  CLI::App* verify =
      app.add_subcommand("verify", "recheck incentives and message regret at a cutoff");
  add_common(verify, verify_args);
  verify->add_option("--tau", verify_tau, "cutoff override")
      ->each([&](const std::string&) { has_verify_tau = true; });

  CLI::App* example = app.add_subcommand("example", "built-in uniform showcase");
  (void)example;

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return run_analyze(analyze_args);
    if (sweep->parsed()) return run_sweep(sweep_args);
    if (simulate->parsed())
      return run_simulate(sim_args, has_seed ? &seed : nullptr,
                          has_draws ? &draws : nullptr, has_sim_tau ? &sim_tau : nullptr,
                          has_workers ? &workers : nullptr);
    if (verify->parsed())
      return run_verify(verify_args, has_verify_tau ? &verify_tau : nullptr);
    if (example->parsed()) return run_example();
  } catch (const cli::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

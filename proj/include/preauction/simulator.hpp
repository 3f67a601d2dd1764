#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "preauction/equilibria.hpp"

namespace preauction::sim {

// Counter-based generator: output k of a stream is a hash of (key, k), so any
// draw can be produced independently of the others.
struct CounterRng {
  std::uint64_t key = 0;
  std::uint64_t ctr = 0;
  std::uint64_t next_u64();
  double next_unit();  // [0, 1)
};

CounterRng rng_stream(std::uint64_t seed, std::uint64_t stream);

struct Estimate {
  double mean = 0;
  double se = 0;
  std::uint64_t n = 0;
};

struct SimConfig {
  std::uint64_t seed = 12345;
  std::uint64_t draws = 100000;
  double tau = 0;
  double c = 0;
  RunPolicy policy = RunPolicy::AnyHigh;
  int workers = 0;  // 0: PREAUCTION_THREADS env var, then hardware count
  // optional second-price probe per profile (HH, HL, LL), evaluated whether or
  // not the profile triggers the auction; negative disables
  std::array<double, 3> probe_reserve{-1.0, -1.0, -1.0};
};

struct SimResult {
  std::uint64_t draws = 0;
  std::uint64_t runs = 0;
  std::array<std::uint64_t, 3> profile_counts{};  // HH, HL(+LH), LL
  double p_auction = 0;
  Estimate revenue_given_run;
  Estimate seller_payoff;
  Estimate bidder_utility;  // per-bidder ex-ante (two-bidder average per game)
  std::array<Estimate, 3> probe_revenue;
  int workers_used = 1;
};

// Fixed-size batches, one rng stream per batch, partial sums folded in batch
// order: results are byte-identical for any worker count.
SimResult simulate_game(const Distribution& F, const SimConfig& cfg);

struct ProfileSlack {
  double revenue = 0;
  double slack = 0;
  bool runs = false;
  bool consistent = false;  // running (or not) matches the sign of the slack
};

struct SlackReport {
  std::array<ProfileSlack, 3> profile;  // HH, HL, LL
  bool all_consistent = false;
};

// Recompute the t = 2 revenues behind an equilibrium and check that the
// prescribed run/no-run pattern is what the seller actually prefers.
SlackReport seller_ic_slack(const Distribution& F, const ThresholdEquilibrium& eq,
                            const num::NumericConfig& cfg = {});

struct RegretPoint {
  double v = 0;
  double u_keep = 0;    // utility of the prescribed message
  double u_switch = 0;  // utility of the other message
  double regret = 0;    // u_switch - u_keep
};

struct DeviationReport {
  double max_regret = 0;
  RegretPoint worst;
  bool seller_policy_respected = true;  // no profile needed a best-response fix
  std::vector<RegretPoint> grid;
};

// Interim message regret on a grid of types. The seller's reaction to each
// profile is the prescribed one when consistent with its own incentives, and
// the best response otherwise; deviators bid at the posterior support edge and
// can always abstain, so utilities are floored at zero.
DeviationReport deviation_regret(const Distribution& F, const ThresholdEquilibrium& eq,
                                 int grid_n = 200, const num::NumericConfig& cfg = {});

// Monte Carlo interim utility of type v sending the given message, under the
// equilibrium's run rule and its common reserve.
Estimate interim_utility_mc(const Distribution& F, const ThresholdEquilibrium& eq,
                            double v, bool send_high, std::uint64_t n,
                            std::uint64_t seed);

// Net gain of the marginal type when entry costs eps and a rebate k*eps is
// paid if the auction runs; zero in expectation at the right k.
Estimate entry_gap_mc(const Distribution& F, double tau, RunPolicy pol, double k,
                      double eps, std::uint64_t n, std::uint64_t seed,
                      const num::NumericConfig& cfg = {});

}  // namespace preauction::sim

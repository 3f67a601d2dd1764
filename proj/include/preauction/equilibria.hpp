#pragma once

#include <optional>
#include <string>
#include <vector>

#include "preauction/mechanisms.hpp"

namespace preauction {

// When the seller runs the auction: after at least one high message, or only
// after two.
enum class RunPolicy { AnyHigh, BothHigh };

enum class Regime { RestrictedAnyHigh, RestrictedBothHigh, UnrestrictedBothHigh };

// Seller payoff of cutoff tau with outside option c, auction run per policy.
double seller_payoff(const Distribution& F, double tau, double c, RunPolicy pol,
                     const num::NumericConfig& cfg = {});

// Ex-ante utility of one bidder under the same rule.
double bidder_utility(const Distribution& F, double tau, RunPolicy pol,
                      const num::NumericConfig& cfg = {});

struct FullCommitment {
  double reserve = 0;
  double payoff = 0;
};

// Benchmark where the seller can commit at t = 1: auction with reserve
// r_star(c), keeping c when nobody clears it.
FullCommitment full_commitment(const Distribution& F, double c,
                               const num::NumericConfig& cfg = {});

struct IntervalSet {
  std::vector<std::pair<double, double>> parts;
  bool empty() const { return parts.empty(); }
  bool contains(double x, double tol = 0.0) const;
  double measure() const;
};

struct UnrestrictedRange {
  bool found = false;
  double tau_lo = 0, tau_hi = 0;
  // which constraint pins each endpoint: "rev_hh", "rev_hl", "rev_ll", "support"
  std::string binding_lo, binding_hi;
  double residual_lo = 0, residual_hi = 0;
  double on_path_reserve = 0;  // auction reserve at the midpoint cutoff
  std::string note;
};

// Cutoffs sustainable when the seller may run any mechanism after (H,H) and
// walks away otherwise. The scan extends below the support: a cutoff under lo
// still defines the high posterior by linear extension of the lowest cdf
// segment, and the low-message profiles are vacuous there.
UnrestrictedRange unrestricted_threshold_range(const Distribution& F, double c,
                                               const num::NumericConfig& cfg = {});

struct RestrictedSets {
  IntervalSet any_high;   // run after at least one H (both posteriors priced in)
  IntervalSet both_high;  // run only after (H,H)
};

// Sustainable cutoffs when t = 2 is a second-price auction with one common
// reserve. Multiple sign changes yield unions of intervals.
RestrictedSets restricted_equilibrium_sets(const Distribution& F, double c,
                                           const num::NumericConfig& cfg = {});

struct ThresholdEquilibrium {
  Regime regime = Regime::RestrictedAnyHigh;
  double tau = 0;
  double c = 0;
  double on_path_reserve = 0;
  double seller_payoff = 0;
  double bidder_utility = 0;
  // revenue minus outside option per profile; sustaining requires the sign
  // pattern of the regime (equalities count, resolved in the seller's favor)
  double slack_hh = 0, slack_hl = 0, slack_ll = 0;
  bool ic_ok = false;
};

// Assemble the candidate equilibrium at tau and check the seller's t = 2
// incentives. tau may lie below the support only in the unrestricted regime.
ThresholdEquilibrium make_equilibrium(const Distribution& F, double c, double tau,
                                      Regime regime, const num::NumericConfig& cfg = {});

struct EquilibriumResult {
  bool found = false;
  ThresholdEquilibrium eq;
  std::string note;
};

// Seller-preferred restricted equilibrium: the payoff-maximizing cutoff under
// the any-high policy, capped by the no-run constraint after (L,L).
EquilibriumResult seller_optimal_restricted(const Distribution& F, double c,
                                            const num::NumericConfig& cfg = {});

// Bidder-preferred restricted equilibrium: the smallest sustainable cutoff,
// where the (H,L) revenue just covers the outside option.
EquilibriumResult bidder_optimal_restricted(const Distribution& F, double c,
                                            const num::NumericConfig& cfg = {});

struct RegimeReport {
  double c = 0;
  FullCommitment fc;
  UnrestrictedRange unrestricted;
  RestrictedSets restricted;
  EquilibriumResult seller_opt;
  EquilibriumResult bidder_opt;
  double p_auction = 0;
  double p_no_trade_given_auction = 0;
  std::vector<std::string> notes;
};

RegimeReport regime_report(const Distribution& F, double c,
                           const num::NumericConfig& cfg = {});

}  // namespace preauction

#pragma once

#include "preauction/equilibria.hpp"

namespace preauction {

struct SubsidyFactor {
  double k = 0;
  // true when the subsidy can be folded into the reserve, i.e. the cutoff is
  // already at or above the posted price
  bool deliverable_by_reserve = false;
};

// Entry-fee rebate multiplier that keeps the marginal type indifferent when
// participation costs eps: the inverse probability the auction runs given the
// marginal type's own high message.
SubsidyFactor entry_subsidy_factor(const Distribution& F, double tau, RunPolicy pol,
                                   const num::NumericConfig& cfg = {});

struct LyingCost {
  double min_density = 0;       // delta: density floor of the prior
  double max_second_deriv = 0;  // M: curvature bound of the misreport cost
};

double min_density(const Distribution& F);

// Cost l(m, v) = (m - v)^2, so the curvature bound is 2.
LyingCost quadratic_lying_cost(const Distribution& F);

// Message-cost scale below which cutoff equilibria survive: eps_bar = delta / M.
double lying_cost_epsilon_bar(const LyingCost& lc);

struct LyingSustainableSets {
  double window_lo = 0, window_hi = 0;  // [posted price, outside option]
  bool window_empty = true;
  IntervalSet restricted_any_high;
  IntervalSet restricted_both_high;
  IntervalSet unrestricted;
};

// Cutoffs that remain equilibria with a small smooth lying cost: the
// no-information-rent window [p_F, c] intersected with each sustainable set.
LyingSustainableSets lying_cost_sustainable_set(const Distribution& F, double c,
                                                const num::NumericConfig& cfg = {});

}  // namespace preauction

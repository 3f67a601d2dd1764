#pragma once

#include <string>

#include "preauction/ironing.hpp"

namespace preauction {

enum class MessageProfile { HH, HL, LL };

// What the seller may run at t = 2: the optimal direct mechanism for the
// posterior pair, or a second-price auction with one common reserve.
enum class MechanismRegime { Unrestricted, CommonReserve };

double posted_price_revenue(const ValueDist& d, double p);

// Expected revenue of a second-price auction with reserve r against two
// independent bidders.
double spa_revenue(const ValueDist& b1, const ValueDist& b2, double r,
                   const num::NumericConfig& cfg = {});

struct ReserveChoice {
  double reserve = 0;
  double revenue = 0;
};

// Revenue-maximizing common reserve; stationary points of the revenue
// derivative cross-checked against a grid argmax, ties to the smallest r.
ReserveChoice optimal_common_reserve(const ValueDist& b1, const ValueDist& b2,
                                     const num::NumericConfig& cfg = {});

// Expected revenue of the optimal mechanism for the posterior pair
// (ironed virtual values, allocation to the highest nonnegative one).
double myerson_revenue(const ValueDist& b1, const ValueDist& b2,
                       const num::NumericConfig& cfg = {});

struct MechanismSummary {
  std::string kind;  // "posted_price" | "spa_common_reserve" | "myerson"
  double revenue = 0;
  double reserve = 0;        // common reserve, posted price, or high-side reserve
  double reserve_low = 0;    // low-side reserve under the optimal mechanism
  bool low_bidder_excluded = false;
};

// Seller revenue at t = 2 after a message profile, given cutoff tau.
MechanismSummary rev_profile(const Distribution& F, double tau, MessageProfile prof,
                             MechanismRegime regime, const num::NumericConfig& cfg = {});

}  // namespace preauction

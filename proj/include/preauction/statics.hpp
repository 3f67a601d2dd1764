#pragma once

#include "preauction/equilibria.hpp"

namespace preauction {

struct TradeProbabilities {
  double p_auction = 0;
  double p_no_trade_given_auction = 0;
};

// Probability the auction runs under the cutoff rule, and the chance the good
// still goes unsold once it does (reserve above every bid).
TradeProbabilities trade_probabilities(const Distribution& F, double tau, RunPolicy pol,
                                       const num::NumericConfig& cfg = {});

struct StaticsRecord {
  double c = 0;
  bool valid = false;
  std::string note;
  double tau = 0;
  double seller_payoff = 0;
  double p_auction = 0;
  double p_no_trade_given_auction = 0;
};

struct SweepResult {
  std::vector<StaticsRecord> records;
  // adjacent-pair monotonicity failures among valid records (1e-9 slack)
  std::vector<std::string> violations;
};

// Seller-preferred restricted equilibrium across a grid of outside options.
// Values of c without an equilibrium yield flagged records that the
// monotonicity checks skip.
SweepResult sweep_c(const Distribution& F, const std::vector<double>& cs,
                    const num::NumericConfig& cfg = {});

std::vector<double> linspace(double a, double b, int n);

}  // namespace preauction

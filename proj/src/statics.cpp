#include "preauction/statics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace preauction {

TradeProbabilities trade_probabilities(const Distribution& F, double tau, RunPolicy pol,
                                       const num::NumericConfig& cfg) {
  const double r = std::max(tau, monopoly_price(F, cfg).price);
  const double ft = F.cdf(tau);
  const double fr = F.cdf(r);
  TradeProbabilities out;
  if (pol == RunPolicy::AnyHigh) {
    out.p_auction = 1.0 - ft * ft;
    if (out.p_auction > 0)
      out.p_no_trade_given_auction = std::max(0.0, (fr * fr - ft * ft) / out.p_auction);
  } else {
    out.p_auction = (1.0 - ft) * (1.0 - ft);
    if (out.p_auction > 0) {
      const double d = fr - ft;
      out.p_no_trade_given_auction = std::max(0.0, d * d / out.p_auction);
    }
  }
  return out;
}

SweepResult sweep_c(const Distribution& F, const std::vector<double>& cs,
                    const num::NumericConfig& cfg) {
  SweepResult out;
  out.records.reserve(cs.size());
  for (double c : cs) {
    StaticsRecord rec;
    rec.c = c;
    if (!(c > 0 && c < F.hi())) {
      rec.note = "outside option outside (0, hi)";
      out.records.push_back(rec);
      continue;
    }
    const EquilibriumResult res = seller_optimal_restricted(F, c, cfg);
    if (!res.found) {
      rec.note = res.note;
      out.records.push_back(rec);
      continue;
    }
    rec.valid = true;
    rec.tau = res.eq.tau;
    rec.seller_payoff = res.eq.seller_payoff;
    const TradeProbabilities tp =
        trade_probabilities(F, res.eq.tau, RunPolicy::AnyHigh, cfg);
    rec.p_auction = tp.p_auction;
    rec.p_no_trade_given_auction = tp.p_no_trade_given_auction;
    out.records.push_back(rec);
  }

  const StaticsRecord* prev = nullptr;
  auto flag = [&](const char* what, double a, double b, double ca, double cb) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s not monotone between c=%.6g (%.9g) and c=%.6g (%.9g)",
                  what, ca, a, cb, b);
    out.violations.push_back(buf);
  };
  for (const StaticsRecord& rec : out.records) {
    if (!rec.valid) continue;
    if (prev) {
      const double s = 1e-9;
      if (rec.tau < prev->tau - s) flag("cutoff", prev->tau, rec.tau, prev->c, rec.c);
      if (rec.seller_payoff < prev->seller_payoff - s)
        flag("seller payoff", prev->seller_payoff, rec.seller_payoff, prev->c, rec.c);
      if (rec.p_auction > prev->p_auction + s)
        flag("auction probability", prev->p_auction, rec.p_auction, prev->c, rec.c);
      if (rec.p_no_trade_given_auction > prev->p_no_trade_given_auction + s)
        flag("no-trade probability", prev->p_no_trade_given_auction,
             rec.p_no_trade_given_auction, prev->c, rec.c);
    }
    prev = &rec;
  }
  return out;
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) throw std::invalid_argument("linspace: n must be >= 2");
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = a + (b - a) * i / (n - 1);
  xs.back() = b;
  return xs;
}

}  // namespace preauction

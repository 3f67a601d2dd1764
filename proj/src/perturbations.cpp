#include "preauction/perturbations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace preauction {

SubsidyFactor entry_subsidy_factor(const Distribution& F, double tau, RunPolicy pol,
                                   const num::NumericConfig& cfg) {
  SubsidyFactor out;
  if (pol == RunPolicy::AnyHigh) {
    out.k = 1.0;  // one high message already triggers the auction
  } else {
    const double s = 1.0 - F.cdf(tau);
    if (!(s > 1e-12))
      throw std::invalid_argument("entry_subsidy_factor: cutoff leaves no high types");
    out.k = 1.0 / s;
  }
  const double p_f = monopoly_price(F, cfg).price;
  out.deliverable_by_reserve = tau >= p_f - 1e-12 * std::max(1.0, F.hi() - F.lo());
  return out;
}

double min_density(const Distribution& F) {
  const auto& k = F.knots();
  double m = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < k.size(); ++i)
    m = std::min(m, (k[i + 1].second - k[i].second) / (k[i + 1].first - k[i].first));
  return m;
}

LyingCost quadratic_lying_cost(const Distribution& F) {
  return {min_density(F), 2.0};
}

double lying_cost_epsilon_bar(const LyingCost& lc) {
  if (!(lc.min_density > 0 && lc.max_second_deriv > 0))
    throw std::invalid_argument("lying_cost_epsilon_bar: positive bounds required");
  return lc.min_density / lc.max_second_deriv;
}

namespace {

IntervalSet intersect_window(const IntervalSet& s, double a, double b) {
  IntervalSet out;
  for (const auto& [x, y] : s.parts) {
    const double lo = std::max(x, a);
    const double hi = std::min(y, b);
    if (hi >= lo - 1e-9) out.parts.push_back({lo, std::max(lo, hi)});
  }
  return out;
}

}  // namespace

LyingSustainableSets lying_cost_sustainable_set(const Distribution& F, double c,
                                                const num::NumericConfig& cfg) {
  LyingSustainableSets out;
  const double p_f = monopoly_price(F, cfg).price;
  out.window_lo = p_f;
  out.window_hi = c;
  // truthful cutoffs need every type priced out of lying: no rents below the
  // cutoff (tau >= p_F) and none above it either (tau <= c)
  out.window_empty = c < p_f - 1e-9;
  if (out.window_empty) return out;

  const RestrictedSets rs = restricted_equilibrium_sets(F, c, cfg);
  out.restricted_any_high = intersect_window(rs.any_high, p_f, c);
  out.restricted_both_high = intersect_window(rs.both_high, p_f, c);

  const UnrestrictedRange ur = unrestricted_threshold_range(F, c, cfg);
  if (ur.found) {
    IntervalSet u;
    u.parts.push_back({ur.tau_lo, ur.tau_hi});
    out.unrestricted = intersect_window(u, p_f, c);
  }
  return out;
}

}  // namespace preauction

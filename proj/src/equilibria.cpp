#include "preauction/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace preauction {

namespace {

double span_slack(const Distribution& F) {
  return 1e-6 * (F.hi() - F.lo());
}

double sign_tol(double c) { return 1e-11 * std::max(1.0, std::abs(c)); }

// first-order statistic density weight: phi+(x) g1(x), g1 = 2 F f
double pi_any_integral(const Distribution& F, double from, double p_f,
                       const num::NumericConfig& cfg) {
  (void)cfg;
  auto integrand = [&](double x) {
    const double phi = virtual_value(F, x);
    return (phi > 0 ? phi : 0.0) * 2.0 * F.cdf(x) * F.pdf(x);
  };
  std::vector<double> br = F.breakpoints();
  br.push_back(p_f);
  return num::integrate_pieces(integrand, std::max(from, F.lo()), F.hi(), std::move(br));
}

}  // namespace

double seller_payoff(const Distribution& F, double tau, double c, RunPolicy pol,
                     const num::NumericConfig& cfg) {
  if (!(tau < F.hi())) return c;  // nobody ever says high: the option is kept
  const double p_f = monopoly_price(F, cfg).price;
  if (pol == RunPolicy::AnyHigh) {
    const double ftau = F.cdf(tau);
    return pi_any_integral(F, tau, p_f, cfg) + c * ftau * ftau;
  }
  // run only after two highs: condition on the lower value
  auto inner = [&](double x) {
    auto ivd = [&](double v) { return virtual_value(F, v) * F.pdf(v); };
    const double from = std::max(x, p_f);
    if (from >= F.hi()) return 0.0;
    return num::integrate_pieces(ivd, from, F.hi(), F.breakpoints(), 1e-11);
  };
  auto outer = [&](double x) { return 2.0 * F.pdf(x) * inner(x); };
  std::vector<double> br = F.breakpoints();
  br.push_back(p_f);
  const double run_part =
      num::integrate_pieces(outer, std::max(tau, F.lo()), F.hi(), std::move(br));
  const double s = 1.0 - F.cdf(tau);
  return run_part + c * (1.0 - s * s);
}

double bidder_utility(const Distribution& F, double tau, RunPolicy pol,
                      const num::NumericConfig& cfg) {
  if (!(tau < F.hi())) return 0.0;
  const double p_f = monopoly_price(F, cfg).price;
  const double r = std::max(tau, p_f);
  const double ftau = F.cdf(tau);
  auto win_mass = [&](double s) {
    const double fs = F.cdf(s);
    const double base = (pol == RunPolicy::AnyHigh) ? fs : fs - ftau;
    return base * (1.0 - fs);
  };
  if (r >= F.hi()) return 0.0;
  return num::integrate_pieces(win_mass, r, F.hi(), F.breakpoints());
}

FullCommitment full_commitment(const Distribution& F, double c,
                               const num::NumericConfig& cfg) {
  FullCommitment fc;
  fc.reserve = r_star(F, c, cfg);
  fc.payoff = seller_payoff(F, fc.reserve, c, RunPolicy::AnyHigh, cfg);
  return fc;
}

bool IntervalSet::contains(double x, double tol) const {
  for (const auto& [a, b] : parts)
    if (x >= a - tol && x <= b + tol) return true;
  return false;
}

double IntervalSet::measure() const {
  double m = 0;
  for (const auto& [a, b] : parts) m += std::max(0.0, b - a);
  return m;
}

namespace {

struct Constraint {
  std::string name;
  num::Fn g;
  bool needs_nonneg;  // sustaining requires g >= 0, else g <= 0
};

bool satisfied(const Constraint& cst, double x, double tol) {
  const double v = cst.g(x);
  return cst.needs_nonneg ? v >= -tol : v <= tol;
}

// Refine a member/non-member boundary. in_x satisfies every constraint,
// out_x fails at least one; returns the refined point and what binds there.
struct Boundary {
  double x;
  std::string binding;
  double residual;
};

Boundary refine_boundary(const std::vector<Constraint>& csts, double in_x, double out_x,
                         double tol, double root_tol) {
  Boundary b{in_x, "support", 0.0};
  bool have = false;
  for (const auto& cst : csts) {
    if (satisfied(cst, out_x, tol)) continue;
    double r;
    try {
      r = num::find_root(cst.g, std::min(in_x, out_x), std::max(in_x, out_x), root_tol).x;
    } catch (const std::invalid_argument&) {
      r = out_x;  // violated at both ends within tolerance: boundary at the edge
    }
    // the set's edge is the crossing closest to the interior point
    const bool closer = !have || std::abs(r - in_x) < std::abs(b.x - in_x);
    if (closer) b = {r, cst.name, std::abs(cst.g(r))};
    have = true;
  }
  if (!have) b.x = out_x;
  return b;
}

std::vector<std::pair<int, int>> member_runs(const std::vector<bool>& m) {
  std::vector<std::pair<int, int>> runs;
  int start = -1;
  for (int i = 0; i < static_cast<int>(m.size()); ++i) {
    if (m[i] && start < 0) start = i;
    if (!m[i] && start >= 0) {
      runs.push_back({start, i - 1});
      start = -1;
    }
  }
  if (start >= 0) runs.push_back({start, static_cast<int>(m.size()) - 1});
  return runs;
}

}  // namespace

UnrestrictedRange unrestricted_threshold_range(const Distribution& F, double c,
                                               const num::NumericConfig& cfg) {
  const double lo = F.lo(), hi = F.hi();
  const double span = hi - lo;
  const double edge = span_slack(F);
  const double tol = sign_tol(c);

  auto g_hh = [&, c](double tau) {
    const Posterior h = high_posterior(F, tau);
    return myerson_revenue(h, h, cfg) - c;
  };
  auto g_hl = [&, c](double tau) {
    if (tau <= lo + 0.5 * edge) return -c;  // no low types: profile off path
    return myerson_revenue(high_posterior(F, tau), low_posterior(F, tau), cfg) - c;
  };
  auto g_ll = [&, c](double tau) {
    if (tau <= lo + 0.5 * edge) return -c;
    const Posterior l = low_posterior(F, tau);
    return myerson_revenue(l, l, cfg) - c;
  };
  const std::vector<Constraint> csts = {
      {"rev_hh", g_hh, true}, {"rev_hl", g_hl, false}, {"rev_ll", g_ll, false}};
  auto member = [&](double tau) {
    for (const auto& cst : csts)
      if (!satisfied(cst, tau, tol)) return false;
    return true;
  };

  const int n = std::max(128, cfg.quad_points / 2);
  std::vector<double> xs(n + 1);
  std::vector<bool> mem(n + 1);
  for (int i = 0; i <= n; ++i) {
    xs[i] = lo + edge + (hi - 2.0 * edge - lo) * i / n;
    mem[i] = member(xs[i]);
  }
  auto runs = member_runs(mem);

  UnrestrictedRange out;
  const bool hh_at_floor = g_hh(lo + edge) >= -tol;

  if (runs.empty() && !hh_at_floor) {
    out.note = "no sustainable cutoff";
    return out;
  }

  double tau_hi;
  std::string bind_hi;
  double res_hi = 0;
  double in_point;

  if (!runs.empty()) {
    const auto [i0, i1] = runs.front();
    if (runs.size() > 1)
      out.note = "multiple sustainable intervals; reporting the lowest";
    in_point = xs[(i0 + i1) / 2];
    if (i1 == n) {
      tau_hi = xs[n];
      bind_hi = "support";
    } else {
      Boundary b = refine_boundary(csts, xs[i1], xs[i1 + 1], tol, cfg.root_tol);
      tau_hi = b.x;
      bind_hi = b.binding;
      res_hi = b.residual;
    }
    if (i0 > 0) {
      Boundary b = refine_boundary(csts, xs[i0], xs[i0 - 1], tol, cfg.root_tol);
      out.found = true;
      out.tau_lo = b.x;
      out.binding_lo = b.binding;
      out.residual_lo = b.residual;
      out.tau_hi = tau_hi;
      out.binding_hi = bind_hi;
      out.residual_hi = res_hi;
      out.on_path_reserve =
          iron(high_posterior(F, 0.5 * (out.tau_lo + out.tau_hi)), cfg).reserve();
      return out;
    }
  } else {
    // sustainable only below the support floor, where the low profiles vanish
    tau_hi = lo;
    bind_hi = "support";
    res_hi = 0;
    in_point = lo;
    out.note = "low-message profiles undercut every interior cutoff";
  }

  // the high-high constraint stays slack at the floor: extend the cutoff
  // below the support through the linear extension of the cdf
  double a = std::min(in_point, lo);
  double fa = g_hh(a);
  double tau_lo = a;
  std::string bind_lo = "support";
  double res_lo = 0;
  if (fa >= -tol) {
    bool bracketed = false;
    double b = a;
    for (int k = 0; k < 16; ++k) {
      const double next = b - 0.25 * span;
      const double fn = g_hh(next);
      if (fn < 0) {
        const auto root = num::find_root(g_hh, next, b, cfg.root_tol);
        tau_lo = root.x;
        bind_lo = "rev_hh";
        res_lo = std::abs(root.fx);
        bracketed = true;
        break;
      }
      b = next;
    }
    if (!bracketed) {
      tau_lo = b;
      out.note = "high-high revenue never falls to the outside option; "
                 "range floor is a scan limit";
    }
  }

  out.found = true;
  out.tau_lo = tau_lo;
  out.binding_lo = bind_lo;
  out.residual_lo = res_lo;
  out.tau_hi = tau_hi;
  out.binding_hi = bind_hi;
  out.residual_hi = res_hi;
  out.on_path_reserve =
      iron(high_posterior(F, 0.5 * (tau_lo + tau_hi)), cfg).reserve();
  return out;
}

namespace {

double cr_rev_hh(const Distribution& F, double tau, const num::NumericConfig& cfg) {
  const Posterior h = high_posterior(F, tau);
  return optimal_common_reserve(h, h, cfg).revenue;
}

double cr_rev_hl(const Distribution& F, double tau, const num::NumericConfig& cfg) {
  const Posterior h = high_posterior(F, tau);
  return posted_price_revenue(h, monopoly_price(h, cfg).price);
}

double cr_rev_ll(const Distribution& F, double tau, const num::NumericConfig& cfg) {
  const Posterior l = low_posterior(F, tau);
  return optimal_common_reserve(l, l, cfg).revenue;
}

IntervalSet scan_set(const std::vector<Constraint>& csts, double a, double b, int n,
                     double tol, double root_tol) {
  std::vector<double> xs(n + 1);
  std::vector<bool> mem(n + 1);
  for (int i = 0; i <= n; ++i) {
    xs[i] = a + (b - a) * i / n;
    bool ok = true;
    for (const auto& cst : csts)
      if (!satisfied(cst, xs[i], tol)) {
        ok = false;
        break;
      }
    mem[i] = ok;
  }
  IntervalSet set;
  for (const auto& [i0, i1] : member_runs(mem)) {
    double left = xs[i0];
    double right = xs[i1];
    if (i0 > 0) left = refine_boundary(csts, xs[i0], xs[i0 - 1], tol, root_tol).x;
    if (i1 < n) right = refine_boundary(csts, xs[i1], xs[i1 + 1], tol, root_tol).x;
    set.parts.push_back({left, right});
  }
  return set;
}

}  // namespace

RestrictedSets restricted_equilibrium_sets(const Distribution& F, double c,
                                           const num::NumericConfig& cfg) {
  const double lo = F.lo(), hi = F.hi();
  const double edge = span_slack(F);
  const double tol = sign_tol(c);
  auto hh = [&, c](double t) { return cr_rev_hh(F, t, cfg) - c; };
  auto hl = [&, c](double t) { return cr_rev_hl(F, t, cfg) - c; };
  auto ll = [&, c](double t) { return cr_rev_ll(F, t, cfg) - c; };

  const std::vector<Constraint> any = {
      {"rev_hl", hl, true}, {"rev_hh", hh, true}, {"rev_ll", ll, false}};
  const std::vector<Constraint> both = {
      {"rev_hh", hh, true}, {"rev_hl", hl, false}, {"rev_ll", ll, false}};

  const int n = std::max(128, cfg.quad_points / 2);
  RestrictedSets sets;
  sets.any_high = scan_set(any, lo + edge, hi - edge, n, tol, cfg.root_tol);
  sets.both_high = scan_set(both, lo + edge, hi - edge, n, tol, cfg.root_tol);
  // a run touching the scan floor/ceiling really extends to the support edge
  for (IntervalSet* s : {&sets.any_high, &sets.both_high}) {
    for (auto& [a, b] : s->parts) {
      if (a <= lo + 2 * edge) a = lo;
      if (b >= hi - 2 * edge) b = hi;
    }
  }
  return sets;
}

ThresholdEquilibrium make_equilibrium(const Distribution& F, double c, double tau,
                                      Regime regime, const num::NumericConfig& cfg) {
  const double lo = F.lo(), hi = F.hi();
  const double edge = span_slack(F);
  if (!(tau < hi - edge))
    throw std::domain_error("make_equilibrium: tau must lie below the support top");
  const bool interior = tau > lo + edge;
  if (!interior && regime != Regime::UnrestrictedBothHigh)
    throw std::domain_error("make_equilibrium: restricted cutoffs must be interior");

  ThresholdEquilibrium eq;
  eq.regime = regime;
  eq.tau = tau;
  eq.c = c;

  double rev_hh, rev_hl, rev_ll;
  if (regime == Regime::UnrestrictedBothHigh) {
    const Posterior h = high_posterior(F, tau);
    rev_hh = myerson_revenue(h, h, cfg);
    if (interior) {
      const Posterior l = low_posterior(F, tau);
      rev_hl = myerson_revenue(h, l, cfg);
      rev_ll = myerson_revenue(l, l, cfg);
    } else {
      rev_hl = 0.0;  // off-path profiles: no revenue to collect
      rev_ll = 0.0;
    }
    eq.on_path_reserve = iron(h, cfg).reserve();
  } else {
    const MechanismRegime mr = MechanismRegime::CommonReserve;
    rev_hh = rev_profile(F, tau, MessageProfile::HH, mr, cfg).revenue;
    rev_hl = rev_profile(F, tau, MessageProfile::HL, mr, cfg).revenue;
    rev_ll = rev_profile(F, tau, MessageProfile::LL, mr, cfg).revenue;
    eq.on_path_reserve = std::max(tau, monopoly_price(F, cfg).price);
  }
  eq.slack_hh = rev_hh - c;
  eq.slack_hl = rev_hl - c;
  eq.slack_ll = rev_ll - c;

  const RunPolicy pol =
      regime == Regime::RestrictedAnyHigh ? RunPolicy::AnyHigh : RunPolicy::BothHigh;
  eq.seller_payoff = seller_payoff(F, tau, c, pol, cfg);
  eq.bidder_utility = bidder_utility(F, tau, pol, cfg);

  const double tol = 1e-9 * std::max(1.0, std::abs(c));
  const bool run_hl = pol == RunPolicy::AnyHigh;
  eq.ic_ok = eq.slack_hh >= -tol && eq.slack_ll <= tol &&
             (run_hl ? eq.slack_hl >= -tol : eq.slack_hl <= tol);
  return eq;
}

namespace {

// re-solve with doubled resolution and compare; large drift marks a result
// that the grids have not actually pinned down
bool stable(const Distribution& F, double c, double tau, Regime regime,
            const num::NumericConfig& cfg, const ThresholdEquilibrium& eq) {
  num::NumericConfig fine(cfg.quad_points * 2, cfg.root_tol / 10.0, cfg.grid_points * 2);
  const ThresholdEquilibrium eq2 = make_equilibrium(F, c, tau, regime, fine);
  const double drift = std::max({std::abs(eq2.seller_payoff - eq.seller_payoff),
                                 std::abs(eq2.slack_hh - eq.slack_hh),
                                 std::abs(eq2.slack_hl - eq.slack_hl),
                                 std::abs(eq2.slack_ll - eq.slack_ll),
                                 std::abs(eq2.on_path_reserve - eq.on_path_reserve)});
  return drift <= 1e-6;
}

}  // namespace

EquilibriumResult seller_optimal_restricted(const Distribution& F, double c,
                                            const num::NumericConfig& cfg) {
  EquilibriumResult out;
  const double lo = F.lo(), hi = F.hi();
  const double edge = span_slack(F);
  const double tol = sign_tol(c);
  const double rs = r_star(F, c, cfg);
  auto g_ll = [&, c](double t) { return cr_rev_ll(F, t, cfg) - c; };

  double tau;
  if (rs < hi - edge && g_ll(std::max(rs, lo + 2 * edge)) <= tol) {
    tau = std::max(rs, lo + 2 * edge);
    out.note = "payoff peak attained; low-profile constraint slack";
  } else {
    const auto roots =
        num::scan_roots(g_ll, lo + edge, hi - edge, std::max(128, cfg.quad_points / 2),
                        cfg.root_tol);
    if (roots.empty()) {
      out.note = "low-low revenue exceeds the outside option at every cutoff; "
                 "no any-high equilibrium";
      return out;
    }
    tau = roots.back();
    out.note = roots.size() > 1
                   ? "low-low constraint binds; multiple crossings, using the largest"
                   : "low-low constraint binds";
  }

  out.eq = make_equilibrium(F, c, tau, Regime::RestrictedAnyHigh, cfg);
  if (!out.eq.ic_ok) {
    out.note += "; seller incentives fail at the candidate cutoff";
    return out;
  }
  if (!stable(F, c, tau, Regime::RestrictedAnyHigh, cfg, out.eq)) {
    out.note += "; solution drifts under refinement";
    return out;
  }
  out.found = true;
  return out;
}

EquilibriumResult bidder_optimal_restricted(const Distribution& F, double c,
                                            const num::NumericConfig& cfg) {
  EquilibriumResult out;
  const double lo = F.lo(), hi = F.hi();
  const double edge = span_slack(F);
  auto g_hl = [&, c](double t) { return cr_rev_hl(F, t, cfg) - c; };
  const auto roots = num::scan_roots(
      g_hl, lo + edge, hi - edge, std::max(128, cfg.quad_points / 2), cfg.root_tol);
  if (roots.empty()) {
    out.note = "high-low revenue never crosses the outside option; "
               "no binding bidder-preferred cutoff";
    return out;
  }
  const double tau = roots.front();
  out.eq = make_equilibrium(F, c, tau, Regime::RestrictedAnyHigh, cfg);
  if (!out.eq.ic_ok) {
    out.note = "seller incentives fail at the high-low crossing";
    return out;
  }
  if (!stable(F, c, tau, Regime::RestrictedAnyHigh, cfg, out.eq)) {
    out.note = "solution drifts under refinement";
    return out;
  }
  out.found = true;
  return out;
}

RegimeReport regime_report(const Distribution& F, double c,
                           const num::NumericConfig& cfg) {
  if (!(c > 0 && c < F.hi()))
    throw std::domain_error("regime_report: outside option must lie in (0, hi)");
  RegimeReport rep;
  rep.c = c;
  if (!is_regular(F, cfg))
    rep.notes.push_back("prior is irregular; cutoff payoffs use raw virtual values");
  rep.fc = full_commitment(F, c, cfg);
  rep.unrestricted = unrestricted_threshold_range(F, c, cfg);
  rep.restricted = restricted_equilibrium_sets(F, c, cfg);
  rep.seller_opt = seller_optimal_restricted(F, c, cfg);
  rep.bidder_opt = bidder_optimal_restricted(F, c, cfg);
  if (rep.seller_opt.found) {
    const double tau = rep.seller_opt.eq.tau;
    const double r = rep.seller_opt.eq.on_path_reserve;
    const double ft = F.cdf(tau), fr = F.cdf(r);
    rep.p_auction = 1.0 - ft * ft;
    rep.p_no_trade_given_auction =
        rep.p_auction > 0 ? std::max(0.0, (fr * fr - ft * ft) / rep.p_auction) : 0.0;
  }
  if (rep.seller_opt.found && rep.bidder_opt.found &&
      rep.bidder_opt.eq.tau > rep.seller_opt.eq.tau + 1e-9)
    rep.notes.push_back("bidder-preferred cutoff exceeds the seller-preferred one");
  if (!rep.unrestricted.note.empty()) rep.notes.push_back(rep.unrestricted.note);
  if (!rep.seller_opt.note.empty()) rep.notes.push_back("seller: " + rep.seller_opt.note);
  if (!rep.bidder_opt.note.empty()) rep.notes.push_back("bidder: " + rep.bidder_opt.note);
  return rep;
}

}  // namespace preauction

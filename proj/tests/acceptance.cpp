// Acceptance gate: one line per criterion, exit 0 only if every line passes.
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "preauction/perturbations.hpp"
#include "preauction/simulator.hpp"
#include "preauction/statics.hpp"
#include "test_support.hpp"

using namespace preauction;

namespace {

bool all_ok = true;

void report(int id, bool ok, const std::string& what) {
  std::printf("C%02d %s — %s\n", id, ok ? "PASS" : "FAIL", what.c_str());
  all_ok = all_ok && ok;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

}  // namespace

int main() {
  const Distribution F = Distribution::uniform(0.5, 2.0);
  const double c = 1.0;

  // C1: committed reserve and the full-commitment payoff
  {
    const double rs = r_star(F, c);
    const auto fc = full_commitment(F, c);
    const bool ok = std::abs(rs - 1.5) <= 1e-9 && std::abs(fc.payoff - 35.0 / 27) <= 1e-9;
    report(1, ok,
           fmt("committed reserve 1.5 and benchmark payoff 35/27 (r*=%.12g, payoff=%.12g, "
               "tol 1e-9)",
               rs, fc.payoff));
  }

  // C2: unrestricted sustainable cutoff range with named binding constraints
  UnrestrictedRange ur = unrestricted_threshold_range(F, c);
  {
    const bool ends = ur.found && std::abs(ur.tau_lo - 0.423) <= 5e-3 &&
                      std::abs(ur.tau_hi - 0.854) <= 5e-3;
    const bool binds = ur.binding_lo == "rev_hh" && ur.binding_hi == "rev_hl";
    const bool res = std::abs(ur.residual_lo) <= 1e-8 && std::abs(ur.residual_hi) <= 1e-8;
    report(2, ends && binds && res,
           fmt("unrestricted range [%.6f, %.6f] pinned by %s/%s, residuals %.1e/%.1e "
               "(ends tol 5e-3, residual tol 1e-8)",
               ur.tau_lo, ur.tau_hi, ur.binding_lo.c_str(), ur.binding_hi.c_str(),
               std::abs(ur.residual_lo), std::abs(ur.residual_hi)));
  }

  // C3: no-haggling — the on-path reserve stays at the monopoly price across
  // the sustained range
  {
    const double pf = monopoly_price(F).price;
    bool ok = ur.found;
    double worst = 0;
    for (int i = 0; i < 20 && ok; ++i) {
      const double tau = ur.tau_lo + (ur.tau_hi - ur.tau_lo) * (i + 0.5) / 20.0;
      const auto eq = make_equilibrium(F, c, tau, Regime::UnrestrictedBothHigh);
      worst = std::max(worst, std::abs(eq.on_path_reserve - 1.0));
      ok = ok && std::abs(eq.on_path_reserve - 1.0) <= 1e-6 &&
           eq.on_path_reserve >= pf - 1e-9;
    }
    report(3, ok,
           fmt("on-path reserve equals the monopoly price on 20 sustained cutoffs "
               "(max |r-1| = %.2e, tol 1e-6)",
               worst));
  }

  // C4: the low-low fallback auction optimum, cross-checked by simulation
  {
    const auto L = truncate(F, 0.5, 1.5);
    const auto best = optimal_common_reserve(L, L);
    const bool model =
        std::abs(best.reserve - 0.75) <= 1e-4 && std::abs(best.revenue - 27.0 / 32) <= 1e-6;

    sim::SimConfig sc;
    sc.seed = 20240915;
    sc.draws = 1000000;
    sc.tau = 1.5;
    sc.c = c;
    sc.policy = RunPolicy::AnyHigh;
    sc.probe_reserve = {-1.0, -1.0, 0.75};
    const auto r = sim::simulate_game(F, sc);
    const auto& probe = r.probe_revenue[2];
    const bool mc = probe.n > 0 && std::abs(probe.mean - 27.0 / 32) <= 3 * probe.se;
    report(4, model && mc,
           fmt("low-low reserve 0.75 and revenue 27/32 (r=%.6f tol 1e-4, rev=%.8f tol 1e-6, "
               "probe %.6f within 3se=%.1e)",
               best.reserve, best.revenue, probe.mean, 3 * probe.se));
  }

  // C5: seller-preferred restricted cutoff attains the commitment benchmark
  {
    const auto top = seller_optimal_restricted(F, c);
    const auto fc = full_commitment(F, c);
    const bool ok = top.found && std::abs(top.eq.tau - 1.5) <= 1e-6 &&
                    std::abs(top.eq.seller_payoff - fc.payoff) <= 1e-6;
    report(5, ok,
           fmt("seller-preferred cutoff %.8f with payoff %.10f vs benchmark %.10f "
               "(tols 1e-6)",
               top.found ? top.eq.tau : -1.0, top.found ? top.eq.seller_payoff : 0.0,
               fc.payoff));
  }

  // C6: bidder-preferred restricted cutoff sits where one-high revenue meets c
  {
    const auto bid = bidder_optimal_restricted(F, c);
    const bool ok = bid.found && std::abs(bid.eq.tau - 1.0) <= 1e-6 &&
                    std::abs(bid.eq.slack_hl) <= 1e-8;
    report(6, ok,
           fmt("bidder-preferred cutoff %.8f, one-high slack %.2e (tol 1e-6, residual 1e-8)",
               bid.found ? bid.eq.tau : -1.0, bid.found ? bid.eq.slack_hl : 0.0));
  }

  // C7: optimal mechanism equals the auction at the posted price for symmetric
  // regular posteriors
  {
    bool ok = true;
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
      const double tau = 0.55 + (1.9 - 0.55) * i / 19.0;
      const auto H = truncate(F, tau, 2.0);
      const double gap =
          std::abs(myerson_revenue(H, H) - spa_revenue(H, H, monopoly_price(H).price));
      worst = std::max(worst, gap);
      ok = ok && gap <= 1e-6;
    }
    report(7, ok,
           fmt("optimal mechanism = auction at the posted price on 20 truncations "
               "(max gap %.2e, tol 1e-6)",
               worst));
  }

  // C8: no profitable message deviation inside the sustained range; an
  // unsustainable cutoff is flagged
  {
    bool ok = true;
    double worst = 0;
    for (double tau : {0.55, 0.62, 0.69, 0.76, 0.83}) {
      const auto eq = make_equilibrium(F, c, tau, Regime::UnrestrictedBothHigh);
      const auto dr = sim::deviation_regret(F, eq, 200);
      worst = std::max(worst, dr.max_regret);
      ok = ok && dr.seller_policy_respected && dr.max_regret <= 1e-4;
    }
    const auto bad = make_equilibrium(F, c, 0.9, Regime::UnrestrictedBothHigh);
    const auto flag = sim::deviation_regret(F, bad, 200);
    const bool caught = !flag.seller_policy_respected || flag.max_regret > 1e-3;
    report(8, ok && caught,
           fmt("max regret %.2e on sustained cutoffs (tol 1e-4); cutoff 0.9 flagged "
               "(regret %.3f, seller policy %s)",
               worst, flag.max_regret, flag.seller_policy_respected ? "kept" : "overridden"));
  }

  // C9: limited commitment strictly below the benchmark on sustained cutoffs
  {
    const auto fc = full_commitment(F, c);
    bool ok = true;
    double min_gap = 1e300;
    for (int i = 0; i < 20; ++i) {
      const double tau = 0.55 + (1.0 - 0.55) * i / 19.0;
      const double gap = fc.payoff - seller_payoff(F, tau, c, RunPolicy::BothHigh);
      min_gap = std::min(min_gap, gap);
      ok = ok && gap > 0.0;
    }
    report(9, ok,
           fmt("benchmark minus two-high payoff stays positive on 20 cutoffs "
               "(min gap %.6f)",
               min_gap));
  }

  // C10: monotone statics across the outside-option sweep
  {
    const auto sweep = sweep_c(F, linspace(0.3, 1.2, 20));
    bool flags_ok = sweep.records.size() == 20;
    for (const auto& r : sweep.records)
      if (r.c < 0.5 - 1e-9)
        flags_ok = flags_ok && !r.valid;
      else if (r.c > 0.51)
        flags_ok = flags_ok && r.valid;
    const bool ok = flags_ok && sweep.violations.empty();
    report(10, ok,
           fmt("sweep over c in [0.3, 1.2]: %zu records, %zu monotonicity violations, "
               "low-c rows flagged",
               sweep.records.size(), sweep.violations.size()));
  }

  // C11: perturbation scales — entry subsidy factor, lying-cost threshold,
  // surviving cutoffs
  {
    const auto k1 = entry_subsidy_factor(F, 1.5, RunPolicy::AnyHigh);
    const auto k2 = entry_subsidy_factor(F, 1.25, RunPolicy::BothHigh);
    const double eb = lying_cost_epsilon_bar(quadratic_lying_cost(F));
    const auto sets = lying_cost_sustainable_set(F, c);
    const bool pt = !sets.restricted_any_high.empty() &&
                    std::abs(sets.restricted_any_high.parts[0].first - 1.0) <= 1e-6 &&
                    std::abs(sets.restricted_any_high.parts[0].second - 1.0) <= 1e-6 &&
                    sets.unrestricted.empty();
    const bool ok = std::abs(k1.k - 1.0) <= 1e-12 && std::abs(k2.k - 2.0) <= 1e-12 &&
                    std::abs(eb - 1.0 / 3) <= 1e-12 && pt;
    report(11, ok,
           fmt("subsidy factors 1 and 2 (tol 1e-12), cost threshold 1/3 (got %.12g), "
               "surviving cutoffs {1.0} restricted / none unrestricted",
               eb));
  }

  // C12: numerics cross-validation — derivative identity, independent hull
  // oracle, worker-count determinism
  {
    const double h = 1e-5;
    bool fd_ok = true;
    double fd_worst = 0;
    for (double tau : {0.8, 1.2, 1.7}) {
      const double fd = (seller_payoff(F, tau + h, c, RunPolicy::AnyHigh) -
                         seller_payoff(F, tau - h, c, RunPolicy::AnyHigh)) /
                        (2 * h);
      const double an =
          2.0 * F.cdf(tau) * F.pdf(tau) * (c - std::max(virtual_value(F, tau), 0.0));
      const double rel = std::abs(fd - an) / std::max(1.0, std::abs(an));
      fd_worst = std::max(fd_worst, rel);
      fd_ok = fd_ok && rel <= 1e-4;
    }

    const auto irr = Distribution::piecewise_linear_cdf(
        {{0.0, 0.0}, {0.2, 0.25}, {0.5, 0.5}, {0.6, 0.75}, {1.0, 1.0}});
    num::NumericConfig cfg512;
    cfg512.grid_points = 512;
    const auto iv = iron(irr, cfg512);
    const auto oracle = oracle::HullOracle::build(irr, 512);
    bool hull_ok = iv.ironed();
    double hull_worst = 0;
    for (auto [v, slope] : oracle.edge_probes(irr)) {
      const double gap = std::abs(iv(v) - slope);
      hull_worst = std::max(hull_worst, gap);
      hull_ok = hull_ok && gap <= 1e-8;
    }

    sim::SimConfig sc;
    sc.seed = 13;
    sc.draws = 200000;
    sc.tau = 1.5;
    sc.c = c;
    sc.policy = RunPolicy::AnyHigh;
    sc.workers = 1;
    const auto r1 = sim::simulate_game(F, sc);
    sc.workers = 2;
    const auto r2 = sim::simulate_game(F, sc);
    sc.workers = 8;
    const auto r8 = sim::simulate_game(F, sc);
    const bool det = r1.seller_payoff.mean == r2.seller_payoff.mean &&
                     r2.seller_payoff.mean == r8.seller_payoff.mean &&
                     r1.bidder_utility.mean == r2.bidder_utility.mean &&
                     r2.bidder_utility.mean == r8.bidder_utility.mean &&
                     r1.runs == r2.runs && r2.runs == r8.runs;

    report(12, fd_ok && hull_ok && det,
           fmt("derivative identity (max rel err %.2e, tol 1e-4), hull oracle "
               "(max gap %.2e, tol 1e-8), worker determinism %s",
               fd_worst, hull_worst, det ? "exact" : "BROKEN"));
  }

  return all_ok ? 0 : 1;
}

#include "preauction/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <thread>

namespace preauction::sim {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t CounterRng::next_u64() { return mix64(key + (++ctr) * 0x9E3779B97F4A7C15ULL); }

double CounterRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

CounterRng rng_stream(std::uint64_t seed, std::uint64_t stream) {
  CounterRng r;
  r.key = mix64(seed ^ mix64(stream ^ 0xA5A5A5A55A5A5A5AULL));
  r.ctr = 0;
  return r;
}

namespace {

constexpr std::uint64_t kBatch = 1ULL << 16;

struct Tally {
  std::array<std::uint64_t, 3> prof{};
  std::uint64_t runs = 0;
  double rev = 0, rev2 = 0;
  double pay = 0, pay2 = 0;
  double ut = 0, ut2 = 0;
  std::array<double, 3> pr{}, pr2{};
};

Estimate finish(double sum, double sq, std::uint64_t n) {
  Estimate e;
  e.n = n;
  if (n == 0) return e;
  e.mean = sum / static_cast<double>(n);
  if (n > 1) {
    const double var = std::max(0.0, (sq - static_cast<double>(n) * e.mean * e.mean) /
                                         static_cast<double>(n - 1));
    e.se = std::sqrt(var / static_cast<double>(n));
  }
  return e;
}

double spa_price(double vmax, double vmin, double r) {
  if (vmax < r) return 0.0;  // no sale
  return vmin >= r ? vmin : r;
}

void run_batch(const Distribution& F, const SimConfig& cfg, double reserve,
               std::uint64_t batch, std::uint64_t count, Tally& t) {
  CounterRng rng = rng_stream(cfg.seed, batch);
  for (std::uint64_t i = 0; i < count; ++i) {
    const double v1 = F.quantile(rng.next_unit());
    const double v2 = F.quantile(rng.next_unit());
    const bool m1 = v1 >= cfg.tau;
    const bool m2 = v2 >= cfg.tau;
    const int prof = (m1 && m2) ? 0 : ((m1 || m2) ? 1 : 2);
    ++t.prof[prof];
    const bool run = cfg.policy == RunPolicy::AnyHigh ? (m1 || m2) : (m1 && m2);
    const double vmax = std::max(v1, v2);
    const double vmin = std::min(v1, v2);
    double rev = 0, util = 0;
    if (run) {
      ++t.runs;
      rev = spa_price(vmax, vmin, reserve);
      if (rev > 0) util = 0.5 * (vmax - rev);
      t.rev += rev;
      t.rev2 += rev * rev;
    }
    const double pay = run ? rev : cfg.c;
    t.pay += pay;
    t.pay2 += pay * pay;
    t.ut += util;
    t.ut2 += util * util;
    if (cfg.probe_reserve[prof] >= 0) {
      const double p = spa_price(vmax, vmin, cfg.probe_reserve[prof]);
      t.pr[prof] += p;
      t.pr2[prof] += p * p;
    }
  }
}

int resolve_workers(int requested) {
  if (requested > 0) return std::min(requested, 64);
  if (const char* env = std::getenv("PREAUCTION_THREADS")) {
    const int w = std::atoi(env);
    if (w > 0) return std::min(w, 64);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

}  // namespace

SimResult simulate_game(const Distribution& F, const SimConfig& cfg) {
  if (cfg.draws == 0) throw std::invalid_argument("simulate_game: draws must be positive");
  const double p_f = monopoly_price(F).price;
  const double reserve = std::max(cfg.tau, p_f);
  const std::uint64_t nb = (cfg.draws + kBatch - 1) / kBatch;
  const int workers =
      static_cast<int>(std::min<std::uint64_t>(resolve_workers(cfg.workers), nb));

  std::vector<Tally> tallies(nb);
  auto work = [&](int w) {
    for (std::uint64_t b = w; b < nb; b += workers) {
      const std::uint64_t count =
          (b + 1 == nb) ? cfg.draws - b * kBatch : kBatch;
      run_batch(F, cfg, reserve, b, count, tallies[b]);
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }

  // fold in batch order so the result is independent of the worker count
  Tally t;
  for (const Tally& b : tallies) {
    for (int i = 0; i < 3; ++i) {
      t.prof[i] += b.prof[i];
      t.pr[i] += b.pr[i];
      t.pr2[i] += b.pr2[i];
    }
    t.runs += b.runs;
    t.rev += b.rev;
    t.rev2 += b.rev2;
    t.pay += b.pay;
    t.pay2 += b.pay2;
    t.ut += b.ut;
    t.ut2 += b.ut2;
  }

  SimResult out;
  out.draws = cfg.draws;
  out.runs = t.runs;
  out.profile_counts = t.prof;
  out.p_auction = static_cast<double>(t.runs) / static_cast<double>(cfg.draws);
  out.revenue_given_run = finish(t.rev, t.rev2, t.runs);
  out.seller_payoff = finish(t.pay, t.pay2, cfg.draws);
  out.bidder_utility = finish(t.ut, t.ut2, cfg.draws);
  for (int i = 0; i < 3; ++i)
    if (cfg.probe_reserve[i] >= 0) out.probe_revenue[i] = finish(t.pr[i], t.pr2[i], t.prof[i]);
  out.workers_used = workers;
  return out;
}

namespace {

struct ProfileMech {
  bool run = false;
  double rho = 0;  // spa reserve (restricted regimes)
  std::optional<IronedVirtual> iron_a, iron_b;  // high-side, low-side
  const ValueDist* side_a = nullptr;
  const ValueDist* side_b = nullptr;
};

// second-price interim utility against one opponent; the bid is the type
// clamped to the claimed support and abstention floors the payoff at zero
double u_spa(double v, double s0, double s1, const ValueDist& opp, double rho) {
  const double b = std::clamp(v, s0, s1);
  if (b < rho - 1e-12) return 0.0;
  double u = (v - rho) * opp.cdf(rho);
  if (b > rho) {
    auto f = [&](double t) { return (v - t) * opp.pdf(t); };
    u += num::integrate_pieces(f, rho, b, opp.breakpoints());
  }
  return std::max(0.0, u);
}

// interim utility in the optimal mechanism for the profile: win probability is
// the chance the opponent's ironed virtual value falls below the own one
double u_myerson(double v, const ValueDist& own, const IronedVirtual& iv_own,
                 const ValueDist& opp, const IronedVirtual& iv_opp) {
  const double lo = own.lo(), hi = own.hi();
  if (v <= lo) return 0.0;
  auto x_own = [&](double s) {
    const double t = iv_own(s);
    if (t < 0) return 0.0;
    return opp.cdf(iv_opp.sup_value_leq(t));
  };
  std::vector<double> br{iv_own.reserve()};
  for (const auto& seg : iv_own.segments()) {
    br.push_back(seg.v0);
    br.push_back(seg.v1);
  }
  for (const auto& seg : iv_opp.segments()) {
    br.push_back(iv_own.sup_value_leq(seg.phi0));
    br.push_back(iv_own.sup_value_leq(seg.phi1));
  }
  const double top = std::min(v, hi);
  double u = num::integrate_pieces(x_own, lo, top, std::move(br));
  if (v > hi) u += (v - hi) * x_own(hi);
  return std::max(0.0, u);
}

}  // namespace

SlackReport seller_ic_slack(const Distribution& F, const ThresholdEquilibrium& eq,
                            const num::NumericConfig& cfg) {
  const double edge = 1e-6 * (F.hi() - F.lo());
  const bool interior = eq.tau > F.lo() + edge;
  const bool unres = eq.regime == Regime::UnrestrictedBothHigh;

  SlackReport rep;
  double rev[3];
  if (unres) {
    const Posterior h = high_posterior(F, eq.tau);
    rev[0] = myerson_revenue(h, h, cfg);
    if (interior) {
      const Posterior l = low_posterior(F, eq.tau);
      rev[1] = myerson_revenue(h, l, cfg);
      rev[2] = myerson_revenue(l, l, cfg);
    } else {
      rev[1] = rev[2] = 0.0;
    }
  } else {
    const MechanismRegime mr = MechanismRegime::CommonReserve;
    rev[0] = rev_profile(F, eq.tau, MessageProfile::HH, mr, cfg).revenue;
    rev[1] = rev_profile(F, eq.tau, MessageProfile::HL, mr, cfg).revenue;
    rev[2] = rev_profile(F, eq.tau, MessageProfile::LL, mr, cfg).revenue;
  }
  const bool runs[3] = {true, eq.regime == Regime::RestrictedAnyHigh, false};
  const double tol = 1e-9 * std::max(1.0, std::abs(eq.c));
  rep.all_consistent = true;
  for (int i = 0; i < 3; ++i) {
    ProfileSlack& p = rep.profile[i];
    p.revenue = rev[i];
    p.slack = rev[i] - eq.c;
    p.runs = runs[i];
    p.consistent = runs[i] ? p.slack >= -tol : p.slack <= tol;
    rep.all_consistent = rep.all_consistent && p.consistent;
  }
  return rep;
}

DeviationReport deviation_regret(const Distribution& F, const ThresholdEquilibrium& eq,
                                 int grid_n, const num::NumericConfig& cfg) {
  if (grid_n < 2) throw std::invalid_argument("deviation_regret: grid_n must be >= 2");
  const double lo = F.lo(), hi = F.hi(), tau = eq.tau;
  const double edge = 1e-6 * (hi - lo);
  const bool interior = tau > lo + edge;
  const bool unres = eq.regime == Regime::UnrestrictedBothHigh;
  if (!unres && !interior)
    throw std::invalid_argument("deviation_regret: restricted cutoffs must be interior");
  const double p_high = 1.0 - F.cdf(tau);
  const double p_low = 1.0 - p_high;

  const SlackReport sl = seller_ic_slack(F, eq, cfg);
  DeviationReport rep;
  rep.seller_policy_respected = sl.all_consistent;

  const std::optional<Posterior> hp =
      tau < hi - edge ? std::optional<Posterior>(high_posterior(F, tau)) : std::nullopt;
  const std::optional<Posterior> lp =
      interior ? std::optional<Posterior>(low_posterior(F, tau)) : std::nullopt;

  // seller reaction per profile: prescribed if consistent, best response if not
  bool run[3];
  for (int i = 0; i < 3; ++i) {
    const ProfileSlack& p = sl.profile[i];
    run[i] = p.consistent ? p.runs : p.slack > 0;
  }

  std::optional<IronedVirtual> iron_h, iron_l;
  double rho[3] = {0, 0, 0};
  if (unres) {
    if (hp) iron_h = iron(*hp, cfg);
    if (lp) iron_l = iron(*lp, cfg);
  } else {
    if (hp) {
      const MechanismRegime mr = MechanismRegime::CommonReserve;
      rho[0] = rev_profile(F, tau, MessageProfile::HH, mr, cfg).reserve;
      rho[1] = rev_profile(F, tau, MessageProfile::HL, mr, cfg).reserve;
      rho[2] = rev_profile(F, tau, MessageProfile::LL, mr, cfg).reserve;
    }
  }

  // interim utility of claiming the high (low) posterior with true value v,
  // against an opponent drawn from op
  auto side = [&](bool high) -> const ValueDist* {
    if (high) return hp ? static_cast<const ValueDist*>(&*hp) : nullptr;
    return lp ? static_cast<const ValueDist*>(&*lp) : nullptr;
  };
  auto u_as = [&](double v, bool claim_high, bool opp_high) {
    const int prof = claim_high && opp_high ? 0 : ((claim_high || opp_high) ? 1 : 2);
    if (!run[prof]) return 0.0;
    const ValueDist* own = side(claim_high);
    const ValueDist* opp = side(opp_high);
    if (!own || !opp) return 0.0;
    if (unres) {
      const IronedVirtual& io = claim_high ? *iron_h : *iron_l;
      const IronedVirtual& ip = opp_high ? *iron_h : *iron_l;
      return u_myerson(v, *own, io, *opp, ip);
    }
    return u_spa(v, own->lo(), own->hi(), *opp, rho[prof]);
  };

  std::vector<double> vs;
  vs.reserve(grid_n + 1);
  for (int i = 0; i < grid_n; ++i) vs.push_back(lo + (hi - lo) * i / (grid_n - 1));
  if (tau > lo && tau < hi) {
    vs.push_back(tau);  // the cutoff type itself is the interesting probe
    std::sort(vs.begin(), vs.end());
  }
  rep.grid.reserve(vs.size());
  for (double v : vs) {
    const bool truthful_high = v >= tau;
    double u_h = 0, u_l = 0;
    if (hp) u_h = p_high * u_as(v, true, true) + p_low * u_as(v, true, false);
    if (lp) u_l = p_high * u_as(v, false, true) + p_low * u_as(v, false, false);
    RegretPoint pt;
    pt.v = v;
    pt.u_keep = truthful_high ? u_h : u_l;
    pt.u_switch = truthful_high ? u_l : u_h;
    pt.regret = pt.u_switch - pt.u_keep;
    if (rep.grid.empty() || pt.regret > rep.worst.regret) rep.worst = pt;
    rep.grid.push_back(pt);
  }
  rep.max_regret = rep.worst.regret;
  return rep;
}

Estimate interim_utility_mc(const Distribution& F, const ThresholdEquilibrium& eq,
                            double v, bool send_high, std::uint64_t n,
                            std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("interim_utility_mc: need n >= 2");
  const double tau = eq.tau;
  const double r = eq.on_path_reserve;
  const RunPolicy pol = eq.regime == Regime::RestrictedAnyHigh ? RunPolicy::AnyHigh
                                                               : RunPolicy::BothHigh;
  const double s0 = send_high ? std::max(tau, F.lo()) : F.lo();
  const double s1 = send_high ? F.hi() : tau;
  const double bid = std::clamp(v, s0, s1);
  CounterRng rng = rng_stream(seed, 0);
  double sum = 0, sq = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double v2 = F.quantile(rng.next_unit());
    const bool m2 = v2 >= tau;
    const bool run = pol == RunPolicy::AnyHigh ? (send_high || m2) : (send_high && m2);
    double u = 0;
    if (run && bid >= r && v2 < bid) {
      const double price = v2 >= r ? v2 : r;
      u = std::max(0.0, v - price);
    }
    sum += u;
    sq += u * u;
  }
  return finish(sum, sq, n);
}

Estimate entry_gap_mc(const Distribution& F, double tau, RunPolicy pol, double k,
                      double eps, std::uint64_t n, std::uint64_t seed,
                      const num::NumericConfig& cfg) {
  if (n < 2) throw std::invalid_argument("entry_gap_mc: need n >= 2");
  const double r = std::max(tau, monopoly_price(F, cfg).price);
  CounterRng rng = rng_stream(seed, 1);
  double sum = 0, sq = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double v2 = F.quantile(rng.next_unit());
    const bool m2 = v2 >= tau;
    const bool run = pol == RunPolicy::AnyHigh ? true : m2;
    double u = 0;
    if (run && tau >= r && v2 < tau) {
      const double price = v2 >= r ? v2 : r;
      u = tau - price;
    }
    const double net = u - eps + (run ? k * eps : 0.0);
    sum += net;
    sq += net * net;
  }
  return finish(sum, sq, n);
}

}  // namespace preauction::sim

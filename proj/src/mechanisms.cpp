#include "preauction/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace preauction {

double posted_price_revenue(const ValueDist& d, double p) {
  if (p > d.hi()) return 0.0;
  return p * (1.0 - d.cdf(p));
}

double spa_revenue(const ValueDist& b1, const ValueDist& b2, double r,
                   const num::NumericConfig& cfg) {
  (void)cfg;
  const double top = std::max(b1.hi(), b2.hi());
  if (r >= top) return 0.0;
  // reserve sale plus the tail of the second-order statistic:
  // r * P(max >= r) + integral of P(b1 > t) P(b2 > t) above r
  auto tail = [&](double t) { return (1.0 - b1.cdf(t)) * (1.0 - b2.cdf(t)); };
  std::vector<double> br = b1.breakpoints();
  for (double x : b2.breakpoints()) br.push_back(x);
  const double head = r * (1.0 - b1.cdf(r) * b2.cdf(r));
  return head + num::integrate_pieces(tail, r, top, std::move(br));
}

ReserveChoice optimal_common_reserve(const ValueDist& b1, const ValueDist& b2,
                                     const num::NumericConfig& cfg) {
  const double lo = std::min(b1.lo(), b2.lo());
  const double hi = std::max(b1.hi(), b2.hi());
  auto rev = [&](double r) { return spa_revenue(b1, b2, r, cfg); };

  // dRev/dr, kept in product form so it stays finite across the whole range
  auto deriv = [&](double r) {
    const double G1 = b1.cdf(r), G2 = b2.cdf(r);
    const double g1 = b1.pdf(r), g2 = b2.pdf(r);
    return G1 + G2 - 2.0 * G1 * G2 - r * (g1 * G2 + G1 * g2);
  };

  std::vector<double> cands{lo, hi};
  std::vector<double> br = b1.breakpoints();
  for (double x : b2.breakpoints()) br.push_back(x);
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  for (size_t i = 0; i + 1 < br.size(); ++i) {
    const double eps = 1e-12 * std::max(1.0, hi - lo);
    const double a = br[i] + eps, b = br[i + 1] - eps;
    if (a >= b) continue;
    for (double x : num::scan_roots(deriv, a, b, 64, cfg.root_tol)) cands.push_back(x);
  }
  const auto g = num::grid_argmax(rev, lo, hi, cfg.quad_points);
  cands.push_back(g.x);

  ReserveChoice best{hi, 0.0};
  bool first = true;
  for (double r : cands) {
    const double val = rev(r);
    const double tie = 1e-11 * std::max(1.0, std::abs(val));
    if (first || val > best.revenue + tie ||
        (val >= best.revenue - tie && r < best.reserve)) {
      best = {r, val};
      first = false;
    }
  }
  return best;
}

double myerson_revenue(const ValueDist& b1, const ValueDist& b2,
                       const num::NumericConfig& cfg) {
  const IronedVirtual p1 = iron(b1, cfg);
  const IronedVirtual p2 = iron(b2, cfg);
  const double t1 = p1.segments().back().phi1;
  const double t2 = p2.segments().back().phi1;
  const double top = std::max(t1, t2);
  if (!(top > 0)) return 0.0;
  // E max(phi1+, phi2+) through the joint survival function; the inner cdfs
  // are exact, so only the outer integral is numeric
  auto surv = [&](double t) {
    const double q1 = b1.cdf(p1.sup_value_leq(t));
    const double q2 = b2.cdf(p2.sup_value_leq(t));
    return 1.0 - q1 * q2;
  };
  std::vector<double> br{0.0};
  for (const auto& s : p1.segments()) {
    br.push_back(s.phi0);
    br.push_back(s.phi1);
  }
  for (const auto& s : p2.segments()) {
    br.push_back(s.phi0);
    br.push_back(s.phi1);
  }
  br.erase(std::remove_if(br.begin(), br.end(),
                          [&](double t) { return t < 0.0 || t > top; }),
           br.end());
  return num::integrate_pieces(surv, 0.0, top, std::move(br));
}

MechanismSummary rev_profile(const Distribution& F, double tau, MessageProfile prof,
                             MechanismRegime regime, const num::NumericConfig& cfg) {
  const double slack = 1e-12 * std::max(1.0, F.hi() - F.lo());
  if (!(tau > F.lo() + slack && tau < F.hi() - slack))
    throw std::domain_error("rev_profile: tau must lie inside the support");

  const Posterior H = high_posterior(F, tau);
  const Posterior L = low_posterior(F, tau);
  MechanismSummary out;

  if (regime == MechanismRegime::Unrestricted) {
    out.kind = "myerson";
    switch (prof) {
      case MessageProfile::HH: {
        out.revenue = myerson_revenue(H, H, cfg);
        const double r = iron(H, cfg).reserve();
        out.reserve = r;
        out.reserve_low = r;
        break;
      }
      case MessageProfile::HL: {
        out.revenue = myerson_revenue(H, L, cfg);
        out.reserve = iron(H, cfg).reserve();
        out.reserve_low = iron(L, cfg).reserve();
        out.low_bidder_excluded = out.reserve_low >= L.hi() - slack;
        break;
      }
      case MessageProfile::LL: {
        out.revenue = myerson_revenue(L, L, cfg);
        const double r = iron(L, cfg).reserve();
        out.reserve = r;
        out.reserve_low = r;
        break;
      }
    }
    return out;
  }

  out.kind = "spa_common_reserve";
  switch (prof) {
    case MessageProfile::HH: {
      const ReserveChoice rc = optimal_common_reserve(H, H, cfg);
      out.revenue = rc.revenue;
      out.reserve = rc.reserve;
      out.reserve_low = rc.reserve;
      break;
    }
    case MessageProfile::HL: {
      // the optimal common reserve is never below tau here, so the auction
      // degenerates into a posted price for the high bidder
      const double p = monopoly_price(H, cfg).price;
      out.kind = "posted_price";
      out.revenue = posted_price_revenue(H, p);
      out.reserve = p;
      out.reserve_low = p;
      out.low_bidder_excluded = true;
      break;
    }
    case MessageProfile::LL: {
      const ReserveChoice rc = optimal_common_reserve(L, L, cfg);
      out.revenue = rc.revenue;
      out.reserve = rc.reserve;
      out.reserve_low = rc.reserve;
      break;
    }
  }
  return out;
}

}  // namespace preauction

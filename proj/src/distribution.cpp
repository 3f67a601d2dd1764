#include "preauction/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace preauction {

namespace {
constexpr double kEdgeTol = 1e-12;

double support_slack(double lo, double hi) { return kEdgeTol * std::max(1.0, hi - lo); }
}  // namespace

Distribution::Distribution(Family f, std::vector<std::pair<double, double>> knots)
    : family_(f), knots_(std::move(knots)) {}

Distribution Distribution::uniform(double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("uniform: requires lo < hi");
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("uniform: bounds must be finite");
  return Distribution(Family::Uniform, {{lo, 0.0}, {hi, 1.0}});
}

Distribution Distribution::piecewise_linear_cdf(
    std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2)
    throw std::invalid_argument("piecewise_linear_cdf: need at least two knots");
  for (const auto& [v, c] : knots)
    if (!std::isfinite(v) || !std::isfinite(c))
      throw std::invalid_argument("piecewise_linear_cdf: knots must be finite");
  if (std::abs(knots.front().second) > 1e-12 || std::abs(knots.back().second - 1.0) > 1e-12)
    throw std::invalid_argument("piecewise_linear_cdf: cdf must run from 0 to 1");
  knots.front().second = 0.0;
  knots.back().second = 1.0;
  for (size_t i = 0; i + 1 < knots.size(); ++i) {
    if (!(knots[i].first < knots[i + 1].first))
      throw std::invalid_argument("piecewise_linear_cdf: values must strictly increase");
    if (!(knots[i].second < knots[i + 1].second))
      throw std::invalid_argument(
          "piecewise_linear_cdf: cdf must strictly increase (full support)");
  }
  return Distribution(Family::PiecewiseLinearCdf, std::move(knots));
}

double Distribution::cdf(double v) const {
  if (v <= knots_.front().first) return 0.0;
  if (v >= knots_.back().first) return 1.0;
  auto it = std::upper_bound(knots_.begin(), knots_.end(), v,
                             [](double x, const auto& k) { return x < k.first; });
  const auto& [v1, c1] = *it;
  const auto& [v0, c0] = *(it - 1);
  return c0 + (c1 - c0) * (v - v0) / (v1 - v0);
}

double Distribution::pdf(double v) const {
  const double slack = support_slack(lo(), hi());
  if (v < lo() - slack || v > hi() + slack) return 0.0;
  v = std::clamp(v, lo(), hi());
  // right-continuous convention; at hi the last segment applies
  auto it = std::upper_bound(knots_.begin(), knots_.end(), v,
                             [](double x, const auto& k) { return x < k.first; });
  if (it == knots_.end()) --it;
  const auto& [v1, c1] = *it;
  const auto& [v0, c0] = *(it - 1);
  return (c1 - c0) / (v1 - v0);
}

double Distribution::quantile(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("quantile: q outside [0,1]");
  if (q <= 0.0) return lo();
  if (q >= 1.0) return hi();
  auto it = std::upper_bound(knots_.begin(), knots_.end(), q,
                             [](double x, const auto& k) { return x < k.second; });
  if (it == knots_.end()) --it;
  const auto& [v1, c1] = *it;
  const auto& [v0, c0] = *(it - 1);
  return v0 + (v1 - v0) * (q - c0) / (c1 - c0);
}

std::vector<double> Distribution::breakpoints() const {
  std::vector<double> b;
  b.reserve(knots_.size());
  for (const auto& [v, c] : knots_) b.push_back(v);
  return b;
}

Posterior::Posterior(Distribution base, double a, double b)
    : base_(std::move(base)), a_(a), b_(b) {
  const double slack = support_slack(base_.lo(), base_.hi());
  if (!(a < b)) throw std::invalid_argument("posterior: requires a < b");
  if (a < base_.lo() - slack || b > base_.hi() + slack)
    throw std::invalid_argument("posterior: window outside the support");
  a_ = std::clamp(a, base_.lo(), base_.hi());
  b_ = std::clamp(b, base_.lo(), base_.hi());
  ca_ = base_.cdf(a_);
  mass_ = base_.cdf(b_) - ca_;
  if (!(mass_ > 0)) throw std::invalid_argument("posterior: window has zero mass");
}

double Posterior::cdf(double v) const {
  if (v <= a_) return 0.0;
  if (v >= b_) return 1.0;
  return (base_.cdf(v) - ca_) / mass_;
}

double Posterior::pdf(double v) const {
  const double slack = support_slack(a_, b_);
  if (v < a_ - slack || v > b_ + slack) return 0.0;
  return base_.pdf(std::clamp(v, a_, b_)) / mass_;
}

double Posterior::quantile(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("quantile: q outside [0,1]");
  return std::clamp(base_.quantile(ca_ + q * mass_), a_, b_);
}

std::vector<double> Posterior::breakpoints() const {
  std::vector<double> b{a_};
  for (double x : base_.breakpoints())
    if (x > a_ && x < b_) b.push_back(x);
  b.push_back(b_);
  return b;
}

Posterior truncate(const Distribution& F, double a, double b) {
  return Posterior(F, a, b);
}

Posterior high_posterior(const Distribution& F, double tau) {
  const double slack = support_slack(F.lo(), F.hi());
  if (!(tau < F.hi() - slack))
    throw std::domain_error("high_posterior: tau must lie below the support top");
  if (tau > F.lo() + slack) return Posterior(F, tau, F.hi());
  if (F.family() == Family::Uniform)
    return Posterior(Distribution::uniform(tau, F.hi()), tau, F.hi());
  // extend the lowest segment down to tau and renormalize
  const auto& k = F.knots();
  const double s0 = (k[1].second - k[0].second) / (k[1].first - k[0].first);
  const double c_ext = -s0 * (k[0].first - tau);
  std::vector<std::pair<double, double>> nk;
  nk.reserve(k.size() + 1);
  nk.push_back({tau, 0.0});
  for (size_t i = (tau == k[0].first ? 1 : 0); i < k.size(); ++i)
    nk.push_back({k[i].first, (k[i].second - c_ext) / (1.0 - c_ext)});
  nk.back().second = 1.0;
  Distribution ext = Distribution::piecewise_linear_cdf(std::move(nk));
  return Posterior(std::move(ext), tau, F.hi());
}

Posterior low_posterior(const Distribution& F, double tau) {
  const double slack = support_slack(F.lo(), F.hi());
  if (!(tau > F.lo() + slack && tau < F.hi() - slack))
    throw std::domain_error("low_posterior: tau must lie inside the support");
  return Posterior(F, F.lo(), tau);
}

double virtual_value(const ValueDist& d, double v) {
  const double slack = support_slack(d.lo(), d.hi());
  if (v < d.lo() - slack || v > d.hi() + slack)
    throw std::domain_error("virtual_value: v outside the support");
  v = std::clamp(v, d.lo(), d.hi());
  const double f = d.pdf(v);
  if (!(f > 0)) throw std::domain_error("virtual_value: zero density");
  return v - (1.0 - d.cdf(v)) / f;
}

bool is_regular(const ValueDist& d, const num::NumericConfig& cfg) {
  const int n = cfg.grid_points;
  const double a = d.lo(), b = d.hi();
  double prev = virtual_value(d, a);
  for (int i = 1; i <= n; ++i) {
    const double x = a + (b - a) * i / n;
    const double cur = virtual_value(d, x);
    if (cur < prev - 1e-8) return false;
    prev = cur;
  }
  return true;
}

PricePoint monopoly_price(const ValueDist& d, const num::NumericConfig& cfg) {
  const double a = d.lo(), b = d.hi();
  auto rev = [&](double p) { return p * (1.0 - d.cdf(p)); };
  auto phi = [&](double v) { return virtual_value(d, v); };

  std::vector<double> cands{a, b};
  std::vector<double> br = d.breakpoints();
  for (size_t i = 0; i + 1 < br.size(); ++i) {
    const double eps = 1e-12 * std::max(1.0, b - a);
    const double lo = br[i] + eps, hi = br[i + 1] - eps;
    if (lo >= hi) continue;
    for (double r : num::scan_roots(phi, lo, hi, 32, cfg.root_tol)) cands.push_back(r);
  }
  PricePoint best{a, rev(a)};
  for (double p : cands) {
    const double r = rev(p);
    const double tie = 1e-12 * std::max(1.0, std::abs(best.revenue));
    if (r > best.revenue + tie || (r >= best.revenue - tie && p < best.price))
      best = {p, r};
  }
  const auto g = num::grid_argmax(rev, a, b, std::max(cfg.grid_points, 4096));
  if (g.fx > best.revenue + cfg.root_tol) best = {g.x, g.fx};
  return best;
}

double r_star(const Distribution& F, double c, const num::NumericConfig& cfg) {
  if (!(c > 0 && c < F.hi()))
    throw std::domain_error("r_star: outside option must lie in (0, hi)");
  auto g = [&](double v) { return virtual_value(F, v) - c; };
  if (g(F.hi()) < 0) return F.hi();
  if (g(F.lo()) > 0) return F.lo();
  const auto roots = num::scan_roots(g, F.lo(), F.hi(), cfg.quad_points, cfg.root_tol);
  if (roots.empty()) throw std::runtime_error("r_star: no crossing found");
  return roots.front();
}

}  // namespace preauction

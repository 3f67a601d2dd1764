#include "preauction/ironing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace preauction {

IronedVirtual::IronedVirtual(std::vector<VirtualSegment> segs, bool ironed)
    : segs_(std::move(segs)), ironed_(ironed) {
  if (segs_.empty()) throw std::invalid_argument("IronedVirtual: no segments");
}

double IronedVirtual::operator()(double v) const {
  v = std::clamp(v, lo(), hi());
  auto it = std::upper_bound(segs_.begin(), segs_.end(), v,
                             [](double x, const VirtualSegment& s) { return x < s.v0; });
  if (it != segs_.begin()) --it;
  const VirtualSegment& s = *it;
  if (s.v1 <= s.v0) return s.phi1;
  const double t = std::clamp((v - s.v0) / (s.v1 - s.v0), 0.0, 1.0);
  return s.phi0 + t * (s.phi1 - s.phi0);
}

double IronedVirtual::reserve() const {
  for (const VirtualSegment& s : segs_) {
    if (s.phi0 >= 0.0) return s.v0;
    if (s.phi1 >= 0.0)
      return s.v0 + (s.v1 - s.v0) * (0.0 - s.phi0) / (s.phi1 - s.phi0);
  }
  return hi();
}

double IronedVirtual::sup_value_leq(double t) const {
  if (t < segs_.front().phi0) return lo();
  for (auto it = segs_.rbegin(); it != segs_.rend(); ++it) {
    const VirtualSegment& s = *it;
    if (t >= s.phi1) return s.v1;
    if (t >= s.phi0) {
      if (s.phi1 <= s.phi0) return s.v1;
      return s.v0 + (s.v1 - s.v0) * (t - s.phi0) / (s.phi1 - s.phi0);
    }
  }
  return lo();
}

namespace {

// raw virtual value, affine per density piece (both prior families and their
// posteriors have piecewise-linear cdfs, so this is exact)
std::vector<VirtualSegment> raw_segments(const ValueDist& d) {
  std::vector<double> br = d.breakpoints();
  std::vector<VirtualSegment> segs;
  for (size_t i = 0; i + 1 < br.size(); ++i) {
    const double v0 = br[i], v1 = br[i + 1];
    if (!(v1 > v0)) continue;
    const double m1 = v0 + (v1 - v0) / 3.0;
    const double m2 = v0 + 2.0 * (v1 - v0) / 3.0;
    const double p1 = virtual_value(d, m1);
    const double p2 = virtual_value(d, m2);
    const double slope = (p2 - p1) / (m2 - m1);
    segs.push_back({v0, v1, p1 - slope * (m1 - v0), p1 + slope * (v1 - m1)});
  }
  if (segs.empty()) throw std::invalid_argument("iron: degenerate support");
  return segs;
}

bool segments_monotone(const std::vector<VirtualSegment>& segs) {
  const double slack = 1e-8;
  for (size_t i = 0; i < segs.size(); ++i) {
    if (segs[i].phi1 < segs[i].phi0 - slack) return false;
    if (i > 0 && segs[i].phi0 < segs[i - 1].phi1 - slack) return false;
  }
  return true;
}

struct HullPoint {
  double q, r, v;
};

double cross(const HullPoint& o, const HullPoint& a, const HullPoint& b) {
  return (a.q - o.q) * (b.r - o.r) - (a.r - o.r) * (b.q - o.q);
}

// clip the raw segments to [a, b] and append to out
void append_clipped(const std::vector<VirtualSegment>& raw, double a, double b,
                    std::vector<VirtualSegment>& out) {
  if (!(b > a)) return;
  for (const VirtualSegment& s : raw) {
    const double v0 = std::max(s.v0, a), v1 = std::min(s.v1, b);
    if (!(v1 > v0)) continue;
    const double den = s.v1 - s.v0;
    const double p0 = s.phi0 + (s.phi1 - s.phi0) * (v0 - s.v0) / den;
    const double p1 = s.phi0 + (s.phi1 - s.phi0) * (v1 - s.v0) / den;
    out.push_back({v0, v1, p0, p1});
  }
}

}  // namespace

IronedVirtual iron(const ValueDist& d, const num::NumericConfig& cfg) {
  std::vector<VirtualSegment> raw = raw_segments(d);
  if (segments_monotone(raw)) return IronedVirtual(std::move(raw), false);

  // revenue curve in quantile space: q = upper-tail probability,
  // R(q) = q * v(q); the ironed virtual value is the hull's slope
  const int n = cfg.grid_points;
  std::vector<double> qs;
  qs.reserve(n + 8);
  for (int i = 0; i <= n; ++i) qs.push_back(static_cast<double>(i) / n);
  for (double b : d.breakpoints()) qs.push_back(1.0 - d.cdf(b));
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end(),
                       [](double x, double y) { return std::abs(x - y) < 1e-15; }),
           qs.end());

  std::vector<HullPoint> pts;
  pts.reserve(qs.size());
  for (double q : qs) {
    const double v = d.quantile(1.0 - q);
    pts.push_back({q, q * v, v});
  }

  // upper concave hull, left to right in q (monotone chain)
  std::vector<size_t> hull;
  for (size_t i = 0; i < pts.size(); ++i) {
    while (hull.size() >= 2 &&
           cross(pts[hull[hull.size() - 2]], pts[hull.back()], pts[i]) >= -1e-15)
      hull.pop_back();
    hull.push_back(i);
  }

  // hull edges with grid points strictly below them are the ironed stretches
  struct Flat {
    double va, vb, m;
  };
  std::vector<Flat> flats;
  const double scale = std::max(1.0, std::abs(pts.back().r) + std::abs(pts.front().v));
  for (size_t e = 0; e + 1 < hull.size(); ++e) {
    const size_t i0 = hull[e], i1 = hull[e + 1];
    if (i1 <= i0 + 1) continue;
    const HullPoint& a = pts[i0];
    const HullPoint& b = pts[i1];
    bool below = false;
    for (size_t j = i0 + 1; j < i1 && !below; ++j) {
      const double chord = a.r + (b.r - a.r) * (pts[j].q - a.q) / (b.q - a.q);
      if (pts[j].r < chord - 1e-12 * scale) below = true;
    }
    if (!below) continue;
    const double m = (b.r - a.r) / (b.q - a.q);
    flats.push_back({b.v, a.v, m});  // larger q maps to the smaller value
  }
  if (flats.empty()) return IronedVirtual(std::move(raw), false);
  std::sort(flats.begin(), flats.end(),
            [](const Flat& x, const Flat& y) { return x.va < y.va; });

  std::vector<VirtualSegment> out;
  double cursor = d.lo();
  for (const Flat& f : flats) {
    append_clipped(raw, cursor, f.va, out);
    out.push_back({f.va, f.vb, f.m, f.m});
    cursor = f.vb;
  }
  append_clipped(raw, cursor, d.hi(), out);
  return IronedVirtual(std::move(out), true);
}

}  // namespace preauction

#include "preauction/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace preauction::num {

NumericConfig::NumericConfig(int qp, double rt, int gp)
    : quad_points(qp), root_tol(rt), grid_points(gp) {
  validate();
}

void NumericConfig::validate() const {
  if (quad_points < 16) throw std::invalid_argument("quad_points must be >= 16");
  if (!(root_tol > 0) || root_tol > 1e-3)
    throw std::invalid_argument("root_tol must be in (0, 1e-3]");
  if (grid_points < 64) throw std::invalid_argument("grid_points must be >= 64");
}

namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1,1], positive half.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a, b, val, err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

Panel eval_gk(const Fn& f, double a, double b) {
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  double fc = f(c);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    resk += kWgk[i] * (f1 + f2);
    if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.val = resk * h;
  p.err = std::abs((resk - resg) * h);
  return p;
}

}  // namespace

double integrate(const Fn& f, double a, double b, double rel_tol, double abs_tol) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  std::priority_queue<Panel> heap;
  Panel p0 = eval_gk(f, a, b);
  double total = p0.val;
  double toterr = p0.err;
  heap.push(p0);
  const int max_panels = 4096;
  int n = 1;
  while (toterr > std::max(abs_tol, rel_tol * std::abs(total)) && n < max_panels) {
    Panel worst = heap.top();
    heap.pop();
    const double m = 0.5 * (worst.a + worst.b);
    if (m <= worst.a || m >= worst.b) break;  // cannot split further
    Panel l = eval_gk(f, worst.a, m);
    Panel r = eval_gk(f, m, worst.b);
    total += l.val + r.val - worst.val;
    toterr += l.err + r.err - worst.err;
    heap.push(l);
    heap.push(r);
    ++n;
  }
  return sign * total;
}

double integrate_pieces(const Fn& f, double a, double b, std::vector<double> breaks,
                        double rel_tol, double abs_tol) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::remove_if(breaks.begin(), breaks.end(),
                              [&](double x) { return x < a || x > b; }),
               breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [&](double x, double y) {
                             return std::abs(x - y) <= 1e-14 * (1.0 + std::abs(x));
                           }),
               breaks.end());
  double total = 0.0;
  for (size_t i = 0; i + 1 < breaks.size(); ++i)
    total += integrate(f, breaks[i], breaks[i + 1], rel_tol,
                       abs_tol / static_cast<double>(breaks.size()));
  return sign * total;
}

RootResult find_root(const Fn& f, double a, double b, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("find_root: tol must be positive");
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return {a, 0.0, 0};
  if (fb == 0.0) return {b, 0.0, 0};
  if ((fa > 0) == (fb > 0))
    throw std::invalid_argument("find_root: interval does not bracket a root");
  double c = a, fc = fa;
  double d = b - a, e = d;
  int it = 0;
  for (; it < 200; ++it) {
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double xtol = 2.0 * 2.220446049250313e-16 * std::abs(b) + 0.5 * tol;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= xtol || fb == 0.0) break;
    if (std::abs(e) >= xtol && std::abs(fa) > std::abs(fb)) {
      double s = fb / fa, p, q;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc, r = fb / fc;
        p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * m * q - std::abs(xtol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > xtol) ? d : (m > 0 ? xtol : -xtol);
    fb = f(b);
  }
  return {b, fb, it};
}

ArgmaxResult grid_argmax(const Fn& f, double a, double b, int n) {
  if (n < 2) throw std::invalid_argument("grid_argmax: n must be >= 2");
  if (a > b) std::swap(a, b);
  const double h = (b - a) / n;
  int best = 0;
  double fbest = f(a);
  std::vector<double> fv(n + 1);
  fv[0] = fbest;
  for (int i = 1; i <= n; ++i) {
    const double x = (i == n) ? b : a + i * h;
    fv[i] = f(x);
    if (fv[i] > fbest) {
      fbest = fv[i];
      best = i;
    }
  }
  double lo = (best == 0) ? a : a + (best - 1) * h;
  double hi = (best == n) ? b : a + (best + 1) * h;
  // golden-section trims the bracket around the grid winner
  const double gr = 0.6180339887498949;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 120 && (hi - lo) > 1e-13 * (1.0 + std::abs(hi)); ++it) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = f(x2);
    }
  }
  ArgmaxResult res{0.5 * (lo + hi), f(0.5 * (lo + hi))};
  // prefer the smallest x among near-ties, including the raw grid winner
  const double tie = 1e-12 * std::max(1.0, std::abs(res.fx));
  const double xg = (best == n) ? b : a + best * h;
  if (fv[best] >= res.fx - tie && xg < res.x) res = {xg, fv[best]};
  if (fv[0] >= res.fx - tie) res = {a, fv[0]};
  return res;
}

std::vector<double> scan_roots(const Fn& f, double a, double b, int n, double tol) {
  std::vector<double> roots;
  if (n < 2 || a >= b) return roots;
  double x0 = a, f0 = f(a);
  for (int i = 1; i <= n; ++i) {
    const double x1 = a + (b - a) * i / n;
    const double f1 = f(x1);
    if (f0 == 0.0) {
      roots.push_back(x0);
    } else if ((f0 > 0) != (f1 > 0)) {
      roots.push_back(find_root(f, x0, x1, tol).x);
    }
    x0 = x1;
    f0 = f1;
  }
  if (f0 == 0.0) roots.push_back(x0);
  return roots;
}

}  // namespace preauction::num

#pragma once

#include <functional>
#include <vector>

namespace preauction::num {

// Shared solver settings. quad_points sizes coarse scan grids, root_tol is the
// bracketed-root tolerance, grid_points sizes ironing/argmax grids.
struct NumericConfig {
  int quad_points = 512;
  double root_tol = 1e-9;
  int grid_points = 2048;

  NumericConfig() = default;
  NumericConfig(int qp, double rt, int gp);
  void validate() const;
};

using Fn = std::function<double(double)>;

// Adaptive Gauss-Kronrod (G7,K15) on [a,b].
double integrate(const Fn& f, double a, double b,
                 double rel_tol = 1e-10, double abs_tol = 1e-13);

// Same, with interior breakpoints so each smooth piece gets its own panels.
double integrate_pieces(const Fn& f, double a, double b,
                        std::vector<double> breaks,
                        double rel_tol = 1e-10, double abs_tol = 1e-13);

struct RootResult {
  double x = 0;
  double fx = 0;
  int iters = 0;
};

// Brent's method on [a,b]; throws std::invalid_argument without a sign change.
RootResult find_root(const Fn& f, double a, double b, double tol = 1e-9);

struct ArgmaxResult {
  double x = 0;
  double fx = 0;
};

// Grid scan plus golden-section refinement. Ties resolve to the smallest x.
ArgmaxResult grid_argmax(const Fn& f, double a, double b, int n);

// All sign changes of f on an n-point grid of [a,b], refined by find_root.
std::vector<double> scan_roots(const Fn& f, double a, double b, int n, double tol);

}  // namespace preauction::num

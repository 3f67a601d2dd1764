#pragma once

#include <vector>

#include "preauction/distribution.hpp"

namespace preauction {

// Affine segment of a (possibly ironed) virtual value; flat when phi0 == phi1.
struct VirtualSegment {
  double v0 = 0, v1 = 0;
  double phi0 = 0, phi1 = 0;
};

// Nondecreasing piecewise-affine virtual value on [lo, hi].
class IronedVirtual {
 public:
  IronedVirtual(std::vector<VirtualSegment> segs, bool ironed);

  double operator()(double v) const;
  bool ironed() const { return ironed_; }
  const std::vector<VirtualSegment>& segments() const { return segs_; }
  double lo() const { return segs_.front().v0; }
  double hi() const { return segs_.back().v1; }

  // smallest value with a nonnegative (ironed) virtual value; hi if none
  double reserve() const;
  // largest v with value <= t; lo if the whole function exceeds t
  double sup_value_leq(double t) const;

 private:
  std::vector<VirtualSegment> segs_;
  bool ironed_;
};

// Concave-hull ironing of the quantile revenue curve. Regular inputs pass
// through exactly; otherwise flats replace the decreasing stretches, built on
// a grid of cfg.grid_points quantiles plus the distribution's breakpoints.
IronedVirtual iron(const ValueDist& d, const num::NumericConfig& cfg = {});

}  // namespace preauction

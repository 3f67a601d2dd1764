#pragma once

#include <utility>
#include <vector>

#include "preauction/numeric.hpp"

namespace preauction {

// Atomless value distribution with full support on [lo, hi].
class ValueDist {
 public:
  virtual ~ValueDist() = default;
  virtual double lo() const = 0;
  virtual double hi() const = 0;
  virtual double cdf(double v) const = 0;
  virtual double pdf(double v) const = 0;
  virtual double quantile(double q) const = 0;
  // Points where the density may change, always including lo and hi.
  virtual std::vector<double> breakpoints() const = 0;
};

enum class Family { Uniform, PiecewiseLinearCdf };

// Prior families. Both are stored as a piecewise-linear cdf (a uniform is two
// knots), which keeps cdf/pdf/quantile exact and cheap.
class Distribution final : public ValueDist {
 public:
  static Distribution uniform(double lo, double hi);
  // knots = (value, cdf) pairs; values strictly increasing, cdf strictly
  // increasing from 0 to 1.
  static Distribution piecewise_linear_cdf(std::vector<std::pair<double, double>> knots);

  Family family() const { return family_; }
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }

  double lo() const override { return knots_.front().first; }
  double hi() const override { return knots_.back().first; }
  double cdf(double v) const override;
  double pdf(double v) const override;
  double quantile(double q) const override;
  std::vector<double> breakpoints() const override;

 private:
  Distribution(Family f, std::vector<std::pair<double, double>> knots);
  Family family_;
  std::vector<std::pair<double, double>> knots_;
};

// Conditional distribution of v given v in [a, b], renormalized.
class Posterior final : public ValueDist {
 public:
  Posterior(Distribution base, double a, double b);

  const Distribution& base() const { return base_; }
  double mass() const { return mass_; }

  double lo() const override { return a_; }
  double hi() const override { return b_; }
  double cdf(double v) const override;
  double pdf(double v) const override;
  double quantile(double q) const override;
  std::vector<double> breakpoints() const override;

 private:
  Distribution base_;
  double a_, b_, ca_, mass_;
};

Posterior truncate(const Distribution& F, double a, double b);

// Message posteriors for the cutoff rule "send high iff v >= tau". A tau at or
// below the support still has a well-defined high posterior: the lowest cdf
// segment extends linearly down to tau and the result renormalizes on [tau, hi].
Posterior high_posterior(const Distribution& F, double tau);
Posterior low_posterior(const Distribution& F, double tau);

double virtual_value(const ValueDist& d, double v);
bool is_regular(const ValueDist& d, const num::NumericConfig& cfg = {});

struct PricePoint {
  double price = 0;
  double revenue = 0;
};

// argmax of p * (1 - F(p)) on the support; stationary candidates are
// cross-checked against a grid argmax and the grid wins on disagreement.
PricePoint monopoly_price(const ValueDist& d, const num::NumericConfig& cfg = {});

// Smallest value whose virtual value reaches the outside option c;
// clamps to the support ends when the root falls outside.
double r_star(const Distribution& F, double c, const num::NumericConfig& cfg = {});

}  // namespace preauction

#pragma once

#include <cstddef>
#include <vector>

#include "dtbias/errors.hpp"

namespace dtbias {

// A step distribution function: mass weights[i] at points[i]. Points are
// strictly increasing (ties are merged by summing their weights) and the
// weights are normalized to sum one.
class WeightedCDF {
 public:
  WeightedCDF(std::vector<double> points, std::vector<double> weights);

  // P(X <= t): right-continuous, nondecreasing, 0 before the first point and
  // exactly 1 from the last point on.
  double operator()(double t) const;

  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return points_.size(); }

 private:
  std::vector<double> points_;
  std::vector<double> weights_;
  std::vector<double> cum_;  // prefix sums of weights_, back() forced to 1
};

WeightedCDF make_weighted_cdf(std::vector<double> points,
                              std::vector<double> weights);

// max over the grid of |a(t) - b(t)|. The CDFs used here are concentrated on
// the observed X's, so evaluating at the distinct X's gives the exact sup.
double sup_distance(const WeightedCDF& a, const WeightedCDF& b,
                    const std::vector<double>& eval_points);

// Estimated sampling probability G_n at the sorted distinct X's, plus the
// observation probability alpha_n.
struct SamplingCurve {
  std::vector<double> points;
  std::vector<double> values;  // each in (0, 1]
  double alpha = 1.0;
};

}  // namespace dtbias

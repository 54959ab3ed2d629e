#include "dtbias/weighted_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace dtbias {

WeightedCDF::WeightedCDF(std::vector<double> points, std::vector<double> weights) {
  if (points.empty() || points.size() != weights.size()) {
    throw EmptyInput("weighted CDF needs matching, non-empty points and weights");
  }
  const std::size_t n = points.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });

  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) {
      throw NegativeWeight("weights must be non-negative and finite");
    }
    total += w;
  }
  if (!(total > 0.0)) {
    throw NegativeWeight("weights must not all be zero");
  }

  // Merge ties so points_ is strictly increasing.
  for (std::size_t r = 0; r < n; ++r) {
    const double p = points[order[r]];
    const double w = weights[order[r]] / total;
    if (!points_.empty() && points_.back() == p) {
      weights_.back() += w;
    } else {
      points_.push_back(p);
      weights_.push_back(w);
    }
  }

  cum_.resize(points_.size());
  double run = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    run += weights_[i];
    cum_[i] = run;
  }
  cum_.back() = 1.0;
}

double WeightedCDF::operator()(double t) const {
  auto it = std::upper_bound(points_.begin(), points_.end(), t);
  if (it == points_.begin()) return 0.0;
  return cum_[static_cast<std::size_t>(it - points_.begin()) - 1];
}

WeightedCDF make_weighted_cdf(std::vector<double> points, std::vector<double> weights) {
  return WeightedCDF(std::move(points), std::move(weights));
}

double sup_distance(const WeightedCDF& a, const WeightedCDF& b,
                    const std::vector<double>& eval_points) {
  if (eval_points.empty()) {
    throw EmptyInput("sup distance needs at least one evaluation point");
  }
  double best = 0.0;
  for (double t : eval_points) {
    best = std::max(best, std::fabs(a(t) - b(t)));
  }
  return best;
}

}  // namespace dtbias

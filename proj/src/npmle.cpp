#include "dtbias/npmle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dtbias/errors.hpp"

namespace dtbias {

const char* to_string(FitStatus status) {
  switch (status) {
    case FitStatus::Converged:
      return "converged";
    case FitStatus::MaxIterationsExceeded:
      return "max_iterations_exceeded";
    case FitStatus::DegenerateWeights:
      return "degenerate_weights";
  }
  return "unknown";
}

WeightedCDF ecdf(const TruncatedSample& sample) {
  // 1/n per row, the same double the uniform NPMLE produces, so the two
  // estimators coincide bit-for-bit on untruncated data.
  const double w = 1.0 / static_cast<double>(sample.size());
  return WeightedCDF(sample.xs(), std::vector<double>(sample.size(), w));
}

namespace {

constexpr double kDegenerate = 1e-12;

// The indicator J_ij = I(U_j <= X_i <= V_j) is an interval condition in X, so
// with the X's sorted each observation j covers a contiguous block of sorted
// positions. Coverage sums then reduce to difference arrays and prefix sums,
// making one self-consistency sweep O(n) instead of O(n^2).
struct CoverageIndex {
  std::vector<std::size_t> order;   // sorted position -> original index
  std::vector<std::size_t> rank;    // original index -> sorted position
  std::vector<double> sorted_x;
  std::vector<std::size_t> lo, hi;  // j covers sorted positions [lo_j, hi_j)

  explicit CoverageIndex(const TruncatedSample& sample) {
    const std::size_t n = sample.size();
    order.resize(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return sample[a].x < sample[b].x;
    });
    rank.resize(n);
    sorted_x.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
      rank[order[p]] = p;
      sorted_x[p] = sample[order[p]].x;
    }
    lo.resize(n);
    hi.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      lo[j] = static_cast<std::size_t>(
          std::lower_bound(sorted_x.begin(), sorted_x.end(), sample[j].u) -
          sorted_x.begin());
      hi[j] = static_cast<std::size_t>(
          std::upper_bound(sorted_x.begin(), sorted_x.end(), sample[j].v) -
          sorted_x.begin());
      // u_j <= x_j <= v_j, so every block contains j's own position.
    }
  }

  std::size_t size() const { return sorted_x.size(); }

  // g[p] = sum_j k_j I(lo_j <= p < hi_j), for p in sorted order.
  void coverage_of_points(const std::vector<double>& k,
                          std::vector<double>& g) const {
    const std::size_t n = size();
    std::vector<double> diff(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      diff[lo[j]] += k[j];
      diff[hi[j]] -= k[j];
    }
    g.resize(n);
    double run = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      run += diff[p];
      g[p] = run;
    }
  }

  // h[j] = sum_i f_i I(lo_j <= rank_i < hi_j), with f in sorted order.
  void coverage_of_blocks(const std::vector<double>& f_sorted,
                          std::vector<double>& h) const {
    const std::size_t n = size();
    std::vector<double> pref(n + 1, 0.0);
    for (std::size_t p = 0; p < n; ++p) pref[p + 1] = pref[p] + f_sorted[p];
    h.resize(n);
    for (std::size_t j = 0; j < n; ++j) h[j] = pref[hi[j]] - pref[lo[j]];
  }
};

}  // namespace

std::pair<NpmleFit, FitDiagnostics> fit_npmle(const TruncatedSample& sample,
                                              const FitOptions& options) {
  if (options.tol <= 0.0) throw DomainError("tol must be positive");
  if (options.max_iter < 1) throw DomainError("max_iter must be >= 1");

  const std::size_t n = sample.size();
  const CoverageIndex index(sample);

  NpmleFit fit;
  FitDiagnostics diag;

  std::vector<double> k(n, 1.0 / static_cast<double>(n));
  std::vector<double> f_sorted(n, 1.0 / static_cast<double>(n));
  std::vector<double> g_sorted, h;

  auto flag_degenerate = [&](const std::vector<double>& values, bool sorted_space) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] < kDegenerate) {
        diag.degenerate_indices.push_back(sorted_space ? index.order[i] : i);
      }
    }
    std::sort(diag.degenerate_indices.begin(), diag.degenerate_indices.end());
    diag.status = FitStatus::DegenerateWeights;
  };

  int iter = 0;
  double delta = 0.0;
  bool degenerate = false;
  while (iter < options.max_iter) {
    ++iter;
    delta = 0.0;

    // (a) given k: g_i = sum_j k_j J_ij, then f_i proportional to 1/g_i.
    index.coverage_of_points(k, g_sorted);
    if (*std::min_element(g_sorted.begin(), g_sorted.end()) < kDegenerate) {
      flag_degenerate(g_sorted, true);
      degenerate = true;
      break;
    }
    // Normalize relative to the smallest coverage: the ratios sit in [1, ..)
    // near 1, and when every g is equal each ratio is exactly 1, so the
    // uniform fixed point comes out as exactly 1/n.
    const double g_min = *std::min_element(g_sorted.begin(), g_sorted.end());
    double inv_sum = 0.0;
    for (double g : g_sorted) inv_sum += g_min / g;
    for (std::size_t p = 0; p < n; ++p) {
      const double next = (g_min / g_sorted[p]) / inv_sum;
      delta = std::max(delta, std::fabs(next - f_sorted[p]));
      f_sorted[p] = next;
    }

    // (b) given f: h_j = sum_i f_i J_ij, then k_j proportional to 1/h_j.
    index.coverage_of_blocks(f_sorted, h);
    if (*std::min_element(h.begin(), h.end()) < kDegenerate) {
      flag_degenerate(h, false);
      degenerate = true;
      break;
    }
    const double h_min = *std::min_element(h.begin(), h.end());
    double hin_sum = 0.0;
    for (double hj : h) hin_sum += h_min / hj;
    for (std::size_t j = 0; j < n; ++j) {
      const double next = (h_min / h[j]) / hin_sum;
      delta = std::max(delta, std::fabs(next - k[j]));
      k[j] = next;
    }

    if (options.record_loglik) {
      // log L(f, k) up to the multinomial constant; the normalizing mass is
      // sum_ij f_i k_j J_ij = sum_j k_j h_j with h evaluated at the new f.
      double log_fk = 0.0;
      for (double fp : f_sorted) log_fk += std::log(fp);
      for (double kj : k) log_fk += std::log(kj);
      double mass = 0.0;
      for (std::size_t j = 0; j < n; ++j) mass += k[j] * h[j];
      diag.loglik.push_back(log_fk - static_cast<double>(n) * std::log(mass));
    }

    if (delta < options.tol) {
      diag.status = FitStatus::Converged;
      break;
    }
  }

  diag.final_delta = delta;
  fit.iterations = iter;

  if (!degenerate && delta >= options.tol) {
    diag.status = FitStatus::MaxIterationsExceeded;
  }
  fit.converged = diag.status == FitStatus::Converged;

  // Recompute g, f and alpha_n from the final k so the inverse-probability
  // identities f_i = alpha_n / (n g_i) and alpha_n = n / sum_i 1/g_i hold
  // exactly for downstream consumers.
  index.coverage_of_points(k, g_sorted);
  fit.g_at_x.resize(n);
  fit.f_weights.resize(n);
  fit.k_weights = k;
  double min_g = g_sorted[0];
  double scale = 0.0;  // smallest positive coverage
  for (std::size_t p = 0; p < n; ++p) {
    min_g = std::min(min_g, g_sorted[p]);
    if (g_sorted[p] > 0.0 && (scale == 0.0 || g_sorted[p] < scale)) {
      scale = g_sorted[p];
    }
  }
  fit.min_g = min_g;
  double inv_sum = 0.0;  // sum of scale / g_i, i.e. scale * sum 1/g_i
  for (std::size_t p = 0; p < n; ++p) {
    if (g_sorted[p] > 0.0) inv_sum += scale / g_sorted[p];
  }
  for (std::size_t p = 0; p < n; ++p) {
    const double g = g_sorted[p];
    fit.g_at_x[index.order[p]] = g;
    fit.f_weights[index.order[p]] = g > 0.0 ? (scale / g) / inv_sum : 0.0;
  }
  fit.alpha_n = static_cast<double>(n) * scale / inv_sum;

  return {std::move(fit), std::move(diag)};
}

WeightedCDF npmle_cdf(const NpmleFit& fit, const TruncatedSample& sample) {
  if (!fit.converged) {
    throw NotConverged("NPMLE did not converge; its CDF is not available");
  }
  return WeightedCDF(sample.xs(), fit.f_weights);
}

SamplingCurve sampling_curve(const NpmleFit& fit, const TruncatedSample& sample) {
  if (!fit.converged) {
    throw NotConverged("NPMLE did not converge; no sampling curve");
  }
  const std::size_t n = sample.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sample[a].x < sample[b].x;
  });
  SamplingCurve curve;
  curve.alpha = fit.alpha_n;
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t i = order[p];
    // G_n depends on x only, so ties share a value; keep the first.
    if (!curve.points.empty() && curve.points.back() == sample[i].x) continue;
    curve.points.push_back(sample[i].x);
    curve.values.push_back(fit.g_at_x[i]);
  }
  return curve;
}

}  // namespace dtbias

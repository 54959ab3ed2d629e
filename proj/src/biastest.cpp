#include "dtbias/biastest.hpp"

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "dtbias/errors.hpp"
#include "dtbias/parallel.hpp"
#include "dtbias/rng.hpp"

namespace dtbias {

double dn_statistic(const TruncatedSample& sample, const NpmleFit& fit) {
  const WeightedCDF star = ecdf(sample);
  const WeightedCDF fn = npmle_cdf(fit, sample);
  return sup_distance(fn, star, star.points());
}

namespace {

// One bootstrap pass shared by the test and the SE-ratio curve: replicate r
// resamples the triplets on substream (seed, kBootstrapStream, r), refits,
// and records F_n^b and F_n^{*,b} at the original distinct X's. Replicates
// whose fit degenerates or stalls are dropped (ok[r] = false).
struct ReplicatePass {
  std::vector<char> ok;
  std::vector<std::vector<double>> fitted;   // F_n^b at eval points
  std::vector<std::vector<double>> empirical;  // F_n^{*,b} at eval points
};

ReplicatePass run_replicates(const TruncatedSample& sample,
                             const std::vector<double>& eval_points, int b,
                             std::uint64_t seed,
                             const BootstrapOptions& options) {
  const std::size_t n = sample.size();
  ReplicatePass pass;
  pass.ok.assign(static_cast<std::size_t>(b), 0);
  pass.fitted.assign(static_cast<std::size_t>(b), {});
  pass.empirical.assign(static_cast<std::size_t>(b), {});

  parallel_for(static_cast<std::size_t>(b), options.threads, [&](std::size_t r) {
    Engine rng = make_stream(seed, kBootstrapStream, r);
    std::vector<TruncatedObservation> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      rows.push_back(sample[uniform_index(rng, n)]);
    }
    const TruncatedSample resample(std::move(rows));
    auto [fit, diag] = fit_npmle(resample, options.fit);
    if (diag.status != FitStatus::Converged) return;

    const WeightedCDF fn_b = npmle_cdf(fit, resample);
    const WeightedCDF star_b = ecdf(resample);
    auto& fitted = pass.fitted[r];
    auto& empirical = pass.empirical[r];
    fitted.reserve(eval_points.size());
    empirical.reserve(eval_points.size());
    for (double t : eval_points) {
      fitted.push_back(fn_b(t));
      empirical.push_back(star_b(t));
    }
    pass.ok[r] = 1;
  });

  return pass;
}

std::pair<NpmleFit, WeightedCDF> fit_original(const TruncatedSample& sample,
                                              const FitOptions& options) {
  auto [fit, diag] = fit_npmle(sample, options);
  if (diag.status != FitStatus::Converged) {
    throw OriginalFitFailed(std::string("NPMLE fit on the input sample: ") +
                            to_string(diag.status));
  }
  WeightedCDF cdf = npmle_cdf(fit, sample);
  return {std::move(fit), std::move(cdf)};
}

}  // namespace

BiasTestReport bootstrap_test(const TruncatedSample& sample, int b,
                              std::uint64_t seed,
                              const BootstrapOptions& options) {
  if (b < 1) throw DomainError("bootstrap needs b >= 1 replicates");

  auto [fit, fn] = fit_original(sample, options.fit);
  const WeightedCDF star = ecdf(sample);
  const std::vector<double>& points = star.points();

  BiasTestReport report;
  report.b_requested = b;
  report.seed = seed;
  report.alpha_n = fit.alpha_n;
  report.d_n = sup_distance(fn, star, points);

  // Recentring constants: D_n^b = max_t |F_n^b(t) - F_n^{*,b}(t) + c(t)|
  // with c(t) = F_n^*(t) - F_n(t).
  std::vector<double> centre(points.size());
  for (std::size_t t = 0; t < points.size(); ++t) {
    centre[t] = star(points[t]) - fn(points[t]);
  }

  const ReplicatePass pass = run_replicates(sample, points, b, seed, options);

  int at_least = 0;
  for (std::size_t r = 0; r < static_cast<std::size_t>(b); ++r) {
    if (!pass.ok[r]) continue;
    double stat = 0.0;
    for (std::size_t t = 0; t < points.size(); ++t) {
      stat = std::max(stat, std::fabs(pass.fitted[r][t] - pass.empirical[r][t] +
                                      centre[t]));
    }
    report.bootstrap_stats.push_back(stat);
    if (stat >= report.d_n) ++at_least;
  }
  report.b_used = static_cast<int>(report.bootstrap_stats.size());
  if (report.b_used == 0) {
    throw AllReplicatesFailed("every bootstrap replicate fit failed");
  }
  report.p_value = static_cast<double>(at_least) / report.b_used;
  return report;
}

SeRatioCurve se_ratio(const TruncatedSample& sample, int b, std::uint64_t seed,
                      const BootstrapOptions& options) {
  if (b < 2) throw DomainError("SE ratio needs b >= 2 replicates");

  fit_original(sample, options.fit);  // same preconditions as the test
  const WeightedCDF star = ecdf(sample);
  const std::vector<double>& points = star.points();
  const double n = static_cast<double>(sample.size());

  const ReplicatePass pass = run_replicates(sample, points, b, seed, options);

  int used = 0;
  for (char ok : pass.ok) used += ok;
  if (used < 2) {
    throw AllReplicatesFailed(
        "fewer than two bootstrap replicates survived; no spread to estimate");
  }

  SeRatioCurve curve;
  curve.b = used;
  for (std::size_t t = 0; t < points.size(); ++t) {
    const double fstar = star(points[t]);
    const double sigma_star = std::sqrt(fstar * (1.0 - fstar) / n);
    if (sigma_star == 0.0) continue;

    double mean = 0.0;
    for (std::size_t r = 0; r < pass.ok.size(); ++r) {
      if (pass.ok[r]) mean += pass.fitted[r][t];
    }
    mean /= used;
    double ss = 0.0;
    for (std::size_t r = 0; r < pass.ok.size(); ++r) {
      if (!pass.ok[r]) continue;
      const double d = pass.fitted[r][t] - mean;
      ss += d * d;
    }
    const double sigma_boot = std::sqrt(ss / (used - 1));
    curve.points.push_back(points[t]);
    curve.ratio.push_back(sigma_boot / sigma_star);
  }
  return curve;
}

}  // namespace dtbias

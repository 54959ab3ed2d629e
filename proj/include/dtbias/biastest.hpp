#pragma once

#include <cstdint>
#include <vector>

#include "dtbias/npmle.hpp"
#include "dtbias/sample.hpp"

namespace dtbias {

// Sup-norm distance between the NPMLE F_n and the ECDF F_n* over the distinct
// X's: the test statistic for the hypothesis of ignorable sampling bias.
double dn_statistic(const TruncatedSample& sample, const NpmleFit& fit);

struct BootstrapOptions {
  FitOptions fit;  // reused unchanged for every replicate fit
  int threads = 0;  // 0 = hardware default
};

struct BiasTestReport {
  double d_n = 0.0;
  double p_value = 0.0;
  int b_requested = 0;
  int b_used = 0;  // replicates whose NPMLE existed and converged
  std::vector<double> bootstrap_stats;  // D_n^b of the surviving replicates
  double alpha_n = 0.0;
  std::uint64_t seed = 0;
};

// Simple bootstrap on the (X, U, V) triplets. Each replicate resamples n rows
// with replacement, refits the NPMLE, and evaluates the recentred statistic
//   D_n^b = max |F_n^b - F_n + F_n* - F_n^{*,b}|
// over the original distinct X's. Replicates whose fit degenerates or fails
// to converge are skipped and excluded from the denominator. The p-value is
// the fraction of surviving replicates with D_n^b >= D_n.
BiasTestReport bootstrap_test(const TruncatedSample& sample, int b,
                              std::uint64_t seed,
                              const BootstrapOptions& options = {});

struct SeRatioCurve {
  std::vector<double> points;  // distinct X's where the ratio is defined
  std::vector<double> ratio;   // sigma_n(x) / sigma_n*(x)
  int b = 0;                   // bootstrap replicates used
};

// Bootstrap standard error of F_n(x) relative to the binomial standard error
// of the ECDF, sigma_n*(x) = sqrt(F_n*(x)(1 - F_n*(x))/n), at each distinct X.
// Points with sigma_n* = 0 are dropped, not reported as infinite. Uses the
// same resampling substreams as bootstrap_test for a given seed.
SeRatioCurve se_ratio(const TruncatedSample& sample, int b, std::uint64_t seed,
                      const BootstrapOptions& options = {});

}  // namespace dtbias

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dtbias/sample.hpp"
#include "dtbias/weighted_cdf.hpp"

namespace dtbias {

struct FitOptions {
  double tol = 1e-8;  // max absolute f/k weight change per sweep
  int max_iter = 10000;
  bool record_loglik = false;  // keep the log-likelihood path (diagnostics)
};

enum class FitStatus { Converged, MaxIterationsExceeded, DegenerateWeights };

const char* to_string(FitStatus status);

struct FitDiagnostics {
  FitStatus status = FitStatus::Converged;
  double final_delta = 0.0;  // last sweep's max weight change
  std::vector<std::size_t> degenerate_indices;  // rows whose coverage collapsed
  std::vector<double> loglik;  // one entry per sweep, when recorded
};

// Joint NPMLE (F_n, K_n) for a doubly truncated sample. All vectors are
// aligned with the original observation order.
struct NpmleFit {
  std::vector<double> f_weights;  // mass of F_n at X_i
  std::vector<double> k_weights;  // mass of K_n at (U_i, V_i)
  std::vector<double> g_at_x;     // G_n(X_i) = sum_j k_j I(U_j <= X_i <= V_j)
  double alpha_n = 0.0;           // n / sum_i 1/G_n(X_i)
  int iterations = 0;
  bool converged = false;
  double min_g = 0.0;
};

// ECDF of the X's: mass 1/n per observation, ties merged.
WeightedCDF ecdf(const TruncatedSample& sample);

// Alternating self-consistency iteration for the joint NPMLE:
//   given k:  g_i = sum_j k_j I(U_j <= X_i <= V_j),  f_i = (1/g_i) / sum_l (1/g_l)
//   given f:  h_j = sum_i f_i I(U_j <= X_i <= V_j),  k_j = (1/h_j) / sum_l (1/h_l)
// from uniform starting weights, until the largest weight change reaches
// options.tol. Coverage masses g or h dropping below 1e-12 flag the fit as
// DegenerateWeights (the NPMLE is not reliably computable for that sample).
// On return g_at_x, f_weights and alpha_n are recomputed from the final k so
// the inverse-probability-weighting identities hold exactly.
std::pair<NpmleFit, FitDiagnostics> fit_npmle(const TruncatedSample& sample,
                                              const FitOptions& options = {});

// F_n as a step CDF: mass f_weights[i] at X_i. Requires a converged fit.
WeightedCDF npmle_cdf(const NpmleFit& fit, const TruncatedSample& sample);

// G_n over the sorted distinct X's plus alpha_n. Requires a converged fit.
SamplingCurve sampling_curve(const NpmleFit& fit, const TruncatedSample& sample);

}  // namespace dtbias

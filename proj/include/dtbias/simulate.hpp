#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dtbias/npmle.hpp"
#include "dtbias/rng.hpp"
#include "dtbias/sample.hpp"

namespace dtbias {

// Target laws on [0,1] with closed-form quantile and CDF: the uniform and
// the Beta shapes with a == 1 or b == 1, the ones with an analytic inverse.
class TargetLaw {
 public:
  static TargetLaw uniform01();
  static TargetLaw beta(double a, double b);

  double quantile(double u) const;  // inverse CDF
  double cdf(double x) const;

  bool is_uniform() const { return a_ == 1.0 && b_ == 1.0; }
  double a() const { return a_; }
  double b() const { return b_; }
  std::string name() const;

 private:
  TargetLaw(double a, double b) : a_(a), b_(b) {}
  double a_;
  double b_;
};

double draw_target(const TargetLaw& law, Engine& rng);

// Parses "uniform" or "beta(a,b)" (case insensitive, spaces ignored).
TargetLaw target_law_from_string(const std::string& name);

enum class Model { M1, M2 };

const char* to_string(Model model);
Model model_from_string(const std::string& name);

struct TruncationPair {
  double u;
  double v;
};

// M1 (interval sampling):      U = (1+s) Z^rho - s,   V = U + s
// M2 (independent limits):     U = (1+s) Z1 - s,      V = s (Z2^-rho - 1)
// with Z, Z1, Z2 uniform on (0,1).
TruncationPair draw_truncation_pair(Model model, double rho, double sigma,
                                    Engine& rng);

// P(U <= x <= V) in closed form for x in (0,1):
//   M1: (1+s)^{-1/rho} [(x+s)^{1/rho} - x^{1/rho}]
//   M2: s^{1/rho} (1+s)^{-1} (x+s)^{1-1/rho}
// Both collapse to the constant s/(1+s) when rho == 1 (no sampling bias).
double analytic_g(Model model, double x, double rho, double sigma);

struct McScenario {
  Model model = Model::M1;
  double rho = 1.0;
  double sigma = 1.0;  // truncation-width parameter
  int n = 100;
  TargetLaw target = TargetLaw::uniform01();
  std::vector<double> gammas = {0.10, 0.05, 0.01};
  int b = 500;
  int trials = 1000;
  std::uint64_t seed = 0;
  FitOptions fit;   // shared by the trial fit and its bootstrap fits
  int threads = 0;

  void validate() const;  // throws Error on out-of-range settings
};

// Acceptance/rejection draw: propose X from the target and (U, V) from the
// model until n triplets satisfy U <= X <= V.
TruncatedSample draw_truncated_sample(const McScenario& scenario, Engine& rng);

struct McResult {
  std::vector<double> gammas;
  std::vector<double> rejection_rate;  // per gamma, over the trials kept
  int trials_used = 0;
  int trials_discarded = 0;  // NPMLE not reliably computable on the draw
  double mean_b_used = 0.0;
};

// One Table-style cell: draws `trials` samples, discards those whose NPMLE
// fit fails, and rejects at each level gamma when the bootstrap p-value is
// smaller than or equal to gamma. Trials run on independent substreams of
// scenario.seed, so parallel and serial execution agree.
McResult run_monte_carlo(const McScenario& scenario);

}  // namespace dtbias

#include "dtbias/simulate.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <utility>

#include "dtbias/biastest.hpp"
#include "dtbias/errors.hpp"
#include "dtbias/parallel.hpp"

namespace dtbias {

TargetLaw TargetLaw::uniform01() { return TargetLaw(1.0, 1.0); }

TargetLaw TargetLaw::beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw UnsupportedLaw("Beta shapes must be positive");
  }
  if (a != 1.0 && b != 1.0) {
    throw UnsupportedLaw(
        "only Beta laws with a == 1 or b == 1 have an analytic inverse");
  }
  return TargetLaw(a, b);
}

double TargetLaw::quantile(double u) const {
  if (!(u >= 0.0) || !(u <= 1.0)) {
    throw DomainError("quantile argument must lie in [0, 1]");
  }
  if (is_uniform()) return u;
  if (a_ == 1.0) return 1.0 - std::pow(1.0 - u, 1.0 / b_);  // F(x) = 1-(1-x)^b
  return std::pow(u, 1.0 / a_);                             // F(x) = x^a
}

double TargetLaw::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  if (is_uniform()) return x;
  if (a_ == 1.0) return 1.0 - std::pow(1.0 - x, b_);
  return std::pow(x, a_);
}

std::string TargetLaw::name() const {
  if (is_uniform()) return "uniform";
  std::ostringstream out;
  out << "beta(" << a_ << "," << b_ << ")";
  return out.str();
}

double draw_target(const TargetLaw& law, Engine& rng) {
  return law.quantile(uniform01(rng));
}

TargetLaw target_law_from_string(const std::string& name) {
  std::string s;
  for (char c : name) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (s == "uniform") return TargetLaw::uniform01();
  if (s.rfind("beta(", 0) == 0 && s.back() == ')') {
    const std::string body = s.substr(5, s.size() - 6);
    const std::size_t comma = body.find(',');
    if (comma != std::string::npos) {
      try {
        const double a = std::stod(body.substr(0, comma));
        const double b = std::stod(body.substr(comma + 1));
        return TargetLaw::beta(a, b);
      } catch (const std::logic_error&) {
        // fall through to the error below
      }
    }
  }
  throw UnsupportedLaw("unrecognized target law: " + name);
}

const char* to_string(Model model) {
  return model == Model::M1 ? "M1" : "M2";
}

Model model_from_string(const std::string& name) {
  std::string s;
  for (char c : name) {
    s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (s == "m1" || s == "1") return Model::M1;
  if (s == "m2" || s == "2") return Model::M2;
  throw DomainError("unrecognized model: " + name + " (expected M1 or M2)");
}

TruncationPair draw_truncation_pair(Model model, double rho, double sigma,
                                    Engine& rng) {
  if (model == Model::M1) {
    const double z = uniform01(rng);
    const double u = (1.0 + sigma) * std::pow(z, rho) - sigma;
    return {u, u + sigma};
  }
  const double z1 = uniform01(rng);
  double z2 = uniform01(rng);
  while (z2 == 0.0) z2 = uniform01(rng);  // keep V finite
  const double u = (1.0 + sigma) * z1 - sigma;
  const double v = sigma * (std::pow(z2, -rho) - 1.0);
  return {u, v};
}

double analytic_g(Model model, double x, double rho, double sigma) {
  if (!(rho > 0.0)) throw DomainError("rho must be positive");
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  if (!(x >= 0.0) || !(x <= 1.0)) {
    throw DomainError("the sampling probability is defined for x in [0, 1]");
  }
  if (rho == 1.0) {
    // Both formulas reduce algebraically to the same constant; evaluating
    // them through pow() would reintroduce rounding noise.
    return sigma / (1.0 + sigma);
  }
  if (model == Model::M1) {
    return std::pow(1.0 + sigma, -1.0 / rho) *
           (std::pow(x + sigma, 1.0 / rho) - std::pow(x, 1.0 / rho));
  }
  return std::pow(sigma, 1.0 / rho) / (1.0 + sigma) *
         std::pow(x + sigma, 1.0 - 1.0 / rho);
}

void McScenario::validate() const {
  if (!(rho > 0.0)) throw DomainError("rho must be positive");
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  if (n < 2) throw DomainError("n must be at least 2");
  if (b < 1) throw DomainError("b must be at least 1");
  if (trials < 1) throw DomainError("trials must be at least 1");
  if (gammas.empty()) throw DomainError("at least one test level is required");
  for (double g : gammas) {
    if (!(g > 0.0) || !(g < 1.0)) {
      throw DomainError("test levels must lie strictly between 0 and 1");
    }
  }
  if (!(fit.tol > 0.0)) throw DomainError("tol must be positive");
  if (fit.max_iter < 1) throw DomainError("max_iter must be >= 1");
}

TruncatedSample draw_truncated_sample(const McScenario& scenario, Engine& rng) {
  std::vector<TruncatedObservation> rows;
  rows.reserve(static_cast<std::size_t>(scenario.n));
  while (rows.size() < static_cast<std::size_t>(scenario.n)) {
    const double x = draw_target(scenario.target, rng);
    const TruncationPair uv =
        draw_truncation_pair(scenario.model, scenario.rho, scenario.sigma, rng);
    if (uv.u <= x && x <= uv.v) rows.push_back({x, uv.u, uv.v});
  }
  return TruncatedSample(std::move(rows));
}

McResult run_monte_carlo(const McScenario& scenario) {
  scenario.validate();

  const std::size_t trials = static_cast<std::size_t>(scenario.trials);
  const std::size_t levels = scenario.gammas.size();

  // Per-trial slots so parallel and serial runs aggregate identically.
  std::vector<char> used(trials, 0);
  std::vector<int> b_used(trials, 0);
  std::vector<std::vector<char>> reject(trials,
                                        std::vector<char>(levels, 0));

  BootstrapOptions boot;
  boot.fit = scenario.fit;
  boot.threads = 1;  // trials are the parallel unit

  parallel_for(trials, scenario.threads, [&](std::size_t t) {
    Engine rng = make_stream(scenario.seed, kTrialStream, t);
    const TruncatedSample sample = draw_truncated_sample(scenario, rng);
    try {
      const BiasTestReport test = bootstrap_test(
          sample, scenario.b, derived_seed(scenario.seed, kTrialStream, t),
          boot);
      used[t] = 1;
      b_used[t] = test.b_used;
      for (std::size_t g = 0; g < levels; ++g) {
        reject[t][g] = test.p_value <= scenario.gammas[g] ? 1 : 0;
      }
    } catch (const OriginalFitFailed&) {
      // NPMLE not reliably computable on this draw: discard the trial.
    } catch (const AllReplicatesFailed&) {
      // No usable bootstrap distribution either: same treatment.
    }
  });

  McResult result;
  result.gammas = scenario.gammas;
  result.rejection_rate.assign(levels, 0.0);
  long long b_total = 0;
  std::vector<int> reject_count(levels, 0);
  for (std::size_t t = 0; t < trials; ++t) {
    if (!used[t]) {
      ++result.trials_discarded;
      continue;
    }
    ++result.trials_used;
    b_total += b_used[t];
    for (std::size_t g = 0; g < levels; ++g) reject_count[g] += reject[t][g];
  }
  if (result.trials_used == 0) {
    throw AllTrialsDiscarded("the NPMLE failed on every simulated sample");
  }
  for (std::size_t g = 0; g < levels; ++g) {
    result.rejection_rate[g] =
        static_cast<double>(reject_count[g]) / result.trials_used;
  }
  result.mean_b_used = static_cast<double>(b_total) / result.trials_used;
  return result;
}

}  // namespace dtbias

// Acceptance gate: every check below must hold for the artifact to be
// considered done. Each criterion prints one PASS/FAIL/SKIP line; the exit
// code is the number of failures. --smoke runs the fast subset (the Monte
// Carlo power study shrinks to trials=50, B=200 and is judged on the power
// ordering only); --data-dir points at optional real-data exports.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dtbias/biastest.hpp"
#include "dtbias/dataset.hpp"
#include "dtbias/errors.hpp"
#include "dtbias/npmle.hpp"
#include "dtbias/rng.hpp"
#include "dtbias/sample.hpp"
#include "dtbias/simulate.hpp"
#include "support/likelihood_oracle.hpp"

using namespace dtbias;

namespace {

constexpr std::uint64_t kAccSeed = 20240811;
constexpr std::uint64_t kCellTag = 0xacce;
constexpr std::uint64_t kDiscardTag = 0xd15c;

enum class Outcome { Pass, Fail, Skip };

struct Tally {
  int pass = 0, fail = 0, skip = 0;
} tally;

void report(int id, const std::string& title, Outcome outcome,
            const std::string& detail) {
  const char* label = outcome == Outcome::Pass   ? "PASS"
                      : outcome == Outcome::Fail ? "FAIL"
                                                 : "SKIP";
  std::printf("[%d] %s  %s", id, label, title.c_str());
  if (!detail.empty()) std::printf("  (%s)", detail.c_str());
  std::printf("\n");
  std::fflush(stdout);
  if (outcome == Outcome::Pass) ++tally.pass;
  if (outcome == Outcome::Fail) ++tally.fail;
  if (outcome == Outcome::Skip) ++tally.skip;
}

void run(int id, const std::string& title,
         const std::function<std::pair<Outcome, std::string>()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome = Outcome::Fail;
  std::string detail;
  try {
    auto result = body();
    outcome = result.first;
    detail = result.second;
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1fs", secs);
  report(id, title, outcome, detail.empty() ? buf : detail + "; " + buf);
}

std::pair<Outcome, std::string> pass(const std::string& detail) {
  return {Outcome::Pass, detail};
}
std::pair<Outcome, std::string> fail(const std::string& detail) {
  return {Outcome::Fail, detail};
}
std::pair<Outcome, std::string> skip(const std::string& detail) {
  return {Outcome::Skip, detail};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

TruncatedSample draw_fixture(Model model, double rho, double sigma, int n,
                             std::uint64_t seed) {
  McScenario scenario;
  scenario.model = model;
  scenario.rho = rho;
  scenario.sigma = sigma;
  scenario.n = n;
  Engine rng = make_stream(seed, kTrialStream, 0);
  return draw_truncated_sample(scenario, rng);
}

// ---- 1. brute-force likelihood oracle on small samples ---------------------

std::pair<Outcome, std::string> criterion_oracle() {
  int checked = 0;
  int connected = 0;
  double worst = 0.0;
  std::uint64_t draw_index = 0;
  while (checked < 50) {
    const int n = 3 + static_cast<int>(draw_index % 3);
    const TruncatedSample sample =
        draw_fixture(Model::M1, 2.0, 1.0, n, derived_seed(kAccSeed, 1, draw_index));
    ++draw_index;

    FitOptions options;
    options.tol = 1e-10;
    auto [fit, diag] = fit_npmle(sample, options);
    if (diag.status != FitStatus::Converged) continue;  // not comparable

    const oracle::MaximizerResult best =
        oracle::maximize_likelihood(sample, 12, 1e-8);
    const double fit_ll =
        oracle::log_likelihood(sample, fit.f_weights, fit.k_weights);
    if (fit_ll < best.loglik - 1e-6) {
      return fail("sample " + std::to_string(draw_index - 1) +
                  ": grid search found a higher likelihood (" +
                  fmt(best.loglik) + " > " + fmt(fit_ll) + ")");
    }
    // Weights are identifiable only when the coverage graph is connected;
    // otherwise the maximizer is a ridge and only the likelihood value is
    // comparable (checked above for every sample).
    if (oracle::coverage_connected(sample)) {
      ++connected;
      for (std::size_t i = 0; i < sample.size(); ++i) {
        worst = std::max(worst, std::fabs(fit.f_weights[i] - best.f[i]));
        worst = std::max(worst, std::fabs(fit.k_weights[i] - best.k[i]));
      }
    }
    ++checked;
  }
  if (connected < 25) {
    return fail("only " + std::to_string(connected) +
                "/50 draws had a connected coverage graph");
  }
  if (worst >= 1e-3) {
    return fail("max weight deviation = " + fmt(worst) + " >= 1e-3 over " +
                std::to_string(connected) + " connected draws");
  }
  return pass("likelihood matched on 50/50 draws; weights matched on the " +
              std::to_string(connected) + " connected draws, max dev = " +
              fmt(worst));
}

// ---- 2. exact null on untruncated data -------------------------------------

std::pair<Outcome, std::string> criterion_null_identity() {
  Engine rng = make_stream(kAccSeed, 2, 0);
  std::vector<TruncatedObservation> rows;
  for (int i = 0; i < 50; ++i) rows.push_back({uniform01(rng), 0.0, 1.0});
  const TruncatedSample sample(rows);

  const BiasTestReport report = bootstrap_test(sample, 200, kAccSeed);
  if (report.d_n >= 1e-10) return fail("d_n = " + fmt(report.d_n));
  for (double stat : report.bootstrap_stats) {
    if (stat >= 1e-10) return fail("a bootstrap statistic reached " + fmt(stat));
  }
  if (report.p_value != 1.0) return fail("p = " + fmt(report.p_value));
  return pass("d_n = " + fmt(report.d_n) + ", all 200 replicate stats < 1e-10, p = 1");
}

// ---- 3. analytic sampling probability vs Monte Carlo -----------------------

std::pair<Outcome, std::string> criterion_analytic_g() {
  const int draws = 100000;
  double worst = 0.0;
  std::uint64_t combo = 0;
  for (Model model : {Model::M1, Model::M2}) {
    for (double sigma : {0.5, 1.0}) {
      for (double rho : {1.0, 2.0, 6.0}) {
        Engine rng = make_stream(kAccSeed, 3, combo++);
        std::vector<TruncationPair> pairs;
        pairs.reserve(draws);
        for (int d = 0; d < draws; ++d) {
          pairs.push_back(draw_truncation_pair(model, rho, sigma, rng));
        }
        for (int ix = 1; ix <= 9; ++ix) {
          const double x = ix / 10.0;
          int covered = 0;
          for (const TruncationPair& uv : pairs) {
            if (uv.u <= x && x <= uv.v) ++covered;
          }
          const double empirical = static_cast<double>(covered) / draws;
          const double exact = analytic_g(model, x, rho, sigma);
          const double gap = std::fabs(empirical - exact);
          worst = std::max(worst, gap);
          if (gap >= 0.01) {
            return fail(std::string(to_string(model)) + " rho=" + fmt(rho) +
                        " sigma=" + fmt(sigma) + " x=" + fmt(x) +
                        ": |MC - analytic| = " + fmt(gap));
          }
        }
      }
    }
  }
  // At rho = 1 the probability is a single constant over the whole support.
  for (Model model : {Model::M1, Model::M2}) {
    for (double sigma : {0.5, 1.0}) {
      const double expected = sigma / (1.0 + sigma);
      for (int i = 0; i <= 1000; ++i) {
        const double g = analytic_g(model, i / 1000.0, 1.0, sigma);
        if (g != expected) {
          return fail(std::string(to_string(model)) + " sigma=" + fmt(sigma) +
                      ": not exactly constant at x=" + fmt(i / 1000.0));
        }
      }
    }
  }
  return pass("12 scenarios x 9 points, max |MC - analytic| = " + fmt(worst) +
              "; rho=1 flat at sigma/(1+sigma) in every bit");
}

// ---- 4/5. Monte Carlo power study -------------------------------------------

struct PowerCell {
  Model model;
  double rho, sigma;
  int n;
  McResult result;
};

std::vector<PowerCell> run_power_grid(int trials, int b) {
  struct Group {
    Model model;
    double sigma;
    int n;
  };
  const std::vector<Group> groups = {{Model::M1, 1.0, 100},
                                     {Model::M2, 1.0, 100},
                                     {Model::M2, 0.5, 200}};
  std::vector<PowerCell> cells;
  std::uint64_t index = 0;
  for (const Group& group : groups) {
    for (double rho : {1.0, 2.0, 6.0}) {
      McScenario scenario;
      scenario.model = group.model;
      scenario.rho = rho;
      scenario.sigma = group.sigma;
      scenario.n = group.n;
      scenario.gammas = {0.10, 0.05, 0.01};
      scenario.b = b;
      scenario.trials = trials;
      scenario.seed = derived_seed(kAccSeed, kCellTag, index++);
      cells.push_back({group.model, rho, group.sigma, group.n,
                       run_monte_carlo(scenario)});
      std::printf("      %s rho=%g sigma=%g n=%d: rates", to_string(group.model),
                  rho, group.sigma, group.n);
      for (double rate : cells.back().result.rejection_rate) {
        std::printf(" %.4f", rate);
      }
      std::printf("  discarded=%d\n", cells.back().result.trials_discarded);
      std::fflush(stdout);
    }
  }
  return cells;
}

std::vector<PowerCell> run_power_grid_smoke(int trials, int b) {
  std::vector<PowerCell> cells;
  std::uint64_t index = 0;
  for (double rho : {1.0, 2.0, 6.0}) {
    McScenario scenario;
    scenario.model = Model::M1;
    scenario.rho = rho;
    scenario.sigma = 1.0;
    scenario.n = 100;
    scenario.gammas = {0.10, 0.05, 0.01};
    scenario.b = b;
    scenario.trials = trials;
    scenario.seed = derived_seed(kAccSeed, kCellTag, index++);
    cells.push_back({Model::M1, rho, 1.0, 100, run_monte_carlo(scenario)});
  }
  return cells;
}

const PowerCell* find_cell(const std::vector<PowerCell>& cells, Model model,
                           double rho, double sigma, int n) {
  for (const PowerCell& cell : cells) {
    if (cell.model == model && cell.rho == rho && cell.sigma == sigma &&
        cell.n == n) {
      return &cell;
    }
  }
  return nullptr;
}

std::pair<Outcome, std::string> criterion_power_values(
    const std::vector<PowerCell>& cells) {
  struct Target {
    Model model;
    double rho, sigma;
    int n;
    std::size_t gamma_index;  // into {0.10, 0.05, 0.01}
    double expected, tolerance;
  };
  const std::vector<Target> targets = {
      {Model::M1, 1.0, 1.0, 100, 1, 0.0346, 0.03},
      {Model::M1, 6.0, 1.0, 100, 1, 0.8980, 0.05},
      {Model::M2, 6.0, 1.0, 100, 2, 0.7736, 0.06},
  };
  std::ostringstream detail;
  for (const Target& t : targets) {
    const PowerCell* cell = find_cell(cells, t.model, t.rho, t.sigma, t.n);
    if (!cell) return fail("missing cell in the study grid");
    const double rate = cell->result.rejection_rate[t.gamma_index];
    if (std::fabs(rate - t.expected) > t.tolerance) {
      return fail(std::string(to_string(t.model)) + " rho=" + fmt(t.rho) +
                  ": rate " + fmt(rate) + " outside " + fmt(t.expected) +
                  " +/- " + fmt(t.tolerance));
    }
    detail << to_string(t.model) << " rho=" << t.rho << ": " << fmt(rate)
           << " vs " << fmt(t.expected) << "; ";
  }
  const PowerCell* strong = find_cell(cells, Model::M2, 6.0, 0.5, 200);
  if (!strong) return fail("missing cell in the study grid");
  for (double rate : strong->result.rejection_rate) {
    if (rate < 0.99) {
      return fail("M2 n=200 sigma=0.5 rho=6: rate " + fmt(rate) + " < 0.99");
    }
  }
  detail << "M2 n=200 rho=6: all >= 0.99";
  return pass(detail.str());
}

std::pair<Outcome, std::string> criterion_power_ordering(
    const std::vector<PowerCell>& cells) {
  struct Key {
    Model model;
    double sigma;
    int n;
  };
  std::vector<Key> groups;
  for (const PowerCell& cell : cells) {
    bool seen = false;
    for (const Key& key : groups) {
      seen |= key.model == cell.model && key.sigma == cell.sigma &&
              key.n == cell.n;
    }
    if (!seen) groups.push_back({cell.model, cell.sigma, cell.n});
  }
  for (const Key& key : groups) {
    const PowerCell* r1 = find_cell(cells, key.model, 1.0, key.sigma, key.n);
    const PowerCell* r2 = find_cell(cells, key.model, 2.0, key.sigma, key.n);
    const PowerCell* r6 = find_cell(cells, key.model, 6.0, key.sigma, key.n);
    if (!r1 || !r2 || !r6) return fail("incomplete rho ladder in a group");
    for (std::size_t g = 0; g < 3; ++g) {
      const double rate1 = r1->result.rejection_rate[g];
      const double rate2 = r2->result.rejection_rate[g];
      const double rate6 = r6->result.rejection_rate[g];
      if (!(rate6 >= rate2 && rate2 >= rate1 - 0.02)) {
        return fail(std::string(to_string(key.model)) + " sigma=" +
                    fmt(key.sigma) + " n=" + std::to_string(key.n) +
                    " gamma #" + std::to_string(g) + ": " + fmt(rate6) + ", " +
                    fmt(rate2) + ", " + fmt(rate1));
      }
    }
  }
  return pass(std::to_string(groups.size()) +
              " scenario groups, all levels ordered in rho");
}

// ---- 6. discards shrink with the sample size -------------------------------

std::pair<Outcome, std::string> criterion_discard_trend(int trials) {
  int favourable = 0;
  std::ostringstream detail;
  for (int rep = 0; rep < 10; ++rep) {
    int pooled[2] = {0, 0};  // n = 100, 200
    for (int ni = 0; ni < 2; ++ni) {
      const int n = ni == 0 ? 100 : 200;
      int rho_index = 0;
      for (double rho : {1.0, 2.0, 6.0}) {
        McScenario scenario;
        scenario.model = Model::M1;
        scenario.rho = rho;
        scenario.sigma = 1.0;
        scenario.n = n;
        const std::uint64_t seed = derived_seed(
            kAccSeed, kDiscardTag,
            static_cast<std::uint64_t>(rep * 100 + ni * 10 + rho_index++));
        for (int t = 0; t < trials; ++t) {
          Engine rng = make_stream(seed, kTrialStream, t);
          const TruncatedSample sample = draw_truncated_sample(scenario, rng);
          auto [fit, diag] = fit_npmle(sample);
          if (diag.status != FitStatus::Converged) ++pooled[ni];
        }
      }
    }
    if (pooled[1] <= pooled[0]) ++favourable;
    detail << pooled[0] << "/" << pooled[1] << " ";
  }
  if (favourable < 8) {
    return fail("n=200 beat n=100 in only " + std::to_string(favourable) +
                "/10 seed replications (n100/n200 pooled: " + detail.str() + ")");
  }
  return pass("n=200 <= n=100 in " + std::to_string(favourable) +
              "/10 replications (pooled n100/n200: " + detail.str() + ")");
}

// ---- 7. real-data golden numbers (optional files) ---------------------------

struct GoldenChecks {
  std::string file;
  double d_n, d_n_tol;
  double p_lo, p_hi;
  bool expect_removed_resamples;
  double se_max_lo, se_max_hi;  // 0/inf bounds disable a side
  double one_minus_alpha, alpha_tol;  // alpha_tol 0 disables
};

std::pair<Outcome, std::string> check_golden(const std::string& dir,
                                             const GoldenChecks& want) {
  const std::string path = dir + "/" + want.file;
  const ValidationResult loaded = validate_sample(read_dataset(path));
  const TruncatedSample& sample = loaded.sample;

  const BiasTestReport test = bootstrap_test(sample, 500, kAccSeed);
  std::ostringstream detail;
  detail << "n=" << sample.size() << " d_n=" << fmt(test.d_n)
         << " p=" << fmt(test.p_value) << " b_used=" << test.b_used;

  if (std::fabs(test.d_n - want.d_n) > want.d_n_tol) {
    return fail(detail.str() + "; d_n outside " + fmt(want.d_n) + " +/- " +
                fmt(want.d_n_tol));
  }
  if (test.p_value < want.p_lo || test.p_value > want.p_hi) {
    return fail(detail.str() + "; p outside [" + fmt(want.p_lo) + ", " +
                fmt(want.p_hi) + "]");
  }
  if (want.expect_removed_resamples && test.b_used >= test.b_requested) {
    return fail(detail.str() + "; expected some resamples to be removed");
  }
  if (want.alpha_tol > 0.0 &&
      std::fabs((1.0 - test.alpha_n) - want.one_minus_alpha) > want.alpha_tol) {
    return fail(detail.str() + "; 1 - alpha_n = " + fmt(1.0 - test.alpha_n) +
                " outside " + fmt(want.one_minus_alpha) + " +/- " +
                fmt(want.alpha_tol));
  }

  const SeRatioCurve curve = se_ratio(sample, 500, kAccSeed);
  double max_ratio = 0.0;
  for (double r : curve.ratio) max_ratio = std::max(max_ratio, r);
  detail << " max_se_ratio=" << fmt(max_ratio);
  if (max_ratio <= want.se_max_lo || max_ratio >= want.se_max_hi) {
    return fail(detail.str() + "; SE ratio bound violated");
  }
  return pass(detail.str());
}

void criterion_real_data(const std::string& dir, bool smoke) {
  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<GoldenChecks> wants = {
      {"childcancer.csv", 0.0206, 0.002, 0.85, 0.97, false, 2.5, 4.5, 0.7557,
       0.001},
      {"pdearly.csv", 0.2612, 0.005, 0.02, 0.09, false, 0.0, inf, 0.0, 0.0},
      {"pdlate.csv", 0.7929, 0.005, 0.0, 0.02, true, 10.0, inf, 0.0, 0.0},
  };
  for (const GoldenChecks& want : wants) {
    const std::string title = "real data: " + want.file;
    if (smoke) {
      report(7, title, Outcome::Skip, "smoke mode");
      continue;
    }
    if (!std::filesystem::exists(dir + "/" + want.file)) {
      report(7, title, Outcome::Skip,
             "file not present under --data-dir; export it to enable this check");
      continue;
    }
    run(7, title, [&] { return check_golden(dir, want); });
  }
}

// ---- 8. invariant bundle -----------------------------------------------------

std::pair<Outcome, std::string> criterion_invariants() {
  // CDF shape on fitted and raw weight vectors.
  for (int rep = 0; rep < 10; ++rep) {
    const TruncatedSample sample = draw_fixture(
        Model::M1, 2.0 + rep % 3, 1.0, 25, derived_seed(kAccSeed, 8, rep));
    auto [fit, diag] = fit_npmle(sample);
    if (diag.status != FitStatus::Converged) continue;
    const WeightedCDF cdf = npmle_cdf(fit, sample);
    double prev = 0.0;
    for (double x : cdf.points()) {
      const double now = cdf(x);
      if (now < prev) return fail("CDF decreased");
      prev = now;
    }
    if (cdf(cdf.points().back()) != 1.0) return fail("CDF does not end at 1");

    // Self-consistency at the fixed point, via the dense-matrix oracle.
    const std::vector<double> g = oracle::dense_g(sample, fit.k_weights);
    double inv_sum = 0.0;
    for (double gi : g) inv_sum += 1.0 / gi;
    for (std::size_t i = 0; i < sample.size(); ++i) {
      if (std::fabs(fit.f_weights[i] - (1.0 / g[i]) / inv_sum) > 1e-8) {
        return fail("self-consistency residual in f");
      }
    }
    const std::vector<double> h = oracle::dense_h(sample, fit.f_weights);
    double hinv_sum = 0.0;
    for (double hj : h) hinv_sum += 1.0 / hj;
    for (std::size_t j = 0; j < sample.size(); ++j) {
      if (std::fabs(fit.k_weights[j] - (1.0 / h[j]) / hinv_sum) > 1e-6) {
        return fail("self-consistency residual in k");
      }
    }

    // Weight closure and the observation-probability identity.
    double f_total = 0.0;
    for (double f : fit.f_weights) f_total += f;
    if (std::fabs(f_total - 1.0) > 1e-8) return fail("f weights do not close");
    if (std::fabs(fit.alpha_n * inv_sum / sample.size() - 1.0) > 1e-8) {
      return fail("alpha_n identity violated");
    }
  }

  // Likelihood ascent.
  {
    const TruncatedSample sample =
        draw_fixture(Model::M2, 6.0, 0.5, 40, derived_seed(kAccSeed, 8, 100));
    FitOptions options;
    options.record_loglik = true;
    auto [fit, diag] = fit_npmle(sample, options);
    for (std::size_t s = 1; s < diag.loglik.size(); ++s) {
      if (diag.loglik[s] < diag.loglik[s - 1] - 1e-10) {
        return fail("log-likelihood decreased at sweep " + std::to_string(s));
      }
    }
  }

  // Determinism and serial/parallel equality.
  {
    const TruncatedSample sample =
        draw_fixture(Model::M1, 4.0, 1.0, 40, derived_seed(kAccSeed, 8, 101));
    const BiasTestReport once = bootstrap_test(sample, 40, kAccSeed);
    const BiasTestReport twice = bootstrap_test(sample, 40, kAccSeed);
    if (once.p_value != twice.p_value ||
        once.bootstrap_stats != twice.bootstrap_stats) {
      return fail("bootstrap_test is not deterministic under a fixed seed");
    }
    BootstrapOptions threaded;
    threaded.threads = 4;
    const BiasTestReport par = bootstrap_test(sample, 40, kAccSeed, threaded);
    if (once.p_value != par.p_value ||
        once.bootstrap_stats != par.bootstrap_stats) {
      return fail("bootstrap_test differs between serial and parallel runs");
    }

    McScenario scenario;
    scenario.model = Model::M1;
    scenario.rho = 6.0;
    scenario.sigma = 1.0;
    scenario.n = 30;
    scenario.b = 10;
    scenario.trials = 8;
    scenario.seed = kAccSeed;
    scenario.threads = 1;
    const McResult serial = run_monte_carlo(scenario);
    scenario.threads = 4;
    const McResult parallel = run_monte_carlo(scenario);
    if (serial.rejection_rate != parallel.rejection_rate ||
        serial.trials_used != parallel.trials_used ||
        serial.mean_b_used != parallel.mean_b_used) {
      return fail("run_monte_carlo differs between serial and parallel runs");
    }
  }

  return pass("CDF shape, fixed point, closure, ascent, determinism, thread-count invariance");
}

}  // namespace

int main(int argc, char** argv) {
  bool smoke = false;
  std::string data_dir = "data";
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--smoke") {
      smoke = true;
    } else if (arg == "--data-dir" && i + 1 < argc) {
      data_dir = argv[++i];
    } else {
      std::cerr << "usage: dtbias_acceptance [--smoke] [--data-dir PATH]\n";
      return 64;
    }
  }

  std::printf("acceptance suite (%s scale)\n", smoke ? "smoke" : "full");

  run(1, "NPMLE equals the brute-force likelihood maximizer (n = 3..5)",
      criterion_oracle);
  run(2, "untruncated data: statistic and bootstrap identically zero, p = 1",
      criterion_null_identity);
  run(3, "analytic sampling probability matches Monte Carlo; flat at rho = 1",
      criterion_analytic_g);

  std::vector<PowerCell> cells;
  if (smoke) {
    run(4, "power study (smoke preset: trials=50, B=200; ordering only)", [&] {
      cells = run_power_grid_smoke(50, 200);
      return criterion_power_ordering(cells);
    });
    report(5, "power ordering across rho", Outcome::Pass,
           "covered by the smoke power study above");
  } else {
    run(4, "rejection rates at desk scale (trials=300, B=500)", [&] {
      cells = run_power_grid(300, 500);
      return criterion_power_values(cells);
    });
    run(5, "power ordering across rho",
        [&] { return criterion_power_ordering(cells); });
  }

  if (smoke) {
    report(6, "discard counts shrink from n=100 to n=200", Outcome::Skip,
           "smoke mode");
  } else {
    run(6, "discard counts shrink from n=100 to n=200",
        [&] { return criterion_discard_trend(300); });
  }

  criterion_real_data(data_dir, smoke);

  run(8, "invariant bundle", criterion_invariants);

  std::printf("acceptance: %d passed, %d failed, %d skipped\n", tally.pass,
              tally.fail, tally.skip);
  return tally.fail;
}

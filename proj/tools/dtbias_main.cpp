#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "dtbias/biastest.hpp"
#include "dtbias/dataset.hpp"
#include "dtbias/errors.hpp"
#include "dtbias/npmle.hpp"
#include "dtbias/report.hpp"
#include "dtbias/rng.hpp"
#include "dtbias/sample.hpp"
#include "dtbias/simulate.hpp"

namespace {

using namespace dtbias;

constexpr std::uint64_t kCellStream = 0xce11;

// Exit codes: 0 = completed, 2 = input error, 3 = estimation failure.
// Test decisions (reject/accept) are data, never exit codes.
enum ExitCode { kOk = 0, kInputError = 2, kEstimationError = 3 };

int fail(int code, const std::string& type, const std::string& message) {
  std::cerr << format_error_record(type, message);
  return code;
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const DatasetError& e) {
    return fail(kInputError, "dataset_error", e.what());
  } catch (const EmptyInput& e) {
    return fail(kInputError, "empty_input", e.what());
  } catch (const AllRowsInvalid& e) {
    return fail(kInputError, "all_rows_invalid", e.what());
  } catch (const TruncationViolation& e) {
    return fail(kInputError, "truncation_violation", e.what());
  } catch (const UnsupportedLaw& e) {
    return fail(kInputError, "unsupported_law", e.what());
  } catch (const DomainError& e) {
    return fail(kInputError, "domain_error", e.what());
  } catch (const OriginalFitFailed& e) {
    return fail(kEstimationError, "fit_failed", e.what());
  } catch (const NotConverged& e) {
    return fail(kEstimationError, "fit_failed", e.what());
  } catch (const AllReplicatesFailed& e) {
    return fail(kEstimationError, "all_replicates_failed", e.what());
  } catch (const AllTrialsDiscarded& e) {
    return fail(kEstimationError, "all_trials_discarded", e.what());
  } catch (const Error& e) {
    return fail(kEstimationError, "error", e.what());
  } catch (const std::exception& e) {
    return fail(kEstimationError, "internal_error", e.what());
  }
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DatasetError("cannot open output file: " + path);
  out << content;
  if (!out) throw DatasetError("cannot write output file: " + path);
}

struct CommonOptions {
  std::string input;
  std::string out;
  std::string format = "json";
  double tol = 1e-8;
  int max_iter = 10000;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool needs_input) {
  auto* input = cmd->add_option("--input", opt.input,
                                "dataset file (delimited text, header x,u,v)");
  if (needs_input) input->required();
  cmd->add_option("--out", opt.out, "output file (default: stdout)");
  cmd->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--tol", opt.tol, "NPMLE convergence tolerance")
      ->capture_default_str();
  cmd->add_option("--max-iter", opt.max_iter, "NPMLE iteration cap")
      ->capture_default_str();
}

ValidationResult load(const CommonOptions& opt) {
  return validate_sample(read_dataset(opt.input));
}

int cmd_fit(const CommonOptions& opt, const std::string& plot_path) {
  const ValidationResult loaded = load(opt);
  const TruncatedSample& sample = loaded.sample;

  FitOptions fit_options;
  fit_options.tol = opt.tol;
  fit_options.max_iter = opt.max_iter;
  auto [fit, diag] = fit_npmle(sample, fit_options);
  if (diag.status != FitStatus::Converged) {
    throw NotConverged(std::string("NPMLE fit failed: ") +
                       to_string(diag.status));
  }

  FitReport report;
  report.n = sample.size();
  report.dropped_missing = loaded.dropped_missing;
  report.tol = opt.tol;
  report.max_iter = opt.max_iter;
  report.fit = std::move(fit);
  report.diagnostics = std::move(diag);
  report.xs = sample.xs();

  if (opt.format == "csv") {
    std::ostringstream out;
    write_fit_csv(out, report);
    write_output(opt.out, out.str());
  } else {
    write_output(opt.out, to_json(report));
  }
  if (!plot_path.empty()) {
    std::ostringstream plot;
    write_fit_plot_data(plot, report, sample);
    write_output(plot_path, plot.str());
  }
  return kOk;
}

int cmd_test(const CommonOptions& opt, int b, std::uint64_t seed,
             bool with_se_ratio, int threads) {
  const ValidationResult loaded = load(opt);
  const TruncatedSample& sample = loaded.sample;

  BootstrapOptions boot;
  boot.fit.tol = opt.tol;
  boot.fit.max_iter = opt.max_iter;
  boot.threads = threads;

  TestReport report;
  report.n = sample.size();
  report.dropped_missing = loaded.dropped_missing;
  report.tol = opt.tol;
  report.max_iter = opt.max_iter;
  report.test = bootstrap_test(sample, b, seed, boot);
  if (with_se_ratio) {
    report.se = se_ratio(sample, b, seed, boot);
  }

  if (opt.format == "csv") {
    std::ostringstream out;
    write_test_csv(out, report);
    write_output(opt.out, out.str());
  } else {
    write_output(opt.out, to_json(report));
  }
  return kOk;
}

struct SimulateOptions {
  std::vector<std::string> models = {"M1"};
  std::vector<double> rhos = {1.0};
  std::vector<double> sigmas = {1.0};
  std::vector<int> ns = {100};
  std::string target = "uniform";
  std::vector<double> gammas = {0.10, 0.05, 0.01};
  int b = 500;
  int trials = 1000;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string preset;
  std::string g_curves_path;
  int g_grid = 101;
};

int cmd_simulate(const CommonOptions& opt, const SimulateOptions& sim) {
  std::vector<Model> models;
  for (const std::string& name : sim.models) {
    models.push_back(model_from_string(name));
  }
  const TargetLaw target = target_law_from_string(sim.target);

  if (!sim.g_curves_path.empty()) {
    std::ostringstream curves;
    write_g_curves(curves, models, sim.rhos, sim.sigmas, sim.g_grid);
    write_output(sim.g_curves_path, curves.str());
  }
  if (sim.preset == "fig1") {
    // Figure preset: analytic curves only, no Monte Carlo.
    std::ostringstream curves;
    write_g_curves(curves, models, sim.rhos, sim.sigmas, sim.g_grid);
    write_output(opt.out, curves.str());
    return kOk;
  }

  SimReport report;
  std::uint64_t cell_index = 0;
  for (Model model : models) {
    for (double sigma : sim.sigmas) {
      for (double rho : sim.rhos) {
        for (int n : sim.ns) {
          McScenario scenario;
          scenario.model = model;
          scenario.rho = rho;
          scenario.sigma = sigma;
          scenario.n = n;
          scenario.target = target;
          scenario.gammas = sim.gammas;
          scenario.b = sim.b;
          scenario.trials = sim.trials;
          scenario.seed = derived_seed(sim.seed, kCellStream, cell_index++);
          scenario.fit.tol = opt.tol;
          scenario.fit.max_iter = opt.max_iter;
          scenario.threads = sim.threads;

          SimCell cell;
          cell.model = model;
          cell.rho = rho;
          cell.sigma = sigma;
          cell.n = n;
          cell.target = target.name();
          cell.trials = sim.trials;
          cell.b = sim.b;
          cell.seed = scenario.seed;
          try {
            cell.result = run_monte_carlo(scenario);
          } catch (const AllTrialsDiscarded&) {
            cell.failed = true;  // keep going; the cell itself is the finding
            cell.result.gammas = sim.gammas;
            cell.result.trials_discarded = sim.trials;
          }
          report.cells.push_back(std::move(cell));
        }
      }
    }
  }

  if (opt.format == "csv") {
    std::ostringstream out;
    write_sim_csv(out, report);
    write_output(opt.out, out.str());
  } else {
    write_output(opt.out, to_json(report));
  }
  return kOk;
}

int cmd_validate(const CommonOptions& opt) {
  const std::vector<RawRecord> rows = read_dataset(opt.input);
  const ValidationResult result = validate_sample(rows);
  std::ostringstream out;
  out << "{\"rows\": " << rows.size()
      << ", \"n\": " << result.sample.size()
      << ", \"dropped_missing\": " << result.dropped_missing << "}\n";
  write_output(opt.out, out.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Nonparametric inference under double truncation: NPMLE fit, "
      "sampling-bias test, and Monte Carlo study"};
  app.require_subcommand(1);

  CommonOptions fit_opt;
  std::string plot_path;
  CLI::App* fit = app.add_subcommand(
      "fit", "Estimate the NPMLE and the sampling probabilities");
  add_common(fit, fit_opt, true);
  fit->add_option("--plot-data", plot_path,
                  "also write long-format plot data (series,x,value)");

  CommonOptions test_opt;
  int test_b = 500;
  std::uint64_t test_seed = 0;
  bool with_se_ratio = false;
  int test_threads = 0;
  CLI::App* test = app.add_subcommand(
      "test", "Bootstrap test for ignorable sampling bias");
  add_common(test, test_opt, true);
  test->add_option("--b", test_b, "bootstrap replicates")->capture_default_str();
  test->add_option("--seed", test_seed, "RNG seed")->required();
  test->add_flag("--se-ratio", with_se_ratio,
                 "include the bootstrap/binomial SE-ratio curve");
  test->add_option("--threads", test_threads,
                   "worker threads (0 = hardware default)");

  CommonOptions sim_opt;
  SimulateOptions sim;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo rejection-rate study over a scenario grid");
  add_common(simulate, sim_opt, false);
  auto* model_opt =
      simulate->add_option("--model", sim.models, "models (M1, M2)");
  auto* rho_opt = simulate->add_option("--rho", sim.rhos, "sampling-bias exponents");
  auto* sigma_opt =
      simulate->add_option("--sigma", sim.sigmas, "truncation-width parameters");
  auto* n_opt = simulate->add_option("--n", sim.ns, "sample sizes");
  auto* target_opt = simulate->add_option(
      "--target", sim.target, "target law: uniform or beta(a,b)");
  auto* gammas_opt =
      simulate->add_option("--gammas", sim.gammas, "test levels");
  auto* b_opt =
      simulate->add_option("--b", sim.b, "bootstrap replicates per trial");
  auto* trials_opt = simulate->add_option("--trials", sim.trials, "Monte Carlo trials");
  simulate->add_option("--seed", sim.seed, "RNG seed")->required();
  simulate->add_option("--threads", sim.threads,
                       "worker threads (0 = hardware default)");
  simulate->add_option("--preset", sim.preset,
                       "scenario preset; explicit flags override its values")
      ->check(CLI::IsMember({"table1", "fig1", "smoke"}));
  simulate->add_option("--g-curves", sim.g_curves_path,
                       "also write analytic G(x) curves for the grid");
  simulate->add_option("--g-grid", sim.g_grid,
                       "grid points for analytic curves")
      ->capture_default_str();

  CommonOptions validate_opt;
  CLI::App* validate = app.add_subcommand(
      "validate", "Check a dataset file and report row counts");
  add_common(validate, validate_opt, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      return app.exit(e);
    }
    std::cerr << format_error_record("usage", e.what());
    return kInputError;
  }

  // Presets fill in whatever the user did not set explicitly.
  if (simulate->parsed() && !sim.preset.empty()) {
    if (sim.preset == "table1" || sim.preset == "fig1") {
      if (!model_opt->count()) sim.models = {"M1", "M2"};
      if (!rho_opt->count()) sim.rhos = {1.0, 2.0, 6.0};
      if (!sigma_opt->count()) sim.sigmas = {1.0, 0.5};
      if (!n_opt->count() && sim.preset == "table1") sim.ns = {100, 200};
    } else if (sim.preset == "smoke") {
      if (!model_opt->count()) sim.models = {"M1"};
      if (!rho_opt->count()) sim.rhos = {1.0, 2.0, 6.0};
      if (!sigma_opt->count()) sim.sigmas = {1.0};
      if (!n_opt->count()) sim.ns = {100};
      if (!trials_opt->count()) sim.trials = 50;
      if (!b_opt->count()) sim.b = 200;
    }
    (void)target_opt;
    (void)gammas_opt;
  }

  if (fit->parsed()) {
    return run_guarded([&] { return cmd_fit(fit_opt, plot_path); });
  }
  if (test->parsed()) {
    return run_guarded([&] {
      return cmd_test(test_opt, test_b, test_seed, with_se_ratio, test_threads);
    });
  }
  if (simulate->parsed()) {
    return run_guarded([&] { return cmd_simulate(sim_opt, sim); });
  }
  return run_guarded([&] { return cmd_validate(validate_opt); });
}

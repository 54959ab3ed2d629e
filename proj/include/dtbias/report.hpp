#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dtbias/biastest.hpp"
#include "dtbias/npmle.hpp"
#include "dtbias/simulate.hpp"

namespace dtbias {

// Serialized results carry no timestamps, so identical inputs produce
// byte-identical files and a report re-read by the tool reproduces the same
// numbers bit for bit.

struct FitReport {
  std::size_t n = 0;
  std::size_t dropped_missing = 0;
  double tol = 1e-8;
  int max_iter = 10000;
  NpmleFit fit;
  FitDiagnostics diagnostics;
  std::vector<double> xs;  // input order, echoed for plot emission
};

struct TestReport {
  std::size_t n = 0;
  std::size_t dropped_missing = 0;
  double tol = 1e-8;
  int max_iter = 10000;
  BiasTestReport test;
  std::optional<SeRatioCurve> se;
};

struct SimCell {
  Model model = Model::M1;
  double rho = 1.0;
  double sigma = 1.0;
  int n = 0;
  std::string target;
  int trials = 0;
  int b = 0;
  std::uint64_t seed = 0;
  bool failed = false;  // every trial discarded
  McResult result;
};

struct SimReport {
  std::vector<SimCell> cells;
};

std::string to_json(const FitReport& report);
std::string to_json(const TestReport& report);
std::string to_json(const SimReport& report);

FitReport fit_report_from_json(const std::string& text);
TestReport test_report_from_json(const std::string& text);
SimReport sim_report_from_json(const std::string& text);

void write_fit_csv(std::ostream& out, const FitReport& report);
void write_test_csv(std::ostream& out, const TestReport& report);
void write_sim_csv(std::ostream& out, const SimReport& report);

// Long-format plot data (series,x,value) for the goodness-of-fit panels:
// F_n, F_n_star and G_n over the distinct X's plus the constant alpha_n.
void write_fit_plot_data(std::ostream& out, const FitReport& report,
                         const TruncatedSample& sample);

// Analytic sampling-probability curves G(x) on a regular grid, one series
// per (model, rho, sigma) combination.
void write_g_curves(std::ostream& out, const std::vector<Model>& models,
                    const std::vector<double>& rhos,
                    const std::vector<double>& sigmas, int grid_points);

std::string format_error_record(const std::string& type,
                                const std::string& message);

}  // namespace dtbias

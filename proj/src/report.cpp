#include "dtbias/report.hpp"

#include <charconv>
#include <cstdio>
#include <ostream>
#include <string>
#include <system_error>

#include "json.hpp"

namespace dtbias {

namespace {

using Json = nlohmann::ordered_json;

// Shortest decimal that round-trips to the same double, for CSV cells.
std::string fmt_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

FitStatus status_from_string(const std::string& s) {
  if (s == "converged") return FitStatus::Converged;
  if (s == "max_iterations_exceeded") return FitStatus::MaxIterationsExceeded;
  if (s == "degenerate_weights") return FitStatus::DegenerateWeights;
  throw DatasetError("unknown fit status in report: " + s);
}

Json fit_payload(const NpmleFit& fit, const FitDiagnostics& diag) {
  Json j;
  j["status"] = to_string(diag.status);
  j["iterations"] = fit.iterations;
  j["final_delta"] = diag.final_delta;
  j["alpha_n"] = fit.alpha_n;
  j["min_g"] = fit.min_g;
  j["degenerate_indices"] = diag.degenerate_indices;
  j["loglik"] = diag.loglik;
  j["f_weights"] = fit.f_weights;
  j["k_weights"] = fit.k_weights;
  j["g_at_x"] = fit.g_at_x;
  return j;
}

void fit_payload_from(const Json& j, NpmleFit& fit, FitDiagnostics& diag) {
  diag.status = status_from_string(j.at("status").get<std::string>());
  fit.iterations = j.at("iterations").get<int>();
  diag.final_delta = j.at("final_delta").get<double>();
  fit.alpha_n = j.at("alpha_n").get<double>();
  fit.min_g = j.at("min_g").get<double>();
  diag.degenerate_indices =
      j.at("degenerate_indices").get<std::vector<std::size_t>>();
  diag.loglik = j.at("loglik").get<std::vector<double>>();
  fit.f_weights = j.at("f_weights").get<std::vector<double>>();
  fit.k_weights = j.at("k_weights").get<std::vector<double>>();
  fit.g_at_x = j.at("g_at_x").get<std::vector<double>>();
  fit.converged = diag.status == FitStatus::Converged;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DatasetError(std::string("malformed report JSON: ") + e.what());
  }
}

void expect_kind(const Json& j, const std::string& kind) {
  if (!j.is_object() || j.value("report", "") != kind) {
    throw DatasetError("not a '" + kind + "' report");
  }
}

}  // namespace

std::string to_json(const FitReport& report) {
  Json j;
  j["report"] = "fit";
  j["n"] = report.n;
  j["dropped_missing"] = report.dropped_missing;
  j["tol"] = report.tol;
  j["max_iter"] = report.max_iter;
  j["fit"] = fit_payload(report.fit, report.diagnostics);
  j["xs"] = report.xs;
  return j.dump(2) + "\n";
}

FitReport fit_report_from_json(const std::string& text) {
  const Json j = parse(text);
  expect_kind(j, "fit");
  FitReport report;
  try {
    report.n = j.at("n").get<std::size_t>();
    report.dropped_missing = j.at("dropped_missing").get<std::size_t>();
    report.tol = j.at("tol").get<double>();
    report.max_iter = j.at("max_iter").get<int>();
    fit_payload_from(j.at("fit"), report.fit, report.diagnostics);
    report.xs = j.at("xs").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw DatasetError(std::string("incomplete fit report: ") + e.what());
  }
  return report;
}

std::string to_json(const TestReport& report) {
  Json j;
  j["report"] = "test";
  j["n"] = report.n;
  j["dropped_missing"] = report.dropped_missing;
  j["tol"] = report.tol;
  j["max_iter"] = report.max_iter;
  j["d_n"] = report.test.d_n;
  j["p_value"] = report.test.p_value;
  j["b_requested"] = report.test.b_requested;
  j["b_used"] = report.test.b_used;
  j["alpha_n"] = report.test.alpha_n;
  j["seed"] = report.test.seed;
  j["bootstrap_stats"] = report.test.bootstrap_stats;
  if (report.se) {
    Json se;
    se["b"] = report.se->b;
    se["points"] = report.se->points;
    se["ratio"] = report.se->ratio;
    j["se_ratio"] = se;
  }
  return j.dump(2) + "\n";
}

TestReport test_report_from_json(const std::string& text) {
  const Json j = parse(text);
  expect_kind(j, "test");
  TestReport report;
  try {
    report.n = j.at("n").get<std::size_t>();
    report.dropped_missing = j.at("dropped_missing").get<std::size_t>();
    report.tol = j.at("tol").get<double>();
    report.max_iter = j.at("max_iter").get<int>();
    report.test.d_n = j.at("d_n").get<double>();
    report.test.p_value = j.at("p_value").get<double>();
    report.test.b_requested = j.at("b_requested").get<int>();
    report.test.b_used = j.at("b_used").get<int>();
    report.test.alpha_n = j.at("alpha_n").get<double>();
    report.test.seed = j.at("seed").get<std::uint64_t>();
    report.test.bootstrap_stats =
        j.at("bootstrap_stats").get<std::vector<double>>();
    if (j.contains("se_ratio")) {
      SeRatioCurve se;
      se.b = j.at("se_ratio").at("b").get<int>();
      se.points = j.at("se_ratio").at("points").get<std::vector<double>>();
      se.ratio = j.at("se_ratio").at("ratio").get<std::vector<double>>();
      report.se = std::move(se);
    }
  } catch (const nlohmann::json::exception& e) {
    throw DatasetError(std::string("incomplete test report: ") + e.what());
  }
  return report;
}

std::string to_json(const SimReport& report) {
  Json cells = Json::array();
  for (const SimCell& cell : report.cells) {
    Json c;
    c["model"] = to_string(cell.model);
    c["rho"] = cell.rho;
    c["sigma"] = cell.sigma;
    c["n"] = cell.n;
    c["target"] = cell.target;
    c["trials"] = cell.trials;
    c["b"] = cell.b;
    c["seed"] = cell.seed;
    c["failed"] = cell.failed;
    c["gammas"] = cell.result.gammas;
    c["rejection_rate"] = cell.result.rejection_rate;
    c["trials_used"] = cell.result.trials_used;
    c["trials_discarded"] = cell.result.trials_discarded;
    c["mean_b_used"] = cell.result.mean_b_used;
    cells.push_back(std::move(c));
  }
  Json j;
  j["report"] = "simulate";
  j["cells"] = std::move(cells);
  return j.dump(2) + "\n";
}

SimReport sim_report_from_json(const std::string& text) {
  const Json j = parse(text);
  expect_kind(j, "simulate");
  SimReport report;
  try {
    for (const Json& c : j.at("cells")) {
      SimCell cell;
      cell.model = model_from_string(c.at("model").get<std::string>());
      cell.rho = c.at("rho").get<double>();
      cell.sigma = c.at("sigma").get<double>();
      cell.n = c.at("n").get<int>();
      cell.target = c.at("target").get<std::string>();
      cell.trials = c.at("trials").get<int>();
      cell.b = c.at("b").get<int>();
      cell.seed = c.at("seed").get<std::uint64_t>();
      cell.failed = c.at("failed").get<bool>();
      cell.result.gammas = c.at("gammas").get<std::vector<double>>();
      cell.result.rejection_rate =
          c.at("rejection_rate").get<std::vector<double>>();
      cell.result.trials_used = c.at("trials_used").get<int>();
      cell.result.trials_discarded = c.at("trials_discarded").get<int>();
      cell.result.mean_b_used = c.at("mean_b_used").get<double>();
      report.cells.push_back(std::move(cell));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DatasetError(std::string("incomplete simulation report: ") + e.what());
  }
  return report;
}

void write_fit_csv(std::ostream& out, const FitReport& report) {
  out << "i,x,f,k,g,alpha_n,status,iterations\n";
  const std::string alpha = fmt_double(report.fit.alpha_n);
  const char* status = to_string(report.diagnostics.status);
  for (std::size_t i = 0; i < report.xs.size(); ++i) {
    out << i << ',' << fmt_double(report.xs[i]) << ','
        << fmt_double(report.fit.f_weights[i]) << ','
        << fmt_double(report.fit.k_weights[i]) << ','
        << fmt_double(report.fit.g_at_x[i]) << ',' << alpha << ',' << status
        << ',' << report.fit.iterations << '\n';
  }
}

void write_test_csv(std::ostream& out, const TestReport& report) {
  out << "field,index,value\n";
  auto scalar = [&](const char* name, double v) {
    out << name << ",," << fmt_double(v) << '\n';
  };
  out << "n,," << report.n << '\n';
  out << "dropped_missing,," << report.dropped_missing << '\n';
  scalar("d_n", report.test.d_n);
  scalar("p_value", report.test.p_value);
  out << "b_requested,," << report.test.b_requested << '\n';
  out << "b_used,," << report.test.b_used << '\n';
  scalar("alpha_n", report.test.alpha_n);
  out << "seed,," << report.test.seed << '\n';
  for (std::size_t r = 0; r < report.test.bootstrap_stats.size(); ++r) {
    out << "bootstrap_stat," << r << ','
        << fmt_double(report.test.bootstrap_stats[r]) << '\n';
  }
  if (report.se) {
    for (std::size_t i = 0; i < report.se->points.size(); ++i) {
      out << "se_point," << i << ',' << fmt_double(report.se->points[i]) << '\n';
      out << "se_ratio," << i << ',' << fmt_double(report.se->ratio[i]) << '\n';
    }
  }
}

void write_sim_csv(std::ostream& out, const SimReport& report) {
  out << "model,rho,sigma,n,target,trials,b,seed,failed,gamma,"
         "rejection_rate,trials_used,trials_discarded,mean_b_used\n";
  for (const SimCell& cell : report.cells) {
    const std::string prefix = std::string(to_string(cell.model)) + ',' +
                               fmt_double(cell.rho) + ',' +
                               fmt_double(cell.sigma) + ',' +
                               std::to_string(cell.n) + ',' + cell.target +
                               ',' + std::to_string(cell.trials) + ',' +
                               std::to_string(cell.b) + ',' +
                               std::to_string(cell.seed) + ',' +
                               (cell.failed ? "true" : "false");
    if (cell.failed || cell.result.gammas.empty()) {
      out << prefix << ",,," << cell.result.trials_used << ','
          << cell.result.trials_discarded << ','
          << fmt_double(cell.result.mean_b_used) << '\n';
      continue;
    }
    for (std::size_t g = 0; g < cell.result.gammas.size(); ++g) {
      out << prefix << ',' << fmt_double(cell.result.gammas[g]) << ','
          << fmt_double(cell.result.rejection_rate[g]) << ','
          << cell.result.trials_used << ',' << cell.result.trials_discarded
          << ',' << fmt_double(cell.result.mean_b_used) << '\n';
    }
  }
}

void write_fit_plot_data(std::ostream& out, const FitReport& report,
                         const TruncatedSample& sample) {
  const WeightedCDF fn = npmle_cdf(report.fit, sample);
  const WeightedCDF star = ecdf(sample);
  const SamplingCurve g = sampling_curve(report.fit, sample);
  out << "series,x,value\n";
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    const std::string x = fmt_double(g.points[i]);
    out << "F_n," << x << ',' << fmt_double(fn(g.points[i])) << '\n';
    out << "F_n_star," << x << ',' << fmt_double(star(g.points[i])) << '\n';
    out << "G_n," << x << ',' << fmt_double(g.values[i]) << '\n';
    out << "alpha_n," << x << ',' << fmt_double(g.alpha) << '\n';
  }
}

void write_g_curves(std::ostream& out, const std::vector<Model>& models,
                    const std::vector<double>& rhos,
                    const std::vector<double>& sigmas, int grid_points) {
  if (grid_points < 2) throw DomainError("a curve needs at least 2 grid points");
  out << "series,x,value\n";
  for (Model model : models) {
    for (double sigma : sigmas) {
      for (double rho : rhos) {
        const std::string series = std::string(to_string(model)) +
                                   " rho=" + fmt_double(rho) +
                                   " sigma=" + fmt_double(sigma);
        for (int i = 0; i < grid_points; ++i) {
          const double x =
              static_cast<double>(i) / static_cast<double>(grid_points - 1);
          out << series << ',' << fmt_double(x) << ','
              << fmt_double(analytic_g(model, x, rho, sigma)) << '\n';
        }
      }
    }
  }
}

std::string format_error_record(const std::string& type,
                                const std::string& message) {
  Json j;
  j["error"]["type"] = type;
  j["error"]["message"] = message;
  return j.dump() + "\n";
}

}  // namespace dtbias

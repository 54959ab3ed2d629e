#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dtbias/biastest.hpp"
#include "dtbias/dataset.hpp"
#include "dtbias/errors.hpp"
#include "dtbias/npmle.hpp"
#include "dtbias/sample.hpp"
#include "dtbias/simulate.hpp"

namespace py = pybind11;

namespace {

using namespace dtbias;

TruncatedSample make_sample(const std::vector<double>& x,
                            const std::vector<double>& u,
                            const std::vector<double>& v) {
  if (x.size() != u.size() || x.size() != v.size()) {
    throw EmptyInput("x, u and v must have the same length");
  }
  std::vector<TruncatedObservation> rows;
  rows.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    rows.push_back({x[i], u[i], v[i]});
  }
  return TruncatedSample(std::move(rows));
}

FitOptions make_fit_options(double tol, int max_iter) {
  FitOptions options;
  options.tol = tol;
  options.max_iter = max_iter;
  return options;
}

py::dict fit_py(const std::vector<double>& x, const std::vector<double>& u,
                const std::vector<double>& v, double tol, int max_iter) {
  const TruncatedSample sample = make_sample(x, u, v);
  auto [fit, diag] = fit_npmle(sample, make_fit_options(tol, max_iter));
  py::dict out;
  out["f_weights"] = fit.f_weights;
  out["k_weights"] = fit.k_weights;
  out["g_at_x"] = fit.g_at_x;
  out["alpha_n"] = fit.alpha_n;
  out["iterations"] = fit.iterations;
  out["converged"] = fit.converged;
  out["min_g"] = fit.min_g;
  out["status"] = std::string(to_string(diag.status));
  out["final_delta"] = diag.final_delta;
  return out;
}

py::dict bias_test_py(const std::vector<double>& x,
                      const std::vector<double>& u,
                      const std::vector<double>& v, int b, std::uint64_t seed,
                      double tol, int max_iter, int threads) {
  const TruncatedSample sample = make_sample(x, u, v);
  BootstrapOptions options;
  options.fit = make_fit_options(tol, max_iter);
  options.threads = threads;
  const BiasTestReport report = bootstrap_test(sample, b, seed, options);
  py::dict out;
  out["d_n"] = report.d_n;
  out["p_value"] = report.p_value;
  out["b_requested"] = report.b_requested;
  out["b_used"] = report.b_used;
  out["alpha_n"] = report.alpha_n;
  out["seed"] = report.seed;
  out["bootstrap_stats"] = report.bootstrap_stats;
  return out;
}

py::dict se_ratio_py(const std::vector<double>& x,
                     const std::vector<double>& u,
                     const std::vector<double>& v, int b, std::uint64_t seed,
                     double tol, int max_iter, int threads) {
  const TruncatedSample sample = make_sample(x, u, v);
  BootstrapOptions options;
  options.fit = make_fit_options(tol, max_iter);
  options.threads = threads;
  const SeRatioCurve curve = se_ratio(sample, b, seed, options);
  py::dict out;
  out["points"] = curve.points;
  out["ratio"] = curve.ratio;
  out["b"] = curve.b;
  return out;
}

py::dict monte_carlo_py(const std::string& model, double rho, double sigma,
                        int n, const std::string& target,
                        const std::vector<double>& gammas, int b, int trials,
                        std::uint64_t seed, double tol, int max_iter,
                        int threads) {
  McScenario scenario;
  scenario.model = model_from_string(model);
  scenario.rho = rho;
  scenario.sigma = sigma;
  scenario.n = n;
  scenario.target = target_law_from_string(target);
  scenario.gammas = gammas;
  scenario.b = b;
  scenario.trials = trials;
  scenario.seed = seed;
  scenario.fit = make_fit_options(tol, max_iter);
  scenario.threads = threads;
  const McResult result = run_monte_carlo(scenario);
  py::dict out;
  out["gammas"] = result.gammas;
  out["rejection_rate"] = result.rejection_rate;
  out["trials_used"] = result.trials_used;
  out["trials_discarded"] = result.trials_discarded;
  out["mean_b_used"] = result.mean_b_used;
  return out;
}

py::dict load_dataset_py(const std::string& path) {
  const ValidationResult loaded = validate_sample(read_dataset(path));
  std::vector<double> x, u, v;
  for (const TruncatedObservation& obs : loaded.sample) {
    x.push_back(obs.x);
    u.push_back(obs.u);
    v.push_back(obs.v);
  }
  py::dict out;
  out["x"] = x;
  out["u"] = u;
  out["v"] = v;
  out["dropped_missing"] = loaded.dropped_missing;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "NPMLE and sampling-bias diagnostics for doubly truncated data";

  py::register_exception<Error>(m, "Error");

  m.def("fit", &fit_py, py::arg("x"), py::arg("u"), py::arg("v"),
        py::arg("tol") = 1e-8, py::arg("max_iter") = 10000,
        "Joint NPMLE of the target CDF and the truncation-limit law.");
  m.def("bias_test", &bias_test_py, py::arg("x"), py::arg("u"), py::arg("v"),
        py::arg("b") = 500, py::arg("seed") = 0, py::arg("tol") = 1e-8,
        py::arg("max_iter") = 10000, py::arg("threads") = 0,
        "Bootstrap sup-norm test for ignorable sampling bias.");
  m.def("se_ratio", &se_ratio_py, py::arg("x"), py::arg("u"), py::arg("v"),
        py::arg("b") = 500, py::arg("seed") = 0, py::arg("tol") = 1e-8,
        py::arg("max_iter") = 10000, py::arg("threads") = 0,
        "Bootstrap-vs-binomial standard error ratio at the distinct X's.");
  m.def("monte_carlo", &monte_carlo_py, py::arg("model"), py::arg("rho"),
        py::arg("sigma"), py::arg("n"), py::arg("target") = "uniform",
        py::arg("gammas") = std::vector<double>{0.10, 0.05, 0.01},
        py::arg("b") = 500, py::arg("trials") = 100, py::arg("seed") = 0,
        py::arg("tol") = 1e-8, py::arg("max_iter") = 10000,
        py::arg("threads") = 0,
        "Rejection rates of the bias test over simulated scenarios.");
  m.def("analytic_g",
        [](const std::string& model, double x, double rho, double sigma) {
          return analytic_g(model_from_string(model), x, rho, sigma);
        },
        py::arg("model"), py::arg("x"), py::arg("rho"), py::arg("sigma"),
        "Closed-form sampling probability P(U <= x <= V).");
  m.def("load_dataset", &load_dataset_py, py::arg("path"),
        "Read a delimited x,u,v file, dropping rows with missing fields.");
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mathieu/matcher.hpp"
#include "mathieu/oracle.hpp"
#include "mathieu/serialize.hpp"
#include "mathieu/verify.hpp"

namespace py = pybind11;
using namespace mathieu;

namespace {

py::dict result_dict(const FloquetResult& r) {
  py::dict d;
  d["nu"] = r.nu;
  d["method"] = r.method;
  d["stable"] = r.stable;
  d["est_error"] = r.est_error;
  d["nu_imag"] = r.nu_imag;
  d["band_edge"] = r.band_edge;
  d["warnings"] = r.warnings;
  return d;
}

FloquetResult floquet(double lambda, double q, const std::string& method, double tol, int eps_order) {
  if (method == "monodromy") return monodromy_nu({lambda, q, tol});
  if (method == "hill") return hill_nu(lambda, q);
  if (method == "wkb-alpha") return wkb_nu(Cycle::ALPHA, lambda, q, eps_order);
  if (method == "wkb-beta") return wkb_nu(Cycle::BETA, lambda, q, eps_order);
  throw std::invalid_argument("unknown method: " + method);
}

std::string series_json(const std::string& which, int order) {
  if (which == "eigen1") return to_json(small_q_series(order < 0 ? kSmallQOrder : order)).dump();
  if (which == "inverse") {
    int l = order < 0 ? kLambdaOrder : order;
    return to_json(invert_small_q(small_q_series(l <= kLambdaOrder ? 6 : 8), l)).dump();
  }
  if (which == "eigen2") return to_json(large_q_series(order < 0 ? kLargeQOrder : order)).dump();
  throw std::invalid_argument("unknown series: " + which);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Floquet exponents and eigenvalue series of the Mathieu equation";

  py::register_exception<SeriesDiverges>(m, "SeriesDiverges", PyExc_ArithmeticError);
  py::register_exception<NotConverged>(m, "NotConverged", PyExc_ArithmeticError);
  py::register_exception<IntegratorFailure>(m, "IntegratorFailure", PyExc_RuntimeError);

  m.def(
      "floquet_nu",
      [](double lambda, double q, const std::string& method, double tol, int eps_order) {
        FloquetResult r;
        {
          py::gil_scoped_release release;
          r = floquet(lambda, q, method, tol, eps_order);
        }
        return result_dict(r);
      },
      py::arg("lam"), py::arg("q"), py::arg("method") = "monodromy", py::arg("tol") = 1e-12,
      py::arg("eps_order") = 7);

  m.def(
      "characteristic_value",
      [](double nu, double q, int K) {
        py::gil_scoped_release release;
        return hill_char_value(nu, q, K).lambda;
      },
      py::arg("nu"), py::arg("q"), py::arg("K") = 40);

  m.def(
      "large_q_lambda", [](double nu, double q, int order) { return static_cast<double>(large_q_series(order).evaluate(nu, q)); },
      py::arg("nu"), py::arg("q"), py::arg("order") = kLargeQOrder);

  m.def("series_json", &series_json, py::arg("which"), py::arg("order") = -1);
  m.def("series_latex", [](const std::string& which, int order) {
    if (which == "eigen1") return to_latex(small_q_series(order < 0 ? kSmallQOrder : order));
    if (which == "eigen2") return to_latex(large_q_series(order < 0 ? kLargeQOrder : order));
    if (which == "inverse") return to_latex(invert_small_q(small_q_series(6), order < 0 ? kLambdaOrder : order));
    throw std::invalid_argument("unknown series: " + which);
  }, py::arg("which"), py::arg("order") = -1);

  m.def("operator_json", [](int m_) {
    if (m_ < 1 || m_ > 4) throw std::invalid_argument("m must be in 1..4");
    return to_json(operator_for(m_)).dump();
  }, py::arg("m"));

  m.def("determine_operator_json", [](int m_) {
    MatchPlan plan = match_plan(m_);
    EpsilonSeries target = invert_small_q(small_q_series(plan.order_q), plan.lambda_order).rows();
    return to_json(determine_operator(m_, target, normalized_alpha_base())).dump();
  }, py::arg("m"));

  m.def(
      "run_suite",
      [](const std::string& suite, double tol) {
        std::vector<CheckRecord> recs;
        {
          py::gil_scoped_release release;
          recs = run_suite(suite, tol);
        }
        py::list out;
        for (const auto& r : recs) out.append(py::str(to_json(r).dump()));
        return out;
      },
      py::arg("suite"), py::arg("tol") = 1e-5);

  m.attr("__version__") = "0.1.0";
}

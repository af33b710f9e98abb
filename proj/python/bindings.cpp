#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nevan/bounds.hpp"
#include "nevan/diffpoly.hpp"
#include "nevan/errors.hpp"
#include "nevan/io.hpp"
#include "nevan/model_text.hpp"
#include "nevan/nevanlinna.hpp"
#include "nevan/verify.hpp"

namespace py = pybind11;
using namespace nevan;

namespace {

py::dict report_dict(const CheckReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["grid"] = r.grid;
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["margins"] = r.margins;
  d["tolerances"] = r.tolerances;
  d["min_margin"] = r.min_margin;
  d["violations"] = r.violations;
  d["onset_radius"] = r.onset_radius;
  d["slope_fit"] = r.slope_fit;
  d["passed"] = r.passed;
  d["notes"] = r.notes;
  return d;
}

std::vector<double> grid_arg(double start, double stop, int count, bool log_spaced) {
  return make_grid(start, stop, count, log_spaced);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Nevanlinna characteristic and logarithmic-derivative bounds";

  static py::exception<Error> error(m, "NevanError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<FunctionModel>(m, "Model")
      .def(py::init([](const std::string& text) { return parse_model(text); }), py::arg("text"))
      .def("__repr__", [](const FunctionModel& f) { return "Model('" + to_text(f) + "')"; })
      .def("__str__", [](const FunctionModel& f) { return to_text(f); })
      .def("__call__", [](const FunctionModel& f, cplx z) { return eval(f, z); })
      .def("derivative", [](const FunctionModel& f, cplx z, int k) { return eval_derivative(f, z, k); },
           py::arg("z"), py::arg("order"))
      .def("log_abs", [](const FunctionModel& f, cplx z) { return log_abs(f, z); })
      .def("reciprocal", [](const FunctionModel& f) { return FunctionModel::reciprocal(f); })
      .def("poles", [](const FunctionModel& f, double r) {
        std::vector<std::pair<cplx, int>> out;
        for (const auto& p : poles_in_disc(f, r)) out.emplace_back(p.location, p.multiplicity);
        return out;
      })
      .def("zeros", [](const FunctionModel& f, double r, cplx a) {
        std::vector<std::pair<cplx, int>> out;
        for (const auto& p : zeros_in_disc(f, a, r)) out.emplace_back(p.location, p.multiplicity);
        return out;
      }, py::arg("r"), py::arg("a") = cplx(0.0));

  m.def("proximity", [](const FunctionModel& f, double r) { return proximity(f, r).value; });
  m.def("proximity_at", [](const FunctionModel& f, cplx a, double r) { return proximity_at(f, a, r).value; });
  m.def("counting", [](const FunctionModel& f, double r) { return counting(f, r).value; });
  m.def("characteristic", [](const FunctionModel& f, double r) { return characteristic(f, r).value; });
  m.def("proximity_derivative_ratio",
        [](const FunctionModel& f, int k, int j, double r) { return proximity_derivative_ratio(f, k, j, r).value; });
  m.def("growth_order", [](const FunctionModel& f, std::vector<double> grid) { return growth_order_estimate(f, grid); });
  m.def("table", [](const FunctionModel& f, std::vector<double> grid) {
    std::vector<std::tuple<double, double, double, double, double>> out;
    for (const auto& row : nevanlinna_table(f, grid)) out.emplace_back(row.r, row.m, row.N, row.T, row.quad_error);
    return out;
  });
  m.def("make_grid", &grid_arg, py::arg("start"), py::arg("stop"), py::arg("count"), py::arg("log_spaced") = true);

  m.def("constant_C", &constant_C);
  m.def("kappa_objective", &kappa_objective);
  m.def("optimize_kappa", [](double eps) {
    const auto k = optimize_kappa(eps);
    py::dict d;
    d["alpha"] = k.alpha;
    d["beta"] = k.beta;
    d["objective"] = k.objective;
    d["grid_objective"] = k.grid_objective;
    return d;
  }, py::arg("epsilon") = 1e-9);
  m.def("gg_bound", &gg_bound, py::arg("r"), py::arg("rho"), py::arg("T_rho"),
        py::arg("constant") = kLogDerivConstant);
  m.def("logderiv_bound", &logderiv_bound);

  py::class_<DiffPolynomial>(m, "DiffPolynomial")
      .def(py::init([](const std::string& text, const ConstantBindings& b) { return parse_diffpoly(text, b); }),
           py::arg("text"), py::arg("constants") = ConstantBindings{})
      .def("__str__", &format_diffpoly)
      .def("__repr__", [](const DiffPolynomial& p) { return "DiffPolynomial('" + format_diffpoly(p) + "')"; })
      .def("__len__", &DiffPolynomial::card)
      .def_property_readonly("degree", &poly_degree)
      .def_property_readonly("weight", &poly_weight)
      .def_property_readonly("sum_degrees", &sum_degrees)
      .def_property_readonly("sum_weights", &sum_weights)
      .def_property_readonly("coefficient_degrees", &coefficient_degree_sum)
      .def("evaluate", [](const DiffPolynomial& p, const FunctionModel& f, cplx z) { return evaluate_diffpoly(p, f, z); });

  m.def("clunie_certificate", [](int n, const DiffPolynomial& P, const DiffPolynomial& Q, double r, double rho,
                                 double T_rho, bool legacy) {
    const auto c = clunie_certificate(validate_clunie_split(n, P, Q), r, rho, T_rho, CoefficientMode::ClosedForm,
                                      legacy ? CertificateMode::Legacy : CertificateMode::Erratum);
    return certificate_json(c);
  }, py::arg("n"), py::arg("P"), py::arg("Q"), py::arg("r"), py::arg("rho"), py::arg("T_rho"), py::arg("legacy") = false);
  m.def("mohonko_certificate", [](const DiffPolynomial& P, double r, double rho, double T_rho, bool legacy) {
    return certificate_json(mohonko_certificate(P, r, rho, T_rho, CoefficientMode::ClosedForm,
                                                legacy ? CertificateMode::Legacy : CertificateMode::Erratum));
  }, py::arg("P"), py::arg("r"), py::arg("rho"), py::arg("T_rho"), py::arg("legacy") = false);

  m.def("painleve_slope", [](const std::string& which) {
    PainleveKind k;
    if (which == "I") k = PainleveKind::I;
    else if (which == "II") k = PainleveKind::II;
    else if (which == "IV") k = PainleveKind::IV;
    else throw py::value_error("which must be 'I', 'II' or 'IV'");
    const auto res = painleve_case(k);
    py::dict d;
    d["slope"] = res.slope.slope;
    d["target"] = res.target;
    d["legacy_slope"] = res.legacy_slope.slope;
    d["sum_weights_Q"] = res.sum_weights_Q;
    d["coefficient_degrees"] = res.coefficient_degrees;
    return d;
  });

  m.def("sharpness", [](std::vector<int> ns, std::vector<double> rs) {
    std::vector<py::dict> out;
    for (const auto& row : sharpness_experiment(ns, rs)) {
      py::dict d;
      d["n"] = row.n;
      d["r"] = row.r;
      d["gap"] = row.gap;
      d["gap_numeric"] = row.gap_numeric;
      d["target"] = row.target;
      out.push_back(d);
    }
    return out;
  });

  m.def("check_gg", [](const FunctionModel& f, std::vector<double> grid) { return report_dict(check_gg(f, grid)); });
  m.def("check_theorem_c", [](const FunctionModel& f, int k, int j, std::vector<double> grid) {
    return report_dict(check_theorem_c(f, k, j, grid));
  });
  m.def("riccati_case", [](std::vector<double> grid) {
    const auto [a, b] = riccati_case(grid);
    return std::make_pair(report_dict(a), report_dict(b));
  });
}

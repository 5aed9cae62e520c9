#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "diffgal/errors.hpp"
#include "diffgal/report.hpp"

namespace py = pybind11;
using namespace diffgal;

namespace {

SystemDocument load(const std::string& text, std::optional<int> degree_bound, std::optional<int> denominator_bound,
                    std::optional<int> orbit_bound) {
  SystemDocument doc = parse_system_document(text);
  if (degree_bound) doc.bounds.max_numerator_degree = *degree_bound;
  if (denominator_bound) doc.bounds.max_denominator_degree = *denominator_bound;
  if (orbit_bound) doc.bounds.orbit_bound = *orbit_bound;
  return doc;
}

SolverBounds bounds_of(std::optional<int> degree_bound, std::optional<int> denominator_bound,
                       std::optional<int> orbit_bound) {
  SolverBounds b;
  if (degree_bound) b.max_numerator_degree = *degree_bound;
  if (denominator_bound) b.max_denominator_degree = *denominator_bound;
  if (orbit_bound) b.orbit_bound = *orbit_bound;
  return b;
}

template <class F>
auto doc_fn(F f) {
  return [f](const std::string& text, std::optional<int> d, std::optional<int> den, std::optional<int> o) {
    return emit_report(f(load(text, d, den, o)));
  };
}

}  // namespace

PYBIND11_MODULE(_diffgal, m) {
  m.doc() = "Integrability and hypertranscendence of linear difference systems (JSON in, JSON out)";

  // translators run newest first, so ParseError is matched before Error
  const auto& base = py::register_exception<Error>(m, "DiffgalError");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  const py::arg_v db = py::arg("degree_bound") = py::none();
  const py::arg_v denb = py::arg("denominator_bound") = py::none();
  const py::arg_v ob = py::arg("orbit_bound") = py::none();

  m.def("canonical", [](const std::string& e) { return format_expression(parse_expression(e)); },
        "Parse an expression in x and print it in canonical form.", py::arg("expr"));
  m.def("analyze", doc_fn(analyze_report), "Full report for a system document.", py::arg("document"), py::kw_only(),
        db, denb, ob);
  m.def("integrable", doc_fn(integrable_report), py::arg("document"), py::kw_only(), db, denb, ob);
  m.def("projectively_integrable", doc_fn(projective_report), py::arg("document"), py::kw_only(), db, denb, ob);
  m.def("constant_group", doc_fn(constant_group_report), py::arg("document"), py::kw_only(), db, denb, ob);

  m.def(
      "telescope",
      [](const std::string& g, const std::string& c, const std::string& q, bool allow_constant, std::optional<int> d,
         std::optional<int> den, std::optional<int> o) {
        const OperatorCase op = parse_operator(c, q);
        const RationalFunction rhs = parse_expression(g);
        return emit_report(telescope_json(op, rhs, allow_constant, telescope_scalar(rhs, op, allow_constant, bounds_of(d, den, o))));
      },
      "Solve mu sigma(b) - b = g (- c).", py::arg("g"), py::arg("case") = "S", py::arg("q") = "",
      py::arg("allow_constant") = false, py::kw_only(), db, denb, ob);

  m.def(
      "scalar_classify",
      [](const std::string& a, const std::string& c, const std::string& q, std::optional<int> d,
         std::optional<int> den, std::optional<int> o) {
        return emit_report(scalar_report(parse_operator(c, q), parse_expression(a), bounds_of(d, den, o)));
      },
      py::arg("a"), py::arg("case") = "S", py::arg("q") = "", py::kw_only(), db, denb, ob);

  m.def(
      "lift_report",
      [](const std::string& group) {
        return emit_report(Json{{"lift", lift_json(reductive_lift_report(parse_reductive_descriptor(group)))}});
      },
      py::arg("group"));

  m.def(
      "companion_report",
      [](const std::vector<std::string>& polys) {
        std::vector<Polynomial> as;
        for (const auto& s : polys) {
          const RationalFunction a = parse_expression(s);
          if (!a.den().is_one()) throw Error("companion entries must be polynomials");
          as.push_back(a.num());
        }
        return emit_report(companion_report(OperatorCase::shift(), as));
      },
      py::arg("polys"));

  m.def(
      "gauge",
      [](const std::string& doc_text, const std::string& t_json) {
        const DifferenceSystem sys = parse_system(doc_text);
        const MatrixRF T = parse_matrix_json(t_json);
        if (T.rows() != sys.n()) throw DimensionMismatch("T must have the size of A");
        if (T.det().is_zero()) throw SingularInput("T is not invertible");
        return emit_report(system_json(gauge_transform(sys, T)));
      },
      "Document for sigma(T) A T^{-1}.", py::arg("document"), py::arg("T"));

  m.def(
      "kron",
      [](const std::string& doc_text) {
        const DifferenceSystem sys = parse_system(doc_text);
        return emit_report(system_json(DifferenceSystem{sys.op, kron_power_reduction(sys.A)}));
      },
      "Document for det(A)^{-1} A^{(x)n}.", py::arg("document"));
}

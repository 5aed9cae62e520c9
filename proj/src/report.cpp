#include "diffgal/report.hpp"

#include <numeric>

#include "diffgal/constant_galois.hpp"
#include "diffgal/errors.hpp"

namespace diffgal {

namespace {

MatrixRF reparse(const Json& m) {
  const std::size_t r = m.size(), c = m[0].size();
  MatrixRF out(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) out(i, j) = parse_expression(m[i][j].get<std::string>());
  return out;
}

Json certificate_json(const DifferenceSystem& sys, const std::optional<IntegrabilityCertificate>& cert, Json& out) {
  if (!cert) {
    out["certificate"] = nullptr;
    out["verified"] = nullptr;
    return out;
  }
  const Json m = matrix_json(cert->B);
  out["certificate"] = m;
  out["variant"] = variant_name(cert->variant);
  out["verified"] = check_consistency(sys, reparse(m), cert->variant);
  return out;
}

}  // namespace

std::string emit_report(const Json& report) { return report.dump(2) + "\n"; }

Json bounds_json(const SolverBounds& b) {
  return Json{{"degree_bound", b.max_numerator_degree},
              {"denominator_bound", b.max_denominator_degree},
              {"orbit_bound", b.orbit_bound}};
}

Json operator_json(const OperatorCase& op) {
  Json j{{"case", case_name(op.tag)}};
  if (op.tag != Case::S) j["q"] = format_rational(op.q);
  return j;
}

Json matrix_json(const MatrixRF& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_expression(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json system_json(const DifferenceSystem& sys) {
  Json j = operator_json(sys.op);
  j["matrix"] = matrix_json(sys.A);
  return j;
}

Json integrability_json(const DifferenceSystem& sys, const IntegrabilityResult& r) {
  Json j{{"verdict", verdict_name(r.verdict)},
         {"tag", r.tag},
         {"note", r.note},
         {"degree_searched", r.degree_searched}};
  certificate_json(sys, r.certificate, j);
  return j;
}

Json gap_json(const DifferenceSystem& sys, const GapReport& g) {
  Json j{{"det_condition", verdict_name(g.det_condition)},
         {"det_condition_tag", g.det_condition_tag},
         {"projective", verdict_name(g.projective)},
         {"conclusion", verdict_name(g.conclusion)},
         {"statement", g.statement}};
  if (g.b) {
    const std::string s = format_expression(*g.b);
    const RationalFunction b = parse_expression(s);
    const RationalFunction d = sys.A.det();
    j["b"] = s;
    j["b_verified"] = RationalFunction(sys.op.mu()) * apply_sigma(sys.op, b) - b == apply_delta(sys.op, d) / d;
  } else {
    j["b"] = nullptr;
    j["b_verified"] = nullptr;
  }
  certificate_json(sys, g.certificate, j);
  return j;
}

Json shape_json(const ShapeReport& s) {
  Json params = Json::object();
  for (const auto& p : s.parameters) params[p.name] = p.value ? Json(p.value->get_str()) : Json(nullptr);
  return Json{{"family", s.family},
              {"parameters", params},
              {"exact", s.exact},
              {"descriptor", s.descriptor ? Json(s.descriptor->to_string("C0")) : Json(nullptr)},
              {"basis", s.basis},
              {"note", s.note}};
}

Json scalar_verdict_json(const OperatorCase& op, const RationalFunction& a, const ScalarVerdict& v) {
  Json j{{"a", format_expression(a)},
         {"verdict", scalar_verdict_name(v.kind)},
         {"tag", v.tag},
         {"note", v.note},
         {"b", v.b ? Json(format_expression(*v.b)) : Json(nullptr)},
         {"c", v.c ? Json(format_rational(*v.c)) : Json(nullptr)}};
  if (v.b) {
    const RationalFunction b = parse_expression(format_expression(*v.b));
    const RationalFunction g = apply_delta(op, a) / a;
    const RationalFunction c = v.c ? RationalFunction(*v.c) : RationalFunction();
    const RationalFunction lhs = v.c ? apply_sigma(op, b) - b : RationalFunction(op.mu()) * apply_sigma(op, b) - b;
    j["verified"] = lhs == g - c;
  } else {
    j["verified"] = nullptr;
  }
  return j;
}

Json lift_json(const LiftReport& r) {
  return Json{{"input_group", r.input_group},
              {"derived_identity_component", r.derived_identity_component},
              {"conclusion", r.conclusion},
              {"diff_transcendence_degree_lower_bound", r.diff_transcendence_degree_lower_bound
                                                            ? Json(*r.diff_transcendence_degree_lower_bound)
                                                            : Json(nullptr)},
              {"note", r.note}};
}

Json telescope_json(const OperatorCase& op, const RationalFunction& g, bool allow_constant, const SolverOutcome& o) {
  Json j = operator_json(op);
  j["g"] = format_expression(g);
  j["allow_constant"] = allow_constant;
  j["outcome"] = outcome_name(o.kind);
  j["tag"] = o.tag;
  j["note"] = o.note;
  j["degree_searched"] = o.degree_searched;
  j["bounds"] = bounds_json(o.bounds);
  if (o.kind == Outcome::Found) {
    const std::string s = format_expression(o.y[0]);
    const RationalFunction b = parse_expression(s);
    j["b"] = s;
    RationalFunction rhs = g;
    if (allow_constant) {
      j["c"] = format_rational(o.params[0]);
      rhs -= RationalFunction(o.params[0]);
    } else {
      j["c"] = nullptr;
    }
    j["verified"] = RationalFunction(op.mu()) * apply_sigma(op, b) - b == rhs;
  } else {
    j["b"] = nullptr;
    j["c"] = nullptr;
    j["verified"] = nullptr;
  }
  return j;
}

Json constant_group_json(const DifferenceSystem& sys) {
  sys.validate();
  if (!sys.A.is_constant()) throw NonConstantInput("constant-group needs a constant matrix");
  Json j;
  const JordanChevalley jc = jordan_chevalley(sys.A);
  j["semisimple_part"] = matrix_json(jc.semisimple);
  j["unipotent_part"] = matrix_json(jc.unipotent);
  j["characteristic_polynomial"] = characteristic_polynomial(sys.A).to_string();
  const EigenvalueData ev = eigenvalue_data(jc.semisimple);
  j["supported"] = ev.supported;
  if (!ev.supported) {
    j["residual_factor"] = ev.residual.to_string();
    j["note"] = "spectrum needs algebraic-number arithmetic (irrational, non-cyclotomic eigenvalues)";
    return j;
  }
  Json eig = Json::array();
  Json coords = Json::array();
  for (const auto& e : ev.values) {
    eig.push_back(Json{{"value", e.to_string()}, {"multiplicity", e.multiplicity}});
    if (e.kind == Eigenvalue::Kind::Rational) {
      for (int i = 0; i < e.multiplicity; ++i) coords.push_back(format_rational(e.value));
    } else {
      const long ph = euler_phi(e.order);
      for (long rep = 0; rep < e.multiplicity / ph; ++rep)
        for (long k = 1; k < e.order; ++k)
          if (std::gcd(k, static_cast<long>(e.order)) == 1)
            coords.push_back("zeta_" + std::to_string(e.order) + (k == 1 ? "" : "^" + std::to_string(k)));
    }
  }
  j["eigenvalues"] = eig;
  j["lattice_coordinates"] = coords;
  const RelationLattice L = relation_lattice(ev);
  Json basis = Json::array();
  for (std::size_t i = 0; i < L.basis.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < L.basis.cols(); ++k) row.push_back(L.basis(i, k).get_str());
    basis.push_back(std::move(row));
  }
  j["relation_lattice"] = Json{{"rank", L.rank()}, {"basis", basis}};
  Json snf = Json::array();
  for (const auto& v : L.snf_invariants) snf.push_back(v.get_str());
  j["relation_lattice"]["snf_invariants"] = snf;
  j["closure_over_C"] = closure_descriptor_over_C(sys.A).to_string("C");
  j["galois_group_over_k"] = galois_descriptor_over_k(sys).to_string("C0");
  return j;
}

std::optional<Polynomial> companion_entry(const MatrixRF& A) {
  if (A.rows() != 2 || A.cols() != 2) return std::nullopt;
  if (!A(0, 0).is_zero() || A(0, 1) != RationalFunction(-1) || A(1, 0) != RationalFunction(1)) return std::nullopt;
  if (!A(1, 1).den().is_one()) return std::nullopt;
  return A(1, 1).num();
}

Json analyze_report(const SystemDocument& doc) {
  const DifferenceSystem& sys = doc.system;
  const SolverBounds& b = doc.bounds;
  Json r;
  r["input"] = system_json(sys);
  if (!doc.name.empty()) r["input"]["name"] = doc.name;
  r["bounds"] = bounds_json(b);
  r["metadata"] = Json{{"tool", "diffgal"}, {"report_version", 1}};

  const IntegrabilityResult integ = is_integrable(sys, b);
  const IntegrabilityResult proj = is_projectively_integrable(sys, b);
  const GapReport gap = integrable_gap_test(sys, b, proj);
  r["integrability"] = integrability_json(sys, integ);
  r["projective_integrability"] = integrability_json(sys, proj);
  r["gap_test"] = gap_json(sys, gap);

  const bool integrable = integ.verdict == Verdict::Found || gap.conclusion == Verdict::Found;
  const bool not_integrable = integ.verdict == Verdict::No || gap.conclusion == Verdict::No;
  Json shape;
  if (integrable) {
    shape = shape_json(integrable_group_shape(sys, IntegrabilityStatus::Integrable, b));
    shape["status"] = "integrable";
  } else if (not_integrable && proj.verdict == Verdict::Found) {
    shape = shape_json(integrable_group_shape(sys, IntegrabilityStatus::ProjectiveNotIntegrable, b));
    shape["status"] = "projectively integrable, not integrable";
  } else if (proj.verdict == Verdict::No) {
    shape = Json{{"status", "not projectively integrable"}, {"family", nullptr}};
  } else {
    shape = Json{{"status", "undecided"}, {"family", nullptr}};
  }
  r["group_shape"] = shape;

  if (sys.A.is_constant()) {
    try {
      r["constant_group"] = constant_group_json(sys);
    } catch (const UnsupportedSpectrum& e) {
      r["constant_group"] = Json{{"supported", false}, {"note", e.what()}};
    }
  }

  if (sys.n() == 1) {
    r["hypertranscendence"] = scalar_verdict_json(sys.op, sys.A(0, 0), scalar_classify(sys.op, sys.A(0, 0), b));
  } else if (const auto a = companion_entry(sys.A); a && sys.op.tag == Case::S) {
    const auto rep = companion_sl2_report(sys.op, *a);
    r["hypertranscendence"] = rep ? lift_json(*rep) : Json{{"applicable", false}, {"note", "needs a(0) = 0, deg a >= 1"}};
  }
  return r;
}

Json integrable_report(const SystemDocument& doc) {
  Json j{{"input", system_json(doc.system)}, {"bounds", bounds_json(doc.bounds)}};
  j["integrability"] = integrability_json(doc.system, is_integrable(doc.system, doc.bounds));
  return j;
}

Json projective_report(const SystemDocument& doc) {
  const IntegrabilityResult p = is_projectively_integrable(doc.system, doc.bounds);
  Json j{{"input", system_json(doc.system)}, {"bounds", bounds_json(doc.bounds)}};
  j["projective_integrability"] = integrability_json(doc.system, p);
  j["gap_test"] = gap_json(doc.system, integrable_gap_test(doc.system, doc.bounds, p));
  return j;
}

Json constant_group_report(const SystemDocument& doc) {
  Json j{{"input", system_json(doc.system)}};
  j["constant_group"] = constant_group_json(doc.system);
  return j;
}

Json scalar_report(const OperatorCase& op, const RationalFunction& a, const SolverBounds& b) {
  Json j = operator_json(op);
  j["scalar"] = scalar_verdict_json(op, a, scalar_classify(op, a, b));
  j["bounds"] = bounds_json(b);
  return j;
}

Json companion_report(const OperatorCase& op, const std::vector<Polynomial>& as) {
  const auto rep = as.size() == 1 ? companion_sl2_report(op, as[0]) : companion_block_report(op, as);
  return Json{{"lift", rep ? lift_json(*rep) : Json{{"applicable", false}}}};
}

}  // namespace diffgal

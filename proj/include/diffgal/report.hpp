#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "diffgal/hypertrans.hpp"
#include "diffgal/integrability.hpp"
#include "diffgal/parser.hpp"

namespace diffgal {

using Json = nlohmann::json;

/// Sorted keys, two-space indent, trailing newline. Byte-identical for
/// identical input.
std::string emit_report(const Json& report);

Json bounds_json(const SolverBounds& b);
Json operator_json(const OperatorCase& op);
Json matrix_json(const MatrixRF& m);
/// Input-document form; parse_system_document reads it back.
Json system_json(const DifferenceSystem& sys);

/// Certificates are printed, parsed back and checked again; "verified"
/// records the outcome of that round trip.
Json integrability_json(const DifferenceSystem& sys, const IntegrabilityResult& r);
Json gap_json(const DifferenceSystem& sys, const GapReport& g);
Json shape_json(const ShapeReport& s);
Json scalar_verdict_json(const OperatorCase& op, const RationalFunction& a, const ScalarVerdict& v);
Json lift_json(const LiftReport& r);
Json telescope_json(const OperatorCase& op, const RationalFunction& g, bool allow_constant, const SolverOutcome& o);
/// Eigenvalues, relation lattice and descriptors of a constant system.
Json constant_group_json(const DifferenceSystem& sys);

/// Full pipeline: integrability, projective integrability, gap test, group
/// shape, constant-group data for constant A, and hypertranscendence for
/// scalar and companion SL(2) inputs.
Json analyze_report(const SystemDocument& doc);

/// Reports of the single-purpose subcommands.
Json integrable_report(const SystemDocument& doc);
Json projective_report(const SystemDocument& doc);
Json constant_group_report(const SystemDocument& doc);
Json scalar_report(const OperatorCase& op, const RationalFunction& a, const SolverBounds& b);
/// Lift report for one companion polynomial or a block family; an
/// "applicable": false object when the recognizers do not apply.
Json companion_report(const OperatorCase& op, const std::vector<Polynomial>& as);

/// a when A = [[0,-1],[1,a]] with a a polynomial.
std::optional<Polynomial> companion_entry(const MatrixRF& A);

}  // namespace diffgal

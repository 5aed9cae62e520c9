#pragma once

#include <string>
#include <string_view>

#include "diffgal/rational_solver.hpp"

namespace diffgal {

/// Exact value of an expression in x; grammar in README.md.
/// Throws ParseError (Syntax, DivisionByZeroConstant, IrrationalConstant).
RationalFunction parse_expression(std::string_view text);

/// "3", "-1/2", "0.25". Throws ParseError.
Rational parse_rational(std::string_view text);
/// "S", "Q" or "M" plus q as text; q must be empty for S and given otherwise.
OperatorCase parse_operator(const std::string& case_text, const std::string& q_text);

/// Printed form that parse_expression reads back to the same value.
std::string format_expression(const RationalFunction& f);
std::string format_rational(const Rational& r);

/// Parsed input document.
struct SystemDocument {
  DifferenceSystem system;
  SolverBounds bounds;
  std::string name;
};

/// JSON object {"case", "q", "matrix", "options"}; "name" and "description"
/// are accepted and ignored by the analysis. Throws SchemaError, ParseError,
/// BadOperatorParameter, DimensionMismatch or SingularInput.
SystemDocument parse_system_document(const std::string& text);
DifferenceSystem parse_system(const std::string& text);

/// JSON array of arrays of expression strings.
MatrixRF parse_matrix_json(const std::string& text);

}  // namespace diffgal

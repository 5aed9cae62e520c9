#pragma once

#include <string>

#include "diffgal/matrix.hpp"

namespace diffgal {

enum class Case { S, Q, M };

/// sigma and delta for one of the three cases:
///   S: sigma(x) = x + 1,  delta = d/dx
///   Q: sigma(x) = q x,    delta = x d/dx
///   M: sigma(x) = x^q,    delta = x d/dx, and delta sigma = q sigma delta
struct OperatorCase {
  Case tag = Case::S;
  Rational q = 0;

  static OperatorCase shift() { return {Case::S, Rational(0)}; }
  /// Throws BadOperatorParameter unless q is rational with |q| not in {0, 1}.
  static OperatorCase qdilation(const Rational& q);
  /// Throws BadOperatorParameter unless q is an integer >= 2.
  static OperatorCase mahler(const Rational& q);

  /// 1 for S and Q, q for M.
  Rational mu() const { return tag == Case::M ? q : Rational(1); }
  int mahler_q() const { return static_cast<int>(q.get_num().get_si()); }
  std::string name() const;
};

Case parse_case(const std::string& s);
std::string case_name(Case c);

Polynomial apply_sigma(const OperatorCase& op, const Polynomial& p);
RationalFunction apply_sigma(const OperatorCase& op, const RationalFunction& f);
MatrixRF apply_sigma(const OperatorCase& op, const MatrixRF& m);
/// sigma^{-1}; not defined for M (throws BadOperatorParameter).
Polynomial apply_sigma_inverse(const OperatorCase& op, const Polynomial& p);
/// sigma^e for e >= 0 (any case) or e < 0 (S and Q only).
Polynomial apply_sigma_power(const OperatorCase& op, const Polynomial& p, int e);

RationalFunction apply_delta(const OperatorCase& op, const RationalFunction& f);
MatrixRF apply_delta(const OperatorCase& op, const MatrixRF& m);

/// sigma(Y) = A Y; A square with nonzero determinant.
struct DifferenceSystem {
  OperatorCase op;
  MatrixRF A;

  std::size_t n() const { return A.rows(); }
  /// Throws DimensionMismatch / SingularInput on a bad matrix.
  void validate() const;
};

/// sigma(T) A T^{-1}. gauge(gauge(A, T), T2) = gauge(A, T2 T).
DifferenceSystem gauge_transform(const DifferenceSystem& sys, const MatrixRF& T);

/// Certificate for the gauged system: delta(T) T^{-1} + T B T^{-1}.
MatrixRF transport_certificate(const OperatorCase& op, const MatrixRF& B, const MatrixRF& T);

/// det(A)^{-1} (A kron ... kron A), n factors, Kronecker as in kron().
MatrixRF kron_power_reduction(const MatrixRF& A);

/// sigma^{t-1}(A) ... sigma(A) A
MatrixRF sigma_power_system(const DifferenceSystem& sys, int t);

enum class Variant { Iso, SsInt, Piso };
std::string variant_name(Variant v);

/// iso:    sigma(B) = A B A^{-1} + delta(A) A^{-1}
/// ss_int: mu sigma(B) A = A B + delta(A)
/// piso:   mu sigma(B) A = A B + delta(A) - (1/n) (delta(det A)/det A) A
bool check_consistency(const DifferenceSystem& sys, const MatrixRF& B, Variant variant);

}  // namespace diffgal

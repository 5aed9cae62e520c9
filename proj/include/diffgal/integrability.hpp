#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diffgal/constant_galois.hpp"
#include "diffgal/rational_solver.hpp"

namespace diffgal {

/// sigma(vec B) = M vec B + c, column-major vec.
struct ConsistencySystem {
  MatrixRF M;
  std::vector<RationalFunction> c;
};

/// iso:    M = A^{-T} kron A,          c = vec(delta(A) A^{-1})
/// ss_int: both divided by mu
/// piso:   ss_int with (1/(n mu)) (delta(det A)/det A) vec(I) subtracted from c
ConsistencySystem build_consistency_system(const DifferenceSystem& sys, Variant variant);

/// The same equation without inverting A: mu (A^T kron I) sigma(vec B) =
/// (I kron A) vec B + vec(delta(A)) [- (1/n)(delta(det)/det) vec(A)].
RationalSystem consistency_rational_system(const DifferenceSystem& sys, Variant variant);

/// iso for S and Q, ss_int for M.
Variant integrability_variant(Case c);

enum class Verdict { Found, No, Unknown };
std::string verdict_name(Verdict v);

struct IntegrabilityCertificate {
  Variant variant = Variant::Iso;
  MatrixRF B;
  bool verified = false;
};

struct IntegrabilityResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<IntegrabilityCertificate> certificate;
  std::string tag;
  std::string note;
  int degree_searched = 0;
};

IntegrabilityResult is_integrable(const DifferenceSystem& sys, const SolverBounds& bounds);
IntegrabilityResult is_projectively_integrable(const DifferenceSystem& sys, const SolverBounds& bounds);

/// Projective certificate from an integrable one: B - (tr B / n) I.
MatrixRF projective_from_integrable(const MatrixRF& B);

/// Condition sigma(b) - b = delta(det A)/det A (case M: q sigma(b) - b = ...),
/// combined with projective integrability: the system is integrable exactly
/// when both hold, with certificate B_p + (b/n) I.
struct GapReport {
  Verdict det_condition = Verdict::Unknown;
  std::optional<RationalFunction> b;
  std::string det_condition_tag;
  Verdict projective = Verdict::Unknown;
  Verdict conclusion = Verdict::Unknown;
  std::optional<IntegrabilityCertificate> certificate;
  std::string statement;
};

GapReport integrable_gap_test(const DifferenceSystem& sys, const SolverBounds& bounds);
/// Same, reusing an already computed projective result.
GapReport integrable_gap_test(const DifferenceSystem& sys, const SolverBounds& bounds,
                              const IntegrabilityResult& projective);

enum class IntegrabilityStatus { Integrable, ProjectiveNotIntegrable };

struct ShapeParameter {
  std::string name;
  std::optional<Integer> value;  // empty: not determined
};

struct ShapeReport {
  std::string family;
  std::vector<ShapeParameter> parameters;
  bool exact = false;
  std::optional<GroupDescriptor> descriptor;
  /// Which classification produced the family.
  std::string basis;
  std::string note;
};

/// Group-shape family of the sigma-delta-Galois group. Exact parameters only
/// for constant A. Throws StatusUnknown without a status.
ShapeReport integrable_group_shape(const DifferenceSystem& sys, const std::optional<IntegrabilityStatus>& status,
                                   const SolverBounds& bounds = {});

}  // namespace diffgal

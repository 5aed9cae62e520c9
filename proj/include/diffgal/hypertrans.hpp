#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diffgal/rational_solver.hpp"

namespace diffgal {

/// Outcome for sigma(y) = a y, n = 1.
struct ScalarVerdict {
  enum class Kind { SatisfiesLDE, WType, Hypertranscendental, Unknown };
  Kind kind = Kind::Unknown;
  /// SatisfiesLDE: mu sigma(b) - b = delta(a)/a, so delta(y) = b y.
  /// WType: sigma(b) - b = delta(a)/a - c with c a nonzero constant.
  std::optional<RationalFunction> b;
  std::optional<Rational> c;
  /// Solver completeness tag behind the verdict.
  std::string tag;
  std::string note;
  SolverBounds bounds;
};

std::string scalar_verdict_name(ScalarVerdict::Kind k);

/// Throws ZeroInput for a = 0.
ScalarVerdict scalar_classify(const OperatorCase& op, const RationalFunction& a, const SolverBounds& bounds);

/// Reductive group from the supported vocabulary: a product of SL(2)
/// blocks, a torus and finite cyclic factors, e.g. "SL(2)^2 x Gm x Z/3".
struct ReductiveDescriptor {
  int sl2_blocks = 0;
  int torus_rank = 0;
  std::vector<Integer> finite;

  std::string to_string() const;
  bool operator==(const ReductiveDescriptor&) const = default;
};

/// Throws UnsupportedDescriptor on anything outside the vocabulary.
ReductiveDescriptor parse_reductive_descriptor(const std::string& text);

struct LiftReport {
  std::string input_group;
  std::string derived_identity_component;
  std::string conclusion;
  /// Only when the identity component is semisimple (no torus).
  std::optional<int> diff_transcendence_degree_lower_bound;
  std::string note;
};

/// sigma-Galois group H reductive over C0 gives a sigma-delta-Galois group
/// inside H(C) containing H^{0,der}(C).
LiftReport reductive_lift_report(const ReductiveDescriptor& H);

/// Y(x+1) = [[0,-1],[1,a]] Y(x), a in Q[x] with a(0) = 0 and deg a >= 1.
/// nullopt (not applicable) otherwise, or for a case other than S.
std::optional<LiftReport> companion_sl2_report(const OperatorCase& op, const Polynomial& a);

/// Block diagonal of the companion systems for a_1..a_m. Recognized only for
/// a_j = x^{i_j} with pairwise distinct i_j >= 1; the group is then SL(2)^m.
std::optional<LiftReport> companion_block_report(const OperatorCase& op, const std::vector<Polynomial>& as);

/// [[0,-1],[1,a]]
MatrixRF companion_sl2_matrix(const Polynomial& a);

}  // namespace diffgal

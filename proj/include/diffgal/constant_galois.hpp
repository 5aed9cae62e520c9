#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diffgal/int_matrix.hpp"
#include "diffgal/operators.hpp"

namespace diffgal {

struct JordanChevalley {
  MatrixRF semisimple;
  MatrixRF unipotent;
};

/// A = A_s A_u = A_u A_s for a constant invertible A, computed over Q by
/// Newton iteration on the squarefree part of the characteristic polynomial.
JordanChevalley jordan_chevalley(const MatrixRF& A);

/// det(x I - A) for a constant matrix.
Polynomial characteristic_polynomial(const MatrixRF& A);

struct Eigenvalue {
  enum class Kind { Rational, RootOfUnity };
  Kind kind = Kind::Rational;
  Rational value;  // Rational kind
  int order = 0;   // RootOfUnity kind: all primitive order-th roots, each multiplicity/phi(order) times
  int multiplicity = 0;

  std::string to_string() const;
};

struct EigenvalueData {
  bool supported = true;
  std::vector<Eigenvalue> values;
  /// Unsupported only: the factor of the characteristic polynomial left over.
  Polynomial residual;
  std::size_t size() const;
};

/// Spectrum of a semisimple constant matrix: rational roots of the
/// characteristic polynomial and cyclotomic factors Phi_d (phi(d) <= n).
EigenvalueData eigenvalue_data(const MatrixRF& As);

struct RelationLattice {
  std::size_t ambient_rank = 0;
  /// Rows form a basis, in Hermite normal form.
  IntMatrix basis;
  /// Nonzero invariant factors of the basis matrix.
  std::vector<Integer> snf_invariants;

  std::size_t rank() const { return basis.rows(); }
  bool contains(const std::vector<Integer>& m) const;
};

/// {m in Z^n : prod lambda_i^m_i = 1}, or in q^Z when extra_q is given. The
/// eigenvalues are taken with multiplicity; the primitive roots of a
/// cyclotomic factor are zeta^k, k coprime to the order, in increasing k.
RelationLattice relation_lattice(const EigenvalueData& values, const std::optional<Rational>& extra_q = std::nullopt);

/// Hermite normal form basis of the lattice spanned by the rows.
IntMatrix lattice_basis(const std::vector<std::vector<Integer>>& generators, std::size_t cols);

enum class WMarker { None, W, FullGm };

/// Gm^r x Ga^s x Z/t1 x Z/t2 (plus a W factor in projective shapes).
struct GroupDescriptor {
  int torus_rank = 0;
  int unipotent = 0;
  std::vector<Integer> torsion;  // factors > 1, each dividing the next
  WMarker w_marker = WMarker::None;

  std::string to_string(const std::string& field = "C") const;
  friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;
};

/// Zariski closure of the group generated by a constant A.
GroupDescriptor closure_descriptor_over_C(const MatrixRF& A);

/// sigma-Galois group of sigma(Y) = A Y over Q(x) for constant A.
GroupDescriptor galois_descriptor_over_k(const DifferenceSystem& sys);

}  // namespace diffgal

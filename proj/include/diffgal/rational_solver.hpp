#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "diffgal/linear_solve.hpp"
#include "diffgal/operators.hpp"

namespace diffgal {

struct SolverBounds {
  /// Largest numerator degree searched above the degree of the denominator.
  int max_numerator_degree = 24;
  int max_denominator_degree = 24;
  /// sigma-steps scanned in the Mahler orbit analysis.
  int orbit_bound = 16;
  Deadline deadline;
};

/// L sigma(y) = R y + f0 + sum_k lambda_k f_k, unknown y in Q(x)^N and
/// unknown constants lambda in Q^K. L and R must be invertible.
struct RationalSystem {
  OperatorCase op;
  MatrixRF L;
  MatrixRF R;
  std::vector<RationalFunction> f0;
  std::vector<std::vector<RationalFunction>> params;

  std::size_t size() const { return R.rows(); }
};

enum class Outcome { Found, NoSolution, Unknown };
std::string outcome_name(Outcome o);

/// Completeness tags carried by outcomes and reports.
inline const char* const kCompleteTag = "complete-algorithm";
inline const char* const kBoundedTag = "bounded-search";
inline const char* const kLocalObstructionTag = "local-obstruction";

struct HomogeneousSolution {
  std::vector<RationalFunction> y;
  std::vector<Rational> params;
};

struct SolverOutcome {
  Outcome kind = Outcome::Unknown;
  /// Particular solution (Found only).
  std::vector<RationalFunction> y;
  std::vector<Rational> params;
  /// Basis of the solutions of the homogeneous problem found at the
  /// searched degree. homogeneous_complete says whether that degree reached
  /// the proven bound, i.e. whether this is the whole space.
  std::vector<HomogeneousSolution> homogeneous;
  bool homogeneous_complete = false;
  std::string tag;
  std::string note;
  SolverBounds bounds;
  /// Largest numerator excess over the denominator that was searched.
  int degree_searched = 0;
};

/// Solution set of a rational system. Found results are re-verified exactly
/// before they are returned. NoSolution is only reported when it is proven:
/// with tag complete-algorithm (cases S and Q, bounds not exhausted) or
/// local-obstruction (a valuation argument at 0 or infinity, any case).
/// A nonzero seed permutes the unknowns before linear solving, which picks
/// a different (still valid) particular solution.
SolverOutcome solve(const RationalSystem& sys, const SolverBounds& bounds, std::uint64_t seed = 0);

/// sigma(y) = M y + c.
SolverOutcome solve_rational_system(const MatrixRF& M, const std::vector<RationalFunction>& c,
                                    const OperatorCase& op, const SolverBounds& bounds);

/// Polynomial u with u*y polynomial for every rational solution of sigma(y) = M y + c.
/// Complete for S and Q; for M a candidate limited by bounds.orbit_bound.
Polynomial universal_denominator(const MatrixRF& M, const std::vector<RationalFunction>& c,
                                 const OperatorCase& op, const SolverBounds& bounds);

/// All e >= 0 with gcd(p1, sigma^e(p2)) nonconstant, i.e. a root r of p1 with
/// phi^e(r) a root of p2 (phi = x+1, qx or x^q). Complete for S and Q;
/// for M only e <= bound is scanned. Ascending.
std::vector<int> dispersion(const Polynomial& p1, const Polynomial& p2, const OperatorCase& op, int bound);

/// sigma(b) - b = g (case M: q sigma(b) - b = g, the scalar case of the
/// normalized consistency equation). With allow_constant the right side is
/// g - c for an unknown constant c, returned as params[0].
/// The additive constant of b is fixed by dropping the constant term of its
/// polynomial part, so b vanishes at infinity whenever it can.
SolverOutcome telescope_scalar(const RationalFunction& g, const OperatorCase& op, bool allow_constant,
                               const SolverBounds& bounds, std::uint64_t seed = 0);

}  // namespace diffgal

#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "diffgal/polynomial.hpp"

namespace diffgal {

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

/// Dense linear system rows * unknown = rhs over Q.
struct LinearSystemQ {
  std::size_t cols = 0;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;

  void add_row(std::vector<Rational> row, Rational b) {
    rows.push_back(std::move(row));
    rhs.push_back(std::move(b));
  }
};

/// Full solution set. The kernel basis is the reduced one: vector k has a 1
/// in the k-th free column and zeros in the other free columns, and the
/// particular solution vanishes on every free column. Both are therefore
/// unique for a given column order.
struct LinearSolution {
  bool consistent = false;
  std::size_t rank = 0;
  std::vector<Rational> particular;
  std::vector<std::vector<Rational>> kernel;
};

/// Multi-modular reduced row echelon form with rational reconstruction.
/// Every returned vector is checked exactly against the input; a kernel of
/// dimension cols - rank(mod p) certifies the rank, which makes an
/// inconsistency verdict exact as well.
LinearSolution solve_linear(const LinearSystemQ& sys, const Deadline& deadline = std::nullopt);

/// Plain Gauss-Jordan over Q. Slow, used as an oracle.
LinearSolution solve_linear_exact(const LinearSystemQ& sys);

/// x with x = num/den (mod m), |num|, den <= sqrt(m/2). False if none exists.
bool rational_reconstruct(const Integer& residue, const Integer& modulus, Rational& out);

}  // namespace diffgal

#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "diffgal/polynomial.hpp"

namespace diffgal {

/// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  std::vector<Integer> row(std::size_t i) const;
  IntMatrix transpose() const;
  /// Bareiss determinant of a square matrix.
  Integer det() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> e_;
};

struct SmithForm {
  IntMatrix U;  // rows x rows, unimodular
  IntMatrix S;  // diagonal, d1 | d2 | ..., all >= 0
  IntMatrix V;  // cols x cols, unimodular
  std::size_t rank = 0;
  /// Nonzero diagonal entries in order.
  std::vector<Integer> invariants() const;
};

/// U * M * V = S.
SmithForm snf(const IntMatrix& m);

}  // namespace diffgal

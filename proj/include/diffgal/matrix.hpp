#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "diffgal/rational_function.hpp"

namespace diffgal {

/// Dense matrix over Q(x), row-major.
class MatrixRF {
 public:
  MatrixRF() = default;
  MatrixRF(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
  MatrixRF(std::size_t rows, std::size_t cols, std::vector<RationalFunction> entries);
  MatrixRF(std::initializer_list<std::initializer_list<RationalFunction>> rows);

  static MatrixRF identity(std::size_t n);
  static MatrixRF diagonal(const std::vector<RationalFunction>& d);
  /// n x 1 column.
  static MatrixRF column(const std::vector<RationalFunction>& v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  RationalFunction& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const RationalFunction& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
  const std::vector<RationalFunction>& entries() const noexcept { return e_; }

  bool is_zero() const;
  bool is_constant() const;
  bool is_identity() const;

  MatrixRF transpose() const;
  MatrixRF map(const std::function<RationalFunction(const RationalFunction&)>& f) const;
  RationalFunction trace() const;
  RationalFunction det() const;
  /// Throws SingularInput when not invertible.
  MatrixRF inverse() const;

  /// Column-major vectorization: stacks the columns.
  std::vector<RationalFunction> vec() const;
  static MatrixRF unvec(const std::vector<RationalFunction>& v, std::size_t rows, std::size_t cols);

  MatrixRF& operator+=(const MatrixRF& o);
  MatrixRF& operator-=(const MatrixRF& o);
  MatrixRF& operator*=(const RationalFunction& c);
  friend MatrixRF operator+(MatrixRF a, const MatrixRF& b) { return a += b; }
  friend MatrixRF operator-(MatrixRF a, const MatrixRF& b) { return a -= b; }
  friend MatrixRF operator*(MatrixRF a, const RationalFunction& c) { return a *= c; }
  friend MatrixRF operator*(const RationalFunction& c, MatrixRF a) { return a *= c; }
  friend MatrixRF operator*(const MatrixRF& a, const MatrixRF& b);
  friend bool operator==(const MatrixRF& a, const MatrixRF& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  std::vector<std::vector<std::string>> to_strings() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<RationalFunction> e_;
};

/// Standard Kronecker product: (A kron B)[(i,k),(j,l)] = A[i,j] B[k,l], row index i*rows(B)+k.
MatrixRF kron(const MatrixRF& a, const MatrixRF& b);

}  // namespace diffgal

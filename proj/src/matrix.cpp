#include "diffgal/matrix.hpp"

#include <utility>

#include "diffgal/errors.hpp"

namespace diffgal {

MatrixRF::MatrixRF(std::size_t rows, std::size_t cols, std::vector<RationalFunction> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
  if (e_.size() != rows_ * cols_) throw DimensionMismatch("entry count does not match shape");
}

MatrixRF::MatrixRF(std::initializer_list<std::initializer_list<RationalFunction>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
    e_.insert(e_.end(), r.begin(), r.end());
  }
}

MatrixRF MatrixRF::identity(std::size_t n) {
  MatrixRF m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = RationalFunction(1);
  return m;
}

MatrixRF MatrixRF::diagonal(const std::vector<RationalFunction>& d) {
  MatrixRF m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

MatrixRF MatrixRF::column(const std::vector<RationalFunction>& v) { return MatrixRF(v.size(), 1, v); }

bool MatrixRF::is_zero() const {
  for (const auto& v : e_)
    if (!v.is_zero()) return false;
  return true;
}

bool MatrixRF::is_constant() const {
  for (const auto& v : e_)
    if (!v.is_constant()) return false;
  return true;
}

bool MatrixRF::is_identity() const { return is_square() && *this == identity(rows_); }

MatrixRF MatrixRF::transpose() const {
  MatrixRF t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

MatrixRF MatrixRF::map(const std::function<RationalFunction(const RationalFunction&)>& f) const {
  MatrixRF r(rows_, cols_);
  for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = f(e_[k]);
  return r;
}

RationalFunction MatrixRF::trace() const {
  if (!is_square()) throw DimensionMismatch("trace of a non-square matrix");
  RationalFunction t;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

RationalFunction MatrixRF::det() const {
  if (!is_square()) throw DimensionMismatch("determinant of a non-square matrix");
  MatrixRF a = *this;
  const std::size_t n = rows_;
  RationalFunction d(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) return RationalFunction();
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      d = -d;
    }
    d *= a(c, c);
    const RationalFunction inv = a(c, c).inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c).is_zero()) continue;
      const RationalFunction f = a(r, c) * inv;
      for (std::size_t j = c + 1; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return d;
}

MatrixRF MatrixRF::inverse() const {
  if (!is_square()) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = rows_;
  MatrixRF a = *this;
  MatrixRF inv = identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) throw SingularInput("matrix is not invertible");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    const RationalFunction s = a(c, c).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) *= s;
      inv(c, j) *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c).is_zero()) continue;
      const RationalFunction f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        if (!a(c, j).is_zero()) a(r, j) -= f * a(c, j);
        if (!inv(c, j).is_zero()) inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

std::vector<RationalFunction> MatrixRF::vec() const {
  std::vector<RationalFunction> v;
  v.reserve(e_.size());
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

MatrixRF MatrixRF::unvec(const std::vector<RationalFunction>& v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) throw DimensionMismatch("vector length does not match shape");
  MatrixRF m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = v[j * rows + i];
  return m;
}

MatrixRF& MatrixRF::operator+=(const MatrixRF& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sum shapes differ");
  for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
  return *this;
}

MatrixRF& MatrixRF::operator-=(const MatrixRF& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix difference shapes differ");
  for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
  return *this;
}

MatrixRF& MatrixRF::operator*=(const RationalFunction& c) {
  for (auto& v : e_) v *= c;
  return *this;
}

MatrixRF operator*(const MatrixRF& a, const MatrixRF& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shapes differ");
  MatrixRF r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const RationalFunction& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) r(i, j) += aik * b(k, j);
    }
  return r;
}

std::vector<std::vector<std::string>> MatrixRF::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).to_string());
  return out;
}

MatrixRF kron(const MatrixRF& a, const MatrixRF& b) {
  MatrixRF r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (!b(k, l).is_zero()) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return r;
}

}  // namespace diffgal

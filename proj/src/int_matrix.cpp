#include "diffgal/int_matrix.hpp"

#include <sstream>
#include <utility>

#include "diffgal/errors.hpp"

namespace diffgal {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ragged integer matrix literal");
    for (long v : r) e_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<Integer> IntMatrix::row(std::size_t i) const {
  return {e_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          e_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Integer IntMatrix::det() const {
  if (rows_ != cols_) throw DimensionMismatch("determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix a = *this;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = std::move(v);
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("integer matrix product shapes differ");
  IntMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
    }
  return r;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

std::vector<Integer> SmithForm::invariants() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(S(i, i));
  return out;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[dst] -= f * row[src]
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= f * m(src, j);
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= f * m(i, src);
}

}  // namespace

SmithForm snf(const IntMatrix& m) {
  const std::size_t R = m.rows();
  const std::size_t C = m.cols();
  SmithForm out{IntMatrix::identity(R), m, IntMatrix::identity(C), 0};
  IntMatrix& S = out.S;
  IntMatrix& U = out.U;
  IntMatrix& V = out.V;

  std::size_t t = 0;
  while (t < R && t < C) {
    // Pivot: smallest nonzero magnitude in the trailing block.
    std::size_t pi = R, pj = C;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (S(i, j) != 0 && (pi == R || abs(S(i, j)) < abs(S(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == R) break;
    swap_rows(S, t, pi);
    swap_rows(U, t, pi);
    swap_cols(S, t, pj);
    swap_cols(V, t, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (S(i, t) == 0) continue;
        Integer f;
        mpz_fdiv_q(f.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
        add_row(S, i, t, f);
        add_row(U, i, t, f);
        if (S(i, t) != 0) {
          swap_rows(S, t, i);
          swap_rows(U, t, i);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (S(t, j) == 0) continue;
        Integer f;
        mpz_fdiv_q(f.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
        add_col(S, j, t, f);
        add_col(V, j, t, f);
        if (S(t, j) != 0) {
          swap_cols(S, t, j);
          swap_cols(V, t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // Divisibility: if some entry of the trailing block is not a multiple
      // of the pivot, fold its row into row t and go again.
      for (std::size_t i = t + 1; i < R && clean; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t()) == 0) {
            add_row(S, t, i, Integer(-1));
            add_row(U, t, i, Integer(-1));
            clean = false;
            break;
          }
    }
    if (S(t, t) < 0) {
      for (std::size_t j = 0; j < C; ++j) S(t, j) = -S(t, j);
      for (std::size_t j = 0; j < R; ++j) U(t, j) = -U(t, j);
    }
    ++t;
  }
  out.rank = t;
  return out;
}

}  // namespace diffgal

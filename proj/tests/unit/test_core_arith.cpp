#include <doctest.h>

#include <random>

#include "diffgal/errors.hpp"
#include "diffgal/int_matrix.hpp"
#include "diffgal/matrix.hpp"
#include "generators.hpp"

using namespace diffgal;
using diffgal::testing::random_nonzero_rf;
using diffgal::testing::random_rf;

namespace {

const Polynomial X = Polynomial::x();

Polynomial P(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long k : c) v.emplace_back(k);
  return Polynomial(std::move(v));
}

// Resultant as the determinant of the Sylvester matrix.
Rational sylvester_resultant(const Polynomial& a, const Polynomial& b) {
  const int m = a.degree(), n = b.degree();
  const std::size_t size = static_cast<std::size_t>(m + n);
  MatrixRF S(size, size);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) S(static_cast<std::size_t>(i), static_cast<std::size_t>(i + k)) = a.coeff(m - k);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k)
      S(static_cast<std::size_t>(n + i), static_cast<std::size_t>(i + k)) = b.coeff(n - k);
  return S.det().constant_value();
}

}  // namespace

TEST_CASE("rf_normalize examples") {
  CHECK(rf_normalize(P({2, 2}), P({2})) == RationalFunction(P({1, 1})));
  CHECK(rf_normalize(P({-1, 0, 1}), P({-1, 1})) == RationalFunction(P({1, 1})));
  const RationalFunction z = rf_normalize(Polynomial{}, P({0, 0, 0, 1}));
  CHECK(z.is_zero());
  CHECK(z.den().is_one());
  CHECK_THROWS_AS(rf_normalize(X, Polynomial{}), ZeroDenominator);
}

TEST_CASE("den is monic and reduced") {
  const RationalFunction f = rf_normalize(P({3, 3}), P({6, 0, 6}));
  CHECK(f.den().leading() == 1);
  CHECK(gcd(f.num(), f.den()).is_one());
  CHECK(f.num() == P({1, 1}) * Rational(1, 2));
}

TEST_CASE("order_at_zero examples") {
  CHECK(order_at_zero(rf_normalize(P({0, 0, 1}), P({1, 1}))) == 2);
  CHECK(order_at_zero(rf_normalize(P({1}), X)) == -1);
  CHECK(order_at_zero(RationalFunction(P({1, 1}))) == 0);
  CHECK_THROWS_AS(order_at_zero(RationalFunction()), ZeroInput);
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const RationalFunction a = random_rf(rng), b = random_rf(rng), c = random_rf(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a - a == RationalFunction());
    if (!a.is_zero()) CHECK(a * a.inverse() == RationalFunction(1));
  }
}

TEST_CASE("rf_normalize is idempotent") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const RationalFunction f = random_rf(rng);
    CHECK(rf_normalize(f.num(), f.den()) == f);
  }
}

TEST_CASE("order_at_zero is additive") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    RationalFunction f = random_nonzero_rf(rng), g = random_nonzero_rf(rng);
    f *= RationalFunction(pow(X, static_cast<unsigned>(trial % 3)));
    g /= RationalFunction(pow(X, static_cast<unsigned>(trial % 2)));
    CHECK(order_at_zero(f * g) == order_at_zero(f) + order_at_zero(g));
  }
}

TEST_CASE("polynomial helpers") {
  CHECK(P({1, 2, 1}).shift(Rational(-1)) == P({0, 0, 1}));
  CHECK(P({1, 1}).dilate(Rational(3)) == P({1, 3}));
  CHECK(P({1, 1}).substitute_power(3) == P({1, 0, 0, 1}));
  CHECK(gcd(P({-1, 0, 1}), P({1, 2, 1})) == P({1, 1}));
  auto [q, r] = divmod(P({1, 0, 0, 1}), P({1, 1}));
  CHECK(q == P({1, -1, 1}));
  CHECK(r.is_zero());
  CHECK(squarefree_part(P({1, 2, 1}) * X) == P({0, 1, 1}));
  const std::vector<Rational> xs{0, 1, 2}, ys{1, 2, 5};
  CHECK(interpolate(xs, ys) == P({1, 0, 1}));
}

TEST_CASE("resultant agrees with Sylvester determinant") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    Polynomial a = testing::random_nonzero_poly(rng, 4), b = testing::random_nonzero_poly(rng, 4);
    if (a.degree() < 1 || b.degree() < 1) continue;
    CHECK(resultant(a, b) == sylvester_resultant(a, b));
  }
  CHECK(resultant(X, P({-3, 1})) == Rational(-3));
}

TEST_CASE("rational roots and divisors") {
  CHECK(positive_divisors(Integer(12)) == std::vector<Integer>{1, 2, 3, 4, 6, 12});
  // 2^61 - 1 is prime, so the product needs a real factorization step.
  const Integer big = Integer("2305843009213693951") * 1000003;
  CHECK(positive_divisors(big).size() == 4);
  const Polynomial p = P({-1, 1}) * P({-1, 1}) * P({3, 2}) * X * P({1, 0, 1});
  const auto roots = rational_roots(p);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == std::pair<Rational, int>{Rational(-3, 2), 1});
  CHECK(roots[1] == std::pair<Rational, int>{Rational(0), 1});
  CHECK(roots[2] == std::pair<Rational, int>{Rational(1), 2});
}

TEST_CASE("matrix inverse and determinant") {
  const RationalFunction x = RationalFunction::x();
  const MatrixRF A{{x, RationalFunction(1)}, {RationalFunction(2), x + RationalFunction(1)}};
  CHECK(A * A.inverse() == MatrixRF::identity(2));
  CHECK(A.det() == x * (x + RationalFunction(1)) - RationalFunction(2));
  CHECK_THROWS_AS(MatrixRF({{x, x}, {x, x}}).inverse(), SingularInput);
  CHECK(MatrixRF::unvec(A.vec(), 2, 2) == A);
  CHECK(A.vec()[1] == RationalFunction(2));
}

TEST_CASE("kron follows the vec identity") {
  // vec(X Y Z) = (Z^T kron X) vec(Y)
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 5; ++trial) {
    MatrixRF Xm(2, 2), Y(2, 2), Z(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        Xm(i, j) = random_rf(rng, 1);
        Y(i, j) = random_rf(rng, 1);
        Z(i, j) = random_rf(rng, 1);
      }
    const MatrixRF lhs = MatrixRF::column((Xm * Y * Z).vec());
    const MatrixRF rhs = kron(Z.transpose(), Xm) * MatrixRF::column(Y.vec());
    CHECK(lhs == rhs);
  }
}

namespace {

void check_smith(const IntMatrix& m, const SmithForm& f) {
  CHECK(f.U * m * f.V == f.S);
  if (f.U.rows() > 0) CHECK(abs(f.U.det()) == 1);
  if (f.V.rows() > 0) CHECK(abs(f.V.det()) == 1);
  for (std::size_t i = 0; i < f.S.rows(); ++i)
    for (std::size_t j = 0; j < f.S.cols(); ++j)
      if (i != j) CHECK(f.S(i, j) == 0);
  const auto inv = f.invariants();
  for (std::size_t i = 0; i < inv.size(); ++i) {
    CHECK(inv[i] > 0);
    if (i + 1 < inv.size()) CHECK(inv[i + 1] % inv[i] == 0);
  }
}

}  // namespace

TEST_CASE("snf examples") {
  const IntMatrix id = IntMatrix::identity(2);
  const SmithForm f1 = snf(id);
  check_smith(id, f1);
  CHECK(f1.S == id);

  const IntMatrix m2{{2, 0}, {0, 3}};
  const SmithForm f2 = snf(m2);
  check_smith(m2, f2);
  CHECK(f2.S == IntMatrix{{1, 0}, {0, 6}});

  const IntMatrix m3{{-2, 2}};
  const SmithForm f3 = snf(m3);
  check_smith(m3, f3);
  CHECK(f3.S == IntMatrix{{2, 0}});
}

TEST_CASE("snf round trip on random matrices") {
  std::mt19937_64 rng(16);
  std::uniform_int_distribution<int> dim(1, 5), val(-9, 9);
  for (int trial = 0; trial < 80; ++trial) {
    IntMatrix m(static_cast<std::size_t>(dim(rng)), static_cast<std::size_t>(dim(rng)));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = val(rng) * (trial % 4 == 0 ? 2 : 1);
    check_smith(m, snf(m));
  }
}

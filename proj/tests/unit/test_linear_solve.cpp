#include <doctest.h>

#include <random>

#include "diffgal/linear_solve.hpp"

using namespace diffgal;

namespace {

LinearSystemQ random_system(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int mag) {
  std::uniform_int_distribution<int> val(-mag, mag), den(1, 4), sparse(0, 3);
  LinearSystemQ sys;
  sys.cols = cols;
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<Rational> row(cols);
    for (auto& v : row)
      if (sparse(rng) != 0) {
        v = Rational(val(rng), den(rng));
        v.canonicalize();
      }
    Rational b(val(rng), den(rng));
    b.canonicalize();
    sys.add_row(std::move(row), b);
  }
  return sys;
}

// Make some rows combinations of others so the system is rank deficient
// but still consistent.
void add_dependent_rows(std::mt19937_64& rng, LinearSystemQ& sys, std::size_t count) {
  std::uniform_int_distribution<std::size_t> pick(0, sys.rows.size() - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t a = pick(rng), b = pick(rng);
    const Rational ca(coef(rng)), cb(coef(rng), 7);
    std::vector<Rational> row(sys.cols);
    for (std::size_t j = 0; j < sys.cols; ++j) row[j] = ca * sys.rows[a][j] + cb * sys.rows[b][j];
    sys.add_row(std::move(row), ca * sys.rhs[a] + cb * sys.rhs[b]);
  }
}

}  // namespace

TEST_CASE("rational reconstruction") {
  const Integer m = Integer(1000003) * 999983;
  Rational out;
  const Rational v(-17, 23);
  Integer inv;
  Integer d = 23;
  mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
  Integer r = (Integer(-17) * inv) % m;
  if (r < 0) r += m;
  REQUIRE(rational_reconstruct(r, m, out));
  CHECK(out == v);
}

TEST_CASE("modular solver matches exact Gauss-Jordan") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::size_t> dim(1, 9);
  int consistent = 0, inconsistent = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t rows = dim(rng), cols = dim(rng);
    LinearSystemQ sys = random_system(rng, rows, cols, trial % 3 == 0 ? 1000 : 4);
    if (trial % 2 == 0) add_dependent_rows(rng, sys, 3);
    const LinearSolution fast = solve_linear(sys);
    const LinearSolution slow = solve_linear_exact(sys);
    CHECK(fast.consistent == slow.consistent);
    CHECK(fast.rank == slow.rank);
    CHECK(fast.particular == slow.particular);
    CHECK(fast.kernel == slow.kernel);
    (fast.consistent ? consistent : inconsistent)++;
  }
  CHECK(consistent > 20);
  CHECK(inconsistent > 20);
}

TEST_CASE("large entries need many primes") {
  LinearSystemQ sys;
  sys.cols = 2;
  Rational big(Integer("123456789012345678901234567890"), Integer("98765432109876543211"));
  big.canonicalize();
  sys.add_row({Rational(1), big}, Rational(3));
  sys.add_row({big, Rational(-1)}, Rational(1, 7));
  const LinearSolution s = solve_linear(sys);
  REQUIRE(s.consistent);
  CHECK(s.particular == solve_linear_exact(sys).particular);
}

TEST_CASE("empty and zero systems") {
  LinearSystemQ sys;
  sys.cols = 3;
  sys.add_row({Rational(0), Rational(0), Rational(0)}, Rational(0));
  const LinearSolution s = solve_linear(sys);
  CHECK(s.consistent);
  CHECK(s.kernel.size() == 3);
  LinearSystemQ bad;
  bad.cols = 1;
  bad.add_row({Rational(0)}, Rational(1));
  CHECK_FALSE(solve_linear(bad).consistent);
}

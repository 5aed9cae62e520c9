#include <doctest.h>

#include <random>

#include "diffgal/errors.hpp"
#include "diffgal/rational_solver.hpp"
#include "generators.hpp"

using namespace diffgal;

namespace {

const RationalFunction x = RationalFunction::x();
const Polynomial px = Polynomial::x();

Polynomial lin(long a) { return Polynomial{Rational(-a), Rational(1)}; }  // x - a

const OperatorCase S = OperatorCase::shift();
const OperatorCase Q2 = OperatorCase::qdilation(Rational(2));
const OperatorCase M2 = OperatorCase::mahler(Rational(2));

bool divides(const Polynomial& d, const Polynomial& p) { return divmod(p, d).second.is_zero(); }

RationalFunction tele(const OperatorCase& op, const RationalFunction& b) {
  return RationalFunction(op.mu()) * apply_sigma(op, b) - b;
}

// Random b whose denominator avoids x for case Q (x-poles are allowed but
// keep the degree small).
RationalFunction random_b(std::mt19937_64& rng, const OperatorCase& op) {
  std::uniform_int_distribution<int> root(-4, 4), deg(0, 2), xp(0, 2);
  Polynomial den = Polynomial::constant(Rational(1));
  for (int i = deg(rng); i > 0; --i) {
    const int r = root(rng);
    den *= (op.tag == Case::Q && r == 0) ? lin(3) : lin(r);
  }
  if (op.tag == Case::Q) den *= Polynomial::monomial(Rational(1), xp(rng));
  return rf_normalize(testing::random_poly(rng, 3), den);
}

}  // namespace

TEST_CASE("dispersion examples") {
  CHECK(dispersion(px, lin(3), S, 0) == std::vector<int>{3});
  CHECK(dispersion(lin(1), lin(4), Q2, 10) == std::vector<int>{2});
  // root 2 of p1 reaches the root 16 of p2 after two squarings
  CHECK(dispersion(lin(2), lin(16), M2, 5) == std::vector<int>{2});
  CHECK(dispersion(lin(16), lin(2), M2, 5).empty());
  CHECK(dispersion(px * lin(1), lin(-4) * lin(6), S, 0) == std::vector<int>{5, 6});
  CHECK(dispersion(lin(2), lin(2), S, 0) == std::vector<int>{0});
  CHECK(dispersion(lin(-1), lin(5), S, 0) == std::vector<int>{6});
  CHECK_THROWS_AS(dispersion(Polynomial(), px, S, 0), ZeroInput);
}

TEST_CASE("dispersion agrees with a direct scan") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> root(-8, 8);
  for (int t = 0; t < 30; ++t) {
    Polynomial a = lin(root(rng)) * lin(root(rng)), b = lin(root(rng)) * Polynomial{Rational(1), Rational(0), Rational(1)};
    std::vector<int> direct;
    for (int h = 0; h <= 20; ++h)
      if (gcd(a, b.shift(Rational(h))).degree() > 0) direct.push_back(h);
    CHECK(dispersion(a, b, S, 0) == direct);
  }
}

TEST_CASE("universal denominator examples") {
  const SolverBounds bounds;
  const MatrixRF one{{RationalFunction(1)}};
  const Polynomial u = universal_denominator(one, {RationalFunction(1) / (x * (x + RationalFunction(1)))}, S, bounds);
  CHECK(divides(px, u));
  CHECK(divides(px, universal_denominator(one, {RationalFunction(1) / x}, Q2, bounds)));
  const MatrixRF cm{{RationalFunction(2), RationalFunction(1)}, {RationalFunction(0), RationalFunction(3)}};
  for (const auto& op : {S, Q2, M2})
    CHECK(universal_denominator(cm, {x * x, RationalFunction(1)}, op, bounds).is_one());
}

TEST_CASE("solve examples") {
  const SolverBounds bounds;
  const MatrixRF one{{RationalFunction(1)}};
  const MatrixRF A{{x, RationalFunction(1)}, {RationalFunction(0), RationalFunction(2)}};
  for (const auto& op : {S, Q2, M2}) {
    const SolverOutcome r = solve_rational_system(A, {RationalFunction(0), RationalFunction(0)}, op, bounds);
    REQUIRE(r.kind == Outcome::Found);
    CHECK(r.y[0].is_zero());
    CHECK(r.y[1].is_zero());
  }
  const SolverOutcome r1 = solve_rational_system(one, {RationalFunction(1) / (x * (x + RationalFunction(1)))}, S, bounds);
  REQUIRE(r1.kind == Outcome::Found);
  CHECK((r1.y[0] + RationalFunction(1) / x).is_constant());
  CHECK(r1.tag == kCompleteTag);
  const SolverOutcome r2 = solve_rational_system(one, {RationalFunction(1) / x}, S, bounds);
  CHECK(r2.kind == Outcome::NoSolution);
  CHECK(r2.tag == kCompleteTag);
  CHECK_THROWS_AS(solve_rational_system(MatrixRF{{RationalFunction(0)}}, {RationalFunction(1)}, S, bounds), SingularInput);
}

TEST_CASE("telescope examples") {
  const SolverBounds bounds;
  const SolverOutcome a = telescope_scalar(RationalFunction(1) / (x * (x + RationalFunction(1))), S, false, bounds);
  REQUIRE(a.kind == Outcome::Found);
  CHECK(a.y[0] == -RationalFunction(1) / x);

  const SolverOutcome b = telescope_scalar(x, Q2, false, bounds);
  REQUIRE(b.kind == Outcome::Found);
  CHECK(b.y[0] == x);

  const SolverOutcome c = telescope_scalar(RationalFunction(1), Q2, true, bounds);
  REQUIRE(c.kind == Outcome::Found);
  CHECK(c.y[0].is_zero());
  REQUIRE(c.params.size() == 1);
  CHECK(c.params[0] == 1);

  const SolverOutcome d = telescope_scalar(RationalFunction(1), Q2, false, bounds);
  CHECK(d.kind == Outcome::NoSolution);
  CHECK(d.tag == kCompleteTag);

  const SolverOutcome e = telescope_scalar(RationalFunction(1) / x, S, false, bounds);
  CHECK(e.kind == Outcome::NoSolution);
  CHECK(e.tag == kCompleteTag);

  // Harmonic-type sums that do not telescope.
  CHECK(telescope_scalar(RationalFunction(1) / (x * x), S, false, bounds).kind == Outcome::NoSolution);
  CHECK(telescope_scalar(RationalFunction(1) / (x - RationalFunction(1)), Q2, false, bounds).kind == Outcome::NoSolution);
}

TEST_CASE("telescoper recovers b up to a constant") {
  std::mt19937_64 rng(2024);
  const SolverBounds bounds;
  const OperatorCase Qh = OperatorCase::qdilation(Rational(-1, 3));
  for (int t = 0; t < 200; ++t) {
    const OperatorCase& op = t % 3 == 0 ? S : (t % 3 == 1 ? Q2 : Qh);
    const RationalFunction b = random_b(rng, op);
    const SolverOutcome r = telescope_scalar(tele(op, b), op, false, bounds);
    REQUIRE(r.kind == Outcome::Found);
    CHECK((r.y[0] - b).is_constant());
    CHECK(r.tag == kCompleteTag);
  }
}

TEST_CASE("different seeds differ by a constant") {
  std::mt19937_64 rng(77);
  const SolverBounds bounds;
  for (int t = 0; t < 30; ++t) {
    const OperatorCase& op = t % 2 ? S : Q2;
    const RationalFunction g = tele(op, random_b(rng, op));
    const SolverOutcome a = telescope_scalar(g, op, false, bounds, 1 + static_cast<std::uint64_t>(t));
    const SolverOutcome b = telescope_scalar(g, op, false, bounds, 1000 + static_cast<std::uint64_t>(t));
    REQUIRE(a.kind == Outcome::Found);
    REQUIRE(b.kind == Outcome::Found);
    CHECK((a.y[0] - b.y[0]).is_constant());
    // the homogeneous part is exactly the constants
    REQUIRE(a.homogeneous.size() == 1);
    CHECK(a.homogeneous[0].y[0].is_constant());
    CHECK(!a.homogeneous[0].y[0].is_zero());
  }
}

TEST_CASE("system and scalar solvers agree") {
  std::mt19937_64 rng(5);
  const SolverBounds bounds;
  const MatrixRF one{{RationalFunction(1)}};
  for (int t = 0; t < 40; ++t) {
    const OperatorCase& op = t % 2 ? S : Q2;
    // half the instances telescope, half are random right sides
    const RationalFunction g = t % 4 < 2 ? tele(op, random_b(rng, op)) : testing::random_nonzero_rf(rng, 2);
    const SolverOutcome a = telescope_scalar(g, op, false, bounds);
    const SolverOutcome b = solve_rational_system(one, {g}, op, bounds);
    CHECK(a.kind == b.kind);
    if (a.kind == Outcome::Found) CHECK((a.y[0] - b.y[0]).is_constant());
  }
}

TEST_CASE("coupled systems") {
  const SolverBounds bounds;
  std::mt19937_64 rng(9);
  // Solutions planted through a random constant-plus-x coupling.
  for (int t = 0; t < 20; ++t) {
    const OperatorCase& op = t % 2 ? S : Q2;
    const MatrixRF M{{RationalFunction(1), RationalFunction(1)}, {RationalFunction(-1), RationalFunction(2)}};
    const std::vector<RationalFunction> y{random_b(rng, op), random_b(rng, op)};
    const MatrixRF Y = MatrixRF::column(y);
    const MatrixRF c = apply_sigma(op, Y) - M * Y;
    const SolverOutcome r = solve_rational_system(M, c.entries(), op, bounds);
    REQUIRE(r.kind == Outcome::Found);
    CHECK(r.tag == kCompleteTag);
    // M - I is invertible and constant: the homogeneous system has no nonzero rational solution? Not in
    // general; compare through the equation instead.
    const MatrixRF Yr = MatrixRF::column(r.y);
    CHECK(apply_sigma(op, Yr) - M * Yr == c);
  }
  // Triangular coupling where the lower block feeds the upper one.
  const MatrixRF M{{RationalFunction(1), RationalFunction(1) / x}, {RationalFunction(0), RationalFunction(1)}};
  const SolverOutcome r = solve_rational_system(M, {RationalFunction(0), RationalFunction(1)}, S, bounds);
  // y2 = x + c, then sigma(y1) - y1 = 1 + c/x forces c = 0
  REQUIRE(r.kind == Outcome::Found);
  CHECK(r.tag == kCompleteTag);
  for (const auto& h : r.homogeneous) CHECK(h.y[1].is_zero());
}

TEST_CASE("parameters in the right side") {
  const SolverBounds bounds;
  // sigma(y) - y = 1/x + lambda/(x+1) is solvable for lambda = -1 only
  RationalSystem sys{S, MatrixRF{{RationalFunction(1)}}, MatrixRF{{RationalFunction(1)}}, {RationalFunction(1) / x},
                     {{RationalFunction(1) / (x + RationalFunction(1))}}};
  const SolverOutcome r = solve(sys, bounds);
  REQUIRE(r.kind == Outcome::Found);
  CHECK(r.params[0] == -1);
  CHECK((r.y[0] + RationalFunction(1) / x).is_constant());
}

TEST_CASE("mahler outcomes") {
  const SolverBounds bounds;
  std::mt19937_64 rng(31);
  // planted solutions are found
  for (int t = 0; t < 15; ++t) {
    std::uniform_int_distribution<int> r(2, 5);
    const RationalFunction b =
        rf_normalize(testing::random_poly(rng, 2), t % 3 == 0 ? Polynomial::constant(Rational(1)) : lin(r(rng)));
    const SolverOutcome out = telescope_scalar(tele(M2, b), M2, false, bounds);
    REQUIRE(out.kind == Outcome::Found);
    CHECK(out.y[0] == b);  // q sigma(b) = b has no nonzero rational solution
    CHECK(out.tag == kBoundedTag);
  }
  // poles on roots of unity, which are periodic under x -> x^2
  for (const RationalFunction& b : {RationalFunction(1) / (x + RationalFunction(1)),
                                    RationalFunction(1) / (x - RationalFunction(1)),
                                    x / (x * x + x + RationalFunction(1))}) {
    const SolverOutcome out = telescope_scalar(tele(M2, b), M2, false, bounds);
    REQUIRE(out.kind == Outcome::Found);
    CHECK(out.y[0] == b);
  }
  // Never NoSolution without a local obstruction.
  for (int t = 0; t < 40; ++t) {
    const RationalFunction g = testing::random_nonzero_rf(rng, 2);
    const SolverOutcome out = telescope_scalar(g, M2, false, bounds);
    if (out.kind == Outcome::NoSolution) CHECK(out.tag == kLocalObstructionTag);
    else CHECK(out.tag == kBoundedTag);
  }
  // 2 y(x^2) = y + x: order at 0 would need 2v = min(v, 1) -> impossible
  const SolverOutcome ob = telescope_scalar(x, M2, false, bounds);
  CHECK(ob.kind == Outcome::NoSolution);
  CHECK(ob.tag == kLocalObstructionTag);
  // y(x^2) = y + 1/x - pole orders cannot balance at 0
  const SolverOutcome ob2 = solve_rational_system(MatrixRF{{RationalFunction(1)}}, {RationalFunction(1) / x}, M2, bounds);
  CHECK(ob2.kind == Outcome::NoSolution);
  CHECK(ob2.tag == kLocalObstructionTag);
  // y(x^2) = y + (x^2 - x): solvable by y = x
  const SolverOutcome ok = solve_rational_system(MatrixRF{{RationalFunction(1)}}, {x * x - x}, M2, bounds);
  REQUIRE(ok.kind == Outcome::Found);
  CHECK((ok.y[0] - x).is_constant());
}

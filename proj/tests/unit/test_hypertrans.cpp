#include <doctest.h>

#include <chrono>
#include <random>

#include "../common/instances.hpp"
#include "diffgal/errors.hpp"
#include "diffgal/hypertrans.hpp"

using namespace diffgal;
using Kind = ScalarVerdict::Kind;

namespace {

const RationalFunction x = RationalFunction::x();
RationalFunction c(long v) { return RationalFunction(v); }

const OperatorCase S = OperatorCase::shift();
const OperatorCase Q2 = OperatorCase::qdilation(Rational(2));
const OperatorCase M2 = OperatorCase::mahler(Rational(2));

Polynomial xpow(int i) { return Polynomial::monomial(Rational(1), i); }

}  // namespace

TEST_CASE("scalar classification examples") {
  auto v = scalar_classify(S, c(2), {});
  REQUIRE(v.kind == Kind::SatisfiesLDE);
  CHECK(v.b->is_zero());

  const auto t0 = std::chrono::steady_clock::now();
  v = scalar_classify(S, x, {});
  CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(1));
  CHECK(v.kind == Kind::Hypertranscendental);
  CHECK(v.tag == kCompleteTag);

  v = scalar_classify(Q2, x, {});
  REQUIRE(v.kind == Kind::WType);
  CHECK(v.b->is_zero());
  CHECK(*v.c == 1);

  v = scalar_classify(S, x * (x + c(1)), {});
  CHECK(v.kind == Kind::Hypertranscendental);
  // sigma(a)/a-type input: a = (x+1)/x gives delta(a)/a = sigma(b) - b
  v = scalar_classify(S, (x + c(1)) / x, {});
  REQUIRE(v.kind == Kind::SatisfiesLDE);
  CHECK(*v.b == c(1) / x);
  CHECK_THROWS_AS(scalar_classify(S, c(0), {}), ZeroInput);
}

TEST_CASE("constants always satisfy an LDE") {
  for (const auto& op : {S, Q2, M2})
    for (long k : {-3L, 1L, 5L}) {
      const auto v = scalar_classify(op, c(k), {});
      REQUIRE(v.kind == Kind::SatisfiesLDE);
      CHECK(v.b->is_zero());
    }
}

TEST_CASE("verdict class is invariant under scalar gauges") {
  std::mt19937_64 rng(77);
  const std::vector<RationalFunction> as{x, x + c(2), (x + c(1)) / x, c(3), x * x};
  for (const auto& op : {S, Q2}) {
    for (const auto& a : as) {
      const auto base = scalar_classify(op, a, {});
      REQUIRE(base.kind != Kind::Unknown);
      for (int t = 0; t < 3; ++t) {
        const RationalFunction tt =
            RationalFunction(instances::small_poly(rng, true)) / RationalFunction(instances::small_poly(rng, false));
        const RationalFunction ga = apply_sigma(op, tt) * a / tt;
        const auto v = scalar_classify(op, ga, {});
        CHECK(v.kind == base.kind);
        if (v.kind == Kind::SatisfiesLDE) {
          // b shifts by delta(t)/t
          const RationalFunction b = *base.b + apply_delta(op, tt) / tt;
          CHECK(apply_sigma(op, b) - b == apply_delta(op, ga) / ga);
        }
      }
    }
  }
}

TEST_CASE("mahler scalar verdicts") {
  // 2 b(x^2) - b = 1 has the solution b = 1
  auto v = scalar_classify(M2, x, {});
  REQUIRE(v.kind == Kind::SatisfiesLDE);
  CHECK(*v.b == c(1));
  v = scalar_classify(M2, x + c(1), {});
  if (v.kind == Kind::Hypertranscendental) CHECK(v.tag == kLocalObstructionTag);
  CHECK(v.kind != Kind::WType);
}

TEST_CASE("reductive descriptors") {
  CHECK(parse_reductive_descriptor("SL(2)^3 x Gm x Z/2") == ReductiveDescriptor{3, 1, {Integer(2)}});
  CHECK(parse_reductive_descriptor("SL(2)") == ReductiveDescriptor{1, 0, {}});
  CHECK(parse_reductive_descriptor("1") == ReductiveDescriptor{});
  CHECK(parse_reductive_descriptor("SL(2)^2 x Gm^2").to_string() == "SL(2)^2 x Gm^2");
  CHECK_THROWS_AS(parse_reductive_descriptor("SL(3)"), UnsupportedDescriptor);
  CHECK_THROWS_AS(parse_reductive_descriptor("Gm x SO(3)"), UnsupportedDescriptor);
}

TEST_CASE("lift reports") {
  auto r = reductive_lift_report({1, 0, {}});
  CHECK(r.diff_transcendence_degree_lower_bound == 3);
  CHECK(r.conclusion.find("containing SL(2)(C)") != std::string::npos);
  for (int m = 1; m <= 4; ++m) CHECK(reductive_lift_report({m, 0, {}}).diff_transcendence_degree_lower_bound == 3 * m);
  r = reductive_lift_report({0, 1, {}});
  CHECK_FALSE(r.diff_transcendence_degree_lower_bound);
  CHECK(r.conclusion.find("vacuous") != std::string::npos);
  CHECK_FALSE(reductive_lift_report({1, 2, {}}).diff_transcendence_degree_lower_bound);
}

TEST_CASE("companion sl2 reports") {
  for (int i = 1; i <= 5; ++i) {
    const auto r = companion_sl2_report(S, xpow(i));
    REQUIRE(r);
    CHECK(r->diff_transcendence_degree_lower_bound == 3);
  }
  CHECK_FALSE(companion_sl2_report(S, Polynomial::constant(Rational(1))));
  CHECK_FALSE(companion_sl2_report(S, Polynomial{Rational(1), Rational(1)}));
  CHECK_FALSE(companion_sl2_report(Q2, xpow(1)));
  CHECK(companion_sl2_matrix(xpow(1)).det() == c(1));

  for (int m = 1; m <= 4; ++m) {
    std::vector<Polynomial> as;
    for (int i = 1; i <= m; ++i) as.push_back(xpow(i));
    const auto r = companion_block_report(S, as);
    REQUIRE(r);
    CHECK(r->diff_transcendence_degree_lower_bound == 3 * m);
  }
  CHECK_FALSE(companion_block_report(S, {xpow(1), xpow(1)}));
}

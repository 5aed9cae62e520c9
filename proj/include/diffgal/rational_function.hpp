#pragma once

#include <string>

#include "diffgal/polynomial.hpp"

namespace diffgal {

/// Element of Q(x) kept as num/den with gcd(num, den) = 1 and den monic.
/// Zero is 0/1, so structural equality is value equality.
class RationalFunction {
 public:
  RationalFunction() : den_(Polynomial::constant(Rational(1))) {}
  RationalFunction(const Rational& c) : num_(Polynomial::constant(c)), den_(Polynomial::constant(Rational(1))) {}
  RationalFunction(long c) : RationalFunction(Rational(c)) {}
  RationalFunction(const Polynomial& p) : num_(p), den_(Polynomial::constant(Rational(1))) {}

  static RationalFunction x() { return RationalFunction(Polynomial::x()); }

  const Polynomial& num() const noexcept { return num_; }
  const Polynomial& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return den_.is_one() && num_.is_constant(); }
  /// Value of a constant function; throws NonConstantInput otherwise.
  Rational constant_value() const;

  /// deg num - deg den (the negated order at infinity); throws on zero.
  int degree() const;
  RationalFunction inverse() const;
  Rational eval(const Rational& at) const;

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Canonical text accepted back by the expression parser.
  std::string to_string() const;

  friend RationalFunction rf_normalize(const Polynomial& num, const Polynomial& den);

 private:
  RationalFunction(Polynomial num, Polynomial den, bool) : num_(std::move(num)), den_(std::move(den)) {}
  Polynomial num_;
  Polynomial den_;
};

/// Reduced, den-monic representative of num/den. Throws ZeroDenominator.
RationalFunction rf_normalize(const Polynomial& num, const Polynomial& den);

/// Valuation at x = 0 (negative for a pole). Throws ZeroInput on f = 0.
int order_at_zero(const RationalFunction& f);

}  // namespace diffgal

#include "diffgal/rational_function.hpp"

#include "diffgal/errors.hpp"

namespace diffgal {

RationalFunction rf_normalize(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw ZeroDenominator();
  if (num.is_zero()) return RationalFunction();
  Polynomial g = gcd(num, den);
  Polynomial n = g.is_one() ? num : exact_div(num, g);
  Polynomial d = g.is_one() ? den : exact_div(den, g);
  const Rational lc = d.leading();
  if (lc != 1) {
    const Rational inv = 1 / lc;
    n *= inv;
    d *= inv;
  }
  return RationalFunction(std::move(n), std::move(d), true);
}

Rational RationalFunction::constant_value() const {
  if (!is_constant()) throw NonConstantInput("expected a constant, got " + to_string());
  return num_.coeff(0);
}

int RationalFunction::degree() const {
  if (is_zero()) throw ZeroInput("degree of zero rational function");
  return num_.degree() - den_.degree();
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw ZeroDenominator();
  return rf_normalize(den_, num_);
}

Rational RationalFunction::eval(const Rational& at) const {
  const Rational d = den_.eval(at);
  if (d == 0) throw ZeroDenominator();
  return num_.eval(at) / d;
}

RationalFunction RationalFunction::operator-() const { return RationalFunction(-num_, den_, true); }

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) return *this = rf_normalize(num_ + o.num_, den_);
  if (den_.is_one()) return *this = RationalFunction(num_ * o.den_ + o.num_, o.den_, true);
  if (o.den_.is_one()) return *this = RationalFunction(num_ + o.num_ * den_, den_, true);
  // a/b + c/d with g = gcd(b, d): only factors of g can cancel.
  const Polynomial g = gcd(den_, o.den_);
  const Polynomial b1 = exact_div(den_, g);
  const Polynomial d1 = exact_div(o.den_, g);
  Polynomial t = num_ * d1 + o.num_ * b1;
  if (t.is_zero()) return *this = RationalFunction();
  if (g.is_one()) return *this = RationalFunction(std::move(t), den_ * d1, true);
  const Polynomial h = gcd(t, g);
  if (h.is_one()) return *this = RationalFunction(std::move(t), den_ * d1, true);
  return *this = RationalFunction(exact_div(t, h), exact_div(den_, h) * d1, true);
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (is_zero() || o.is_zero()) return *this = RationalFunction();
  if (den_.is_one() && o.den_.is_one()) return *this = RationalFunction(num_ * o.num_, den_, true);
  // Cross-cancel: gcd(a, d) and gcd(c, b).
  const Polynomial g1 = gcd(num_, o.den_);
  const Polynomial g2 = gcd(o.num_, den_);
  Polynomial n = exact_div(num_, g1) * exact_div(o.num_, g2);
  Polynomial d = exact_div(den_, g2) * exact_div(o.den_, g1);
  const Rational lc = d.leading();
  if (lc != 1) {
    const Rational inv = 1 / lc;
    n *= inv;
    d *= inv;
  }
  return *this = RationalFunction(std::move(n), std::move(d), true);
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) { return *this *= o.inverse(); }

std::string RationalFunction::to_string() const {
  if (den_.is_one()) return num_.to_string();
  std::string n = num_.to_string();
  if (!num_.is_constant() || num_.leading() < 0) n = "(" + n + ")";
  return n + "/(" + den_.to_string() + ")";
}

int order_at_zero(const RationalFunction& f) {
  if (f.is_zero()) throw ZeroInput("order at zero of the zero function");
  return f.num().valuation() - f.den().valuation();
}

}  // namespace diffgal

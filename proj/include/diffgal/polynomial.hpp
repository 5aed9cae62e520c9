#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace diffgal {

using Integer = mpz_class;
using Rational = mpq_class;

/// Dense univariate polynomial over Q, coefficients stored lowest degree first.
/// The zero polynomial has no coefficients; otherwise the leading one is nonzero.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  Polynomial(std::initializer_list<Rational> coeffs);

  static Polynomial constant(const Rational& c);
  static Polynomial monomial(const Rational& c, int degree);
  static Polynomial x() { return monomial(Rational(1), 1); }

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_constant() const noexcept { return coeffs_.size() <= 1; }
  bool is_one() const;

  /// Coefficient of x^k, zero beyond the degree.
  Rational coeff(int k) const;
  const Rational& leading() const;
  std::span<const Rational> coefficients() const noexcept { return coeffs_; }

  /// Order of vanishing at 0; the zero polynomial is rejected.
  int valuation() const;

  Polynomial monic() const;
  Polynomial derivative() const;
  Rational eval(const Rational& at) const;

  /// p(x + a)
  Polynomial shift(const Rational& a) const;
  /// p(c x)
  Polynomial dilate(const Rational& c) const;
  /// p(x^k), k >= 1
  Polynomial substitute_power(int k) const;
  /// x^k p(1/x) with k = degree; constant term must be nonzero for an involution.
  Polynomial reversed() const;
  /// p / x^valuation
  Polynomial strip_x() const;

  /// Multiply by the lcm of coefficient denominators and divide by the content:
  /// the result has coprime integer coefficients and a positive leading one.
  std::vector<Integer> primitive_integer_coefficients() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Quotient and remainder; throws ZeroDenominator on a zero divisor.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
/// Exact quotient, assumes b | a.
Polynomial exact_div(const Polynomial& a, const Polynomial& b);
/// Monic gcd (zero only if both inputs are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);
Polynomial lcm(const Polynomial& a, const Polynomial& b);
Polynomial pow(const Polynomial& p, unsigned e);
Rational resultant(const Polynomial& a, const Polynomial& b);
/// Monic squarefree part.
Polynomial squarefree_part(const Polynomial& p);
/// Lagrange interpolation through (xs[i], ys[i]) with distinct xs.
Polynomial interpolate(std::span<const Rational> xs, std::span<const Rational> ys);

/// Fujiwara bound on the moduli of the roots, as a double (0 for constants).
double root_modulus_upper_bound(const Polynomial& p);
/// Lower bound on the moduli of the nonzero roots of p / x^valuation.
double root_modulus_lower_bound(const Polynomial& p);
/// log |r| for r != 0, safe for huge numerators and denominators.
double log_abs(const Rational& r);

/// Prime factorization of |n| > 0, primes ascending.
std::vector<std::pair<Integer, int>> factor_integer(const Integer& n);
/// All integer divisors of |n| > 0, positive, ascending.
std::vector<Integer> positive_divisors(const Integer& n);
/// Rational roots with multiplicity, sorted ascending by value.
std::vector<std::pair<Rational, int>> rational_roots(const Polynomial& p);

long euler_phi(long n);
/// d-th cyclotomic polynomial.
Polynomial cyclotomic(int d);

}  // namespace diffgal

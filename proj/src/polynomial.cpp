#include "diffgal/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "diffgal/errors.hpp"
#include "modpoly.hpp"

namespace diffgal {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial(std::vector<Rational>{c}); }

Polynomial Polynomial::monomial(const Rational& c, int degree) {
  if (c == 0) return {};
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

bool Polynomial::is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

Rational Polynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Rational(0);
  return coeffs_[static_cast<std::size_t>(k)];
}

const Rational& Polynomial::leading() const {
  if (coeffs_.empty()) throw ZeroInput("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

int Polynomial::valuation() const {
  if (coeffs_.empty()) throw ZeroInput("valuation of the zero polynomial");
  int v = 0;
  while (coeffs_[static_cast<std::size_t>(v)] == 0) ++v;
  return v;
}

Polynomial Polynomial::monic() const {
  if (coeffs_.empty()) return {};
  Polynomial r = *this;
  const Rational inv = 1 / coeffs_.back();
  for (auto& c : r.coeffs_) c *= inv;
  return r;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
  return Polynomial(std::move(d));
}

Rational Polynomial::eval(const Rational& at) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

Polynomial Polynomial::shift(const Rational& a) const {
  // Taylor shift by repeated synthetic division: O(n^2).
  std::vector<Rational> c = coeffs_;
  const std::size_t n = c.size();
  if (a == 0 || n <= 1) return *this;
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) c[j - 1] += a * c[j];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::dilate(const Rational& c) const {
  std::vector<Rational> r = coeffs_;
  Rational power = 1;
  for (auto& v : r) {
    v *= power;
    power *= c;
  }
  return Polynomial(std::move(r));
}

Polynomial Polynomial::substitute_power(int k) const {
  if (k == 1 || coeffs_.empty()) return *this;
  std::vector<Rational> r((coeffs_.size() - 1) * static_cast<std::size_t>(k) + 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i * static_cast<std::size_t>(k)] = coeffs_[i];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::reversed() const {
  std::vector<Rational> r(coeffs_.rbegin(), coeffs_.rend());
  return Polynomial(std::move(r));
}

Polynomial Polynomial::strip_x() const {
  if (coeffs_.empty()) return {};
  const int v = valuation();
  return Polynomial(std::vector<Rational>(coeffs_.begin() + v, coeffs_.end()));
}

std::vector<Integer> Polynomial::primitive_integer_coefficients() const {
  Integer den = 1;
  for (const auto& c : coeffs_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> out;
  out.reserve(coeffs_.size());
  Integer content = 0;
  for (const auto& c : coeffs_) {
    Integer v = c.get_num() * (den / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    out.push_back(std::move(v));
  }
  if (content == 0) return out;
  if (out.back() < 0) content = -content;
  for (auto& v : out) v /= content;
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(r));
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& v : coeffs_) v *= c;
  return *this;
}

namespace {

void append_monomial(std::ostringstream& os, const Rational& c, int k, const std::string& var, bool first) {
  Rational mag = abs(c);
  if (first) {
    if (c < 0) os << '-';
  } else {
    os << (c < 0 ? " - " : " + ");
  }
  if (k == 0) {
    os << mag.get_str();
    return;
  }
  if (mag != 1) os << mag.get_str() << '*';
  os << var;
  if (k > 1) os << '^' << k;
}

}  // namespace

std::string Polynomial::to_string(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    append_monomial(os, c, k, var, first);
    first = false;
  }
  return os.str();
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw ZeroDenominator();
  if (a.degree() < b.degree()) return {Polynomial{}, a};
  std::vector<Rational> rem(a.coefficients().begin(), a.coefficients().end());
  const int db = b.degree();
  const int dq = a.degree() - db;
  std::vector<Rational> quo(static_cast<std::size_t>(dq) + 1);
  const Rational inv = 1 / b.leading();
  const auto bc = b.coefficients();
  for (int k = dq; k >= 0; --k) {
    Rational t = rem[static_cast<std::size_t>(k + db)] * inv;
    if (t == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= t * bc[static_cast<std::size_t>(j)];
    quo[static_cast<std::size_t>(k)] = std::move(t);
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial exact_div(const Polynomial& a, const Polynomial& b) { return divmod(a, b).first; }

namespace {

Polynomial euclid_gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial u = a.monic();
  Polynomial v = b.monic();
  if (u.degree() < v.degree()) std::swap(u, v);
  while (!v.is_zero()) {
    Polynomial r = divmod(u, v).second.monic();
    u = std::move(v);
    v = std::move(r);
  }
  return u;
}

// Does c divide a in Z[x]? c primitive, both lowest degree first.
bool divides_z(const std::vector<Integer>& c, std::vector<Integer> a) {
  const std::size_t dc = c.size() - 1;
  Integer t;
  while (a.size() > dc) {
    if (!mpz_divisible_p(a.back().get_mpz_t(), c.back().get_mpz_t())) return false;
    mpz_divexact(t.get_mpz_t(), a.back().get_mpz_t(), c.back().get_mpz_t());
    const std::size_t off = a.size() - 1 - dc;
    for (std::size_t i = 0; i < dc; ++i) a[off + i] -= t * c[i];
    a.pop_back();
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a.empty();
}

// Multi-prime gcd over Z with CRT; the trial division makes the result exact.
std::optional<Polynomial> modular_gcd(const Polynomial& a, const Polynomial& b) {
  const std::vector<Integer> A = a.primitive_integer_coefficients();
  const std::vector<Integer> B = b.primitive_integer_coefficients();
  Integer g;
  mpz_gcd(g.get_mpz_t(), A.back().get_mpz_t(), B.back().get_mpz_t());
  int best = std::min(a.degree(), b.degree()) + 1;
  std::vector<Integer> H;
  Integer M;
  modp::ModPoly am, bm;
  for (const modp::u64 p : modp::large_primes()) {
    const modp::u64 ga = modp::mod_of(A.back(), p), gb = modp::mod_of(B.back(), p);
    if (ga == 0 || gb == 0) continue;
    am.clear();
    bm.clear();
    for (const auto& v : A) am.push_back(modp::mod_of(v, p));
    for (const auto& v : B) bm.push_back(modp::mod_of(v, p));
    modp::ModPoly G = modp::gcd(am, bm, p);
    const int d = static_cast<int>(G.size()) - 1;
    if (d == 0) return Polynomial::constant(Rational(1));
    if (d > best) continue;
    const modp::u64 gp = modp::mod_of(g, p);
    for (auto& v : G) v = modp::mulmod(v, gp, p);
    if (d < best) {
      best = d;
      H.resize(G.size());
      for (std::size_t i = 0; i < G.size(); ++i) H[i] = Integer(static_cast<unsigned long>(G[i]));
      M = Integer(static_cast<unsigned long>(p));
      continue;
    }
    // CRT: h' = h + M * ((G - h) M^{-1} mod p)
    const Integer P(static_cast<unsigned long>(p));
    Integer Minv;
    mpz_invert(Minv.get_mpz_t(), M.get_mpz_t(), P.get_mpz_t());
    const modp::u64 minv = Minv.get_ui();
    bool changed = false;
    for (std::size_t i = 0; i < H.size(); ++i) {
      const modp::u64 hp = modp::mod_of(H[i], p);
      const modp::u64 diff = G[i] >= hp ? G[i] - hp : G[i] + p - hp;
      const modp::u64 k = modp::mulmod(diff, minv, p);
      if (k != 0) {
        H[i] += M * Integer(static_cast<unsigned long>(k));
        changed = true;
      }
    }
    M *= P;
    if (changed) continue;
    // stable: symmetric residues, primitive part, trial division
    const Integer half = M / 2;
    std::vector<Integer> C = H;
    Integer content = 0;
    for (auto& v : C) {
      if (v > half) v -= M;
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    }
    for (auto& v : C) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), content.get_mpz_t());
    if (divides_z(C, A) && divides_z(C, B)) {
      std::vector<Rational> q(C.begin(), C.end());
      return Polynomial(std::move(q)).monic();
    }
  }
  return std::nullopt;
}

}  // namespace

const std::vector<modp::u64>& modp::large_primes() {
  static const std::vector<u64> primes = [] {
    std::vector<u64> out;
    Integer c = (Integer(1) << 62) - 1;
    while (out.size() < 400) {
      if (mpz_probab_prime_p(c.get_mpz_t(), 30)) out.push_back(c.get_ui());
      c -= 2;
    }
    return out;
  }();
  return primes;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial::constant(Rational(1));
  if (a.degree() + b.degree() <= 4) return euclid_gcd(a, b);
  if (auto g = modular_gcd(a, b)) return *g;
  return euclid_gcd(a, b);
}

Polynomial lcm(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return (exact_div(a, gcd(a, b)) * b).monic();
}

Polynomial pow(const Polynomial& p, unsigned e) {
  Polynomial result = Polynomial::constant(Rational(1));
  Polynomial base = p;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

Rational resultant(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  if (a.degree() == 0) {
    Rational r = 1;
    for (int i = 0; i < b.degree(); ++i) r *= a.leading();
    return r;
  }
  if (b.degree() == 0) {
    Rational r = 1;
    for (int i = 0; i < a.degree(); ++i) r *= b.leading();
    return r;
  }
  // res(a, b) = (-1)^(deg a deg b) lc(b)^(deg a - deg r) res(b, r), r = a mod b
  Polynomial r = divmod(a, b).second;
  if (r.is_zero()) return 0;
  Rational sign = ((a.degree() * b.degree()) % 2 == 0) ? 1 : -1;
  Rational factor = 1;
  for (int i = 0; i < a.degree() - r.degree(); ++i) factor *= b.leading();
  return sign * factor * resultant(b, r);
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.is_zero()) return {};
  return exact_div(p, gcd(p, p.derivative())).monic();
}

Polynomial interpolate(std::span<const Rational> xs, std::span<const Rational> ys) {
  // Newton divided differences.
  const std::size_t n = xs.size();
  std::vector<Rational> dd(ys.begin(), ys.end());
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  Polynomial result;
  for (std::size_t i = n; i-- > 0;) {
    result = result * Polynomial{-xs[i], Rational(1)} + Polynomial::constant(dd[i]);
  }
  return result;
}

double log_abs(const Rational& r) {
  long en = 0, ed = 0;
  const double mn = mpz_get_d_2exp(&en, r.get_num_mpz_t());
  const double md = mpz_get_d_2exp(&ed, r.get_den_mpz_t());
  return std::log(std::fabs(mn)) - std::log(md) + static_cast<double>(en - ed) * std::log(2.0);
}

double root_modulus_upper_bound(const Polynomial& p) {
  const int n = p.degree();
  if (n <= 0) return 0.0;
  const double lc = log_abs(p.leading());
  double best = -1e300;
  for (int k = 0; k < n; ++k) {
    const Rational& a = p.coefficients()[static_cast<std::size_t>(k)];
    if (a == 0) continue;
    double t = log_abs(a) - lc;
    if (k == 0) t -= std::log(2.0);
    best = std::max(best, t / static_cast<double>(n - k));
  }
  if (best < -700) return 0.0;
  // Small relative slack against rounding in the logarithms.
  return 2.0 * std::exp(best) * (1.0 + 1e-9);
}

double root_modulus_lower_bound(const Polynomial& p) {
  const Polynomial r = p.strip_x().reversed();
  const double up = root_modulus_upper_bound(r);
  return up == 0.0 ? 0.0 : (1.0 / up) * (1.0 - 1e-9);
}

namespace {

Integer pollard_brent(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 128;
    auto f = [&](const Integer& v) {
      Integer out = v * v + c;
      out %= n;
      return out;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          Integer diff = abs(x - y);
          q = (q * diff) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        Integer diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(Integer n, std::map<Integer, int>& out) {
  for (unsigned long p = 2; p < 10000 && n > 1; ++p) {
    if (static_cast<Integer>(p) * p > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
      ++out[Integer(p)];
      n /= p;
    }
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
    ++out[n];
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<Integer, int>> factor_integer(const Integer& n) {
  Integer m = abs(n);
  if (m == 0) throw ZeroInput("factorization of zero");
  std::map<Integer, int> fac;
  factor_into(m, fac);
  return {fac.begin(), fac.end()};
}

std::vector<Integer> positive_divisors(const Integer& n) {
  Integer m = abs(n);
  if (m == 0) throw ZeroInput("divisors of zero");
  std::map<Integer, int> fac;
  factor_into(m, fac);
  std::vector<Integer> divs{Integer(1)};
  for (const auto& [p, e] : fac) {
    const std::size_t base = divs.size();
    Integer pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::vector<std::pair<Rational, int>> rational_roots(const Polynomial& p) {
  if (p.is_zero()) throw ZeroInput("roots of the zero polynomial");
  std::vector<std::pair<Rational, int>> roots;
  Polynomial rest = p;
  if (rest.coeff(0) == 0) {
    const int v = rest.valuation();
    roots.emplace_back(Rational(0), v);
    rest = rest.strip_x();
  }
  if (rest.degree() <= 0) return roots;
  auto ints = rest.primitive_integer_coefficients();
  const auto num_divs = positive_divisors(ints.front());
  const auto den_divs = positive_divisors(ints.back());
  const double bound = root_modulus_upper_bound(rest) + 1.0;
  std::vector<Rational> candidates;
  for (const auto& a : num_divs)
    for (const auto& b : den_divs) {
      Rational c(a, b);
      c.canonicalize();
      if (c.get_d() > bound) continue;
      candidates.push_back(c);
      candidates.push_back(-c);
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const auto& c : candidates) {
    int mult = 0;
    const Polynomial lin{-c, Rational(1)};
    while (rest.degree() > 0 && rest.eval(c) == 0) {
      rest = exact_div(rest, lin);
      ++mult;
    }
    if (mult > 0) roots.emplace_back(c, mult);
  }
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return roots;
}

long euler_phi(long n) {
  long r = n;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  if (n > 1) r -= r / n;
  return r;
}

Polynomial cyclotomic(int d) {
  if (d < 1) throw Error("cyclotomic: order must be positive");
  Polynomial p = Polynomial::monomial(Rational(1), d) - Polynomial::constant(Rational(1));
  for (int e = 1; e < d; ++e)
    if (d % e == 0) p = exact_div(p, cyclotomic(e));
  return p;
}

}  // namespace diffgal

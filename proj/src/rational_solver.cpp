#include "diffgal/rational_solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "diffgal/errors.hpp"
#include "modpoly.hpp"

namespace diffgal {

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Found: return "Found";
    case Outcome::NoSolution: return "NoSolution";
    case Outcome::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

using u64 = std::uint64_t;

constexpr int kNegInf = -(1 << 28);
constexpr int kPosInf = 1 << 28;

int add_bound(int a, int b) {
  if (a <= kNegInf / 2 || b <= kNegInf / 2) return kNegInf;
  return a + b;
}

int add_low(int a, int b) {
  if (a >= kPosInf / 2 || b >= kPosInf / 2) return kPosInf;
  return a + b;
}

int floor_div(int a, int b) {
  if (a <= kNegInf / 2) return kNegInf;
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int ceil_div(int a, int b) {
  if (a >= kPosInf / 2) return kPosInf;
  return -floor_div(-a, b);
}

void check_deadline(const Deadline& deadline) {
  if (deadline && std::chrono::steady_clock::now() > *deadline) throw DeadlineExceeded();
}

Rational lc_inf(const RationalFunction& f) { return f.num().leading() / f.den().leading(); }

Rational tc_zero(const RationalFunction& f) {
  return f.num().coeff(f.num().valuation()) / f.den().coeff(f.den().valuation());
}

// ---------------------------------------------------------------- modular polys

using modp::ModPoly;
using modp::mod_of;
using modp::mulmod;
using modp::powmod;

int mod_gcd_degree(const ModPoly& a, const ModPoly& b, u64 p) { return modp::gcd_degree(a, b, p); }

ModPoly mod_shift(const ModPoly& c0, u64 h, u64 p) {
  ModPoly c = c0;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) c[j - 1] = (c[j - 1] + mulmod(h, c[j], p)) % p;
  return c;
}

// Returns false if p divides the leading coefficient.
bool to_mod(const Polynomial& f, u64 p, ModPoly& out) {
  const auto ints = f.primitive_integer_coefficients();
  out.clear();
  for (const auto& v : ints) out.push_back(mod_of(v, p));
  return !out.empty() && out.back() != 0;
}

constexpr u64 kFilterPrimes[] = {2305843009213693951ULL, 4611686018427387847ULL, 1000000000000000003ULL};

// ---------------------------------------------------------------- dispersion

std::vector<int> shift_dispersion(const Polynomial& P, const Polynomial& Q, const Deadline& deadline) {
  std::vector<int> out;
  if (P.degree() < 1 || Q.degree() < 1) return out;
  const double H = root_modulus_upper_bound(P) + root_modulus_upper_bound(Q);
  if (H < 4.0e6) {
    u64 p = 0;
    ModPoly pm, qm;
    for (u64 cand : kFilterPrimes)
      if (to_mod(P, cand, pm) && to_mod(Q, cand, qm)) {
        p = cand;
        break;
      }
    const long hmax = static_cast<long>(std::floor(H));
    for (long h = 0; h <= hmax; ++h) {
      if ((h & 1023) == 0) check_deadline(deadline);
      if (p != 0 && mod_gcd_degree(pm, mod_shift(qm, static_cast<u64>(h), p), p) < 1) continue;
      if (gcd(P, Q.shift(Rational(h))).degree() > 0) out.push_back(static_cast<int>(h));
    }
    return out;
  }
  // Huge roots: integer roots of R(h) = Res_x(P(x), Q(x + h)).
  const int D = P.degree() * Q.degree();
  std::vector<Rational> xs, ys;
  for (int h = 0; h <= D; ++h) {
    check_deadline(deadline);
    xs.emplace_back(h);
    ys.push_back(resultant(P, Q.shift(Rational(h))));
  }
  const Polynomial R = interpolate(xs, ys);
  if (R.is_zero()) throw Error("dispersion: resultant vanished identically");
  for (const auto& [r, mult] : rational_roots(R)) {
    (void)mult;
    if (r.get_den() != 1 || r < 0 || !r.get_num().fits_sint_p()) continue;
    const int h = static_cast<int>(r.get_num().get_si());
    if (gcd(P, Q.shift(Rational(h))).degree() > 0) out.push_back(h);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational rational_power(const Rational& q, int e) {
  Rational r = 1;
  const Rational b = e >= 0 ? q : 1 / q;
  for (int i = 0; i < std::abs(e); ++i) r *= b;
  return r;
}

// P, Q without roots at 0.
std::vector<int> dilation_dispersion(const Polynomial& P, const Polynomial& Q, const Rational& q, int cap,
                                     const Deadline& deadline) {
  std::vector<int> out;
  if (P.degree() < 1 || Q.degree() < 1) return out;
  const double lq = log_abs(q);
  const double a = std::log(root_modulus_lower_bound(Q) / root_modulus_upper_bound(P)) / lq;
  const double b = std::log(root_modulus_upper_bound(Q) / root_modulus_lower_bound(P)) / lq;
  const int lo = std::max(0, static_cast<int>(std::ceil(std::min(a, b))) - 1);
  const int hi = std::min(cap, static_cast<int>(std::floor(std::max(a, b))) + 1);
  for (int e = lo; e <= hi; ++e) {
    check_deadline(deadline);
    if (gcd(P, Q.dilate(rational_power(q, e))).degree() > 0) out.push_back(e);
  }
  return out;
}

// Monic polynomial whose roots are the q-th powers of the roots of P.
Polynomial root_power(const Polynomial& P, int q) {
  const int d = P.degree();
  if (d < 1) return Polynomial::constant(Rational(1));
  std::vector<Rational> xs, ys;
  for (int i = 0; i <= d; ++i) {
    xs.emplace_back(i);
    // y - x^q as a polynomial in x
    ys.push_back(resultant(P, Polynomial::constant(Rational(i)) - Polynomial::monomial(Rational(1), q)));
  }
  return interpolate(xs, ys).monic();
}

std::size_t coefficient_bits(const Polynomial& p) {
  std::size_t bits = 0;
  for (const auto& c : p.coefficients())
    bits = std::max(bits, mpz_sizeinbase(c.get_num_mpz_t(), 2) + mpz_sizeinbase(c.get_den_mpz_t(), 2));
  return bits;
}

constexpr std::size_t kMahlerBitLimit = 20000;

std::vector<int> mahler_dispersion(const Polynomial& P, const Polynomial& Q, int q, int bound,
                                   const Deadline& deadline) {
  std::vector<int> out;
  if (P.degree() < 1 || Q.degree() < 1) return out;
  Polynomial cur = P.monic();
  for (int e = 0; e <= bound; ++e) {
    check_deadline(deadline);
    if (gcd(cur, Q).degree() > 0) out.push_back(e);
    if (e == bound) break;
    cur = root_power(cur, q);
    if (coefficient_bits(cur) > kMahlerBitLimit) break;
  }
  return out;
}

// ---------------------------------------------------------------- denominators

// Part of P (with multiplicity) made of the roots of S.
Polynomial restrict_to_roots(const Polynomial& P, const Polynomial& S) {
  Polynomial out = Polynomial::constant(Rational(1));
  if (S.degree() < 1) return out;
  Polynomial rest = P;
  for (;;) {
    const Polynomial g = gcd(rest, S);
    if (g.degree() < 1) break;
    out *= g;
    rest = exact_div(rest, g);
  }
  return out;
}

// Universal denominator away from 0 for S and Q: gcd of the sigma^{-1-j}(P) and
// sigma^j(Q) products, restricted to roots that take part in a dispersion.
Polynomial shift_like_denominator(const OperatorCase& op, const Polynomial& P, const Polynomial& Q,
                                  const Deadline& deadline) {
  const Polynomial one = Polynomial::constant(Rational(1));
  if (P.degree() < 1 || Q.degree() < 1) return one;
  const Polynomial Ps = squarefree_part(P), Qs = squarefree_part(Q);
  const std::vector<int> disp =
      op.tag == Case::S ? shift_dispersion(Ps, Qs, deadline) : dilation_dispersion(Ps, Qs, op.q, 1 << 20, deadline);
  int N = 0;
  Polynomial SP = one, SQ = one;
  for (int h : disp) {
    if (h < 1) continue;
    N = std::max(N, h);
    const Polynomial g = gcd(Ps, apply_sigma_power(op, Qs, h));
    SP = lcm(SP, g);
    SQ = lcm(SQ, apply_sigma_power(op, g, -h));
  }
  if (N == 0) return one;
  const Polynomial Pr = restrict_to_roots(P, SP), Qr = restrict_to_roots(Q, SQ);
  Polynomial A = one, B = one;
  for (int j = 0; j < N; ++j) {
    check_deadline(deadline);
    A *= apply_sigma_power(op, Pr, -1 - j);
    B *= apply_sigma_power(op, Qr, j);
  }
  return gcd(A, B);
}

struct MahlerDenominator {
  Polynomial U;
  int steps = 0;
  bool fits = true;
};

// Steps for a root of unity of order d to enter its cycle and go once around
// it under x -> x^q.
int root_of_unity_steps(long d, long q) {
  int steps = 0;
  for (long g = std::gcd(d, q); g > 1; g = std::gcd(d, q)) {
    d /= g;
    ++steps;
  }
  long period = 1;
  for (long r = q % d; d > 1 && r != 1; r = r * q % d) ++period;
  return steps + static_cast<int>(period);
}

// prod_{j=1..K} rho^j(P), K from the dispersion against Q (scanned up to the
// orbit bound) and from the roots of unity among the roots of P.
MahlerDenominator mahler_denominator(const Polynomial& P, const Polynomial& Q, int q, const SolverBounds& bounds) {
  MahlerDenominator out{Polynomial::constant(Rational(1)), 0, true};
  if (P.degree() < 1) return out;
  // Roots of unity stay roots of unity and other roots never reach them,
  // so the cyclotomic part is handled apart from the dispersion.
  Polynomial Ps = squarefree_part(P), Qs = Q.degree() > 0 ? squarefree_part(Q) : Q;
  int K = 0;
  const long dmax = 2L * Ps.degree() * Ps.degree() + 2;
  for (long d = 1; d <= dmax; ++d) {
    if (euler_phi(d) > Ps.degree()) continue;
    const Polynomial phi = cyclotomic(static_cast<int>(d));
    auto [quo, rem] = divmod(Ps, phi);
    if (rem.is_zero()) {
      K = std::max(K, root_of_unity_steps(d, q));
      Ps = quo;
    }
    if (Qs.degree() >= phi.degree()) {
      auto [qq, qr] = divmod(Qs, phi);
      if (qr.is_zero()) Qs = qq;
    }
  }
  for (int e : mahler_dispersion(Ps, Qs, q, bounds.orbit_bound, bounds.deadline)) K = std::max(K, e);
  K = std::min(K, bounds.orbit_bound);
  // Multiplicities: reuse the full P for the leading factor.
  Polynomial full = P.monic();
  for (int j = 1; j <= K; ++j) {
    full = root_power(full, q);
    out.U *= full;
    if (out.U.degree() > bounds.max_denominator_degree) {
      out.fits = false;
      break;
    }
  }
  out.steps = K;
  return out;
}

// ---------------------------------------------------------------- scalar bounds

// sum_k alpha_k sigma^k z = h. Upper bound on deg num - deg den of z at
// infinity (kNegInf if z must vanish). dh = bound for h, kNegInf for h = 0.
int scalar_degree_bound(const OperatorCase& op, const std::vector<RationalFunction>& alpha, int dh) {
  const int N = static_cast<int>(alpha.size()) - 1;
  std::vector<int> candidates;
  int beta = kNegInf;
  if (op.tag == Case::S) {
    // Rewrite in powers of Delta = sigma - 1.
    std::vector<RationalFunction> b(static_cast<std::size_t>(N) + 1);
    for (int j = 0; j <= N; ++j) {
      Integer binom = 1;
      for (int k = j; k <= N; ++k) {
        if (k > j) binom = binom * k / (k - j);
        if (!alpha[static_cast<std::size_t>(k)].is_zero())
          b[static_cast<std::size_t>(j)] += alpha[static_cast<std::size_t>(k)] * RationalFunction(Rational(binom));
      }
    }
    for (int j = 0; j <= N; ++j)
      if (!b[static_cast<std::size_t>(j)].is_zero()) beta = std::max(beta, b[static_cast<std::size_t>(j)].degree() - j);
    Polynomial chi;
    for (int j = 0; j <= N; ++j) {
      const RationalFunction& bj = b[static_cast<std::size_t>(j)];
      if (bj.is_zero() || bj.degree() - j != beta) continue;
      Polynomial ff = Polynomial::constant(lc_inf(bj));
      for (int i = 0; i < j; ++i) ff *= Polynomial{Rational(-i), Rational(1)};
      chi += ff;
    }
    if (!chi.is_zero())
      for (const auto& [r, m] : rational_roots(chi)) {
        (void)m;
        if (r.get_den() == 1 && r.get_num().fits_sint_p()) candidates.push_back(static_cast<int>(r.get_num().get_si()));
      }
  } else {
    for (const auto& a : alpha)
      if (!a.is_zero()) beta = std::max(beta, a.degree());
    std::vector<Rational> chi(static_cast<std::size_t>(N) + 1);
    for (int k = 0; k <= N; ++k) {
      const RationalFunction& a = alpha[static_cast<std::size_t>(k)];
      if (!a.is_zero() && a.degree() == beta) chi[static_cast<std::size_t>(k)] = lc_inf(a);
    }
    const Polynomial chip(std::move(chi));
    const double lq = log_abs(op.q);
    for (const auto& [r, m] : rational_roots(chip)) {
      (void)m;
      if (r == 0) continue;
      const int e = static_cast<int>(std::lround(log_abs(r) / lq));
      for (int t = e - 1; t <= e + 1; ++t)
        if (rational_power(op.q, t) == r) candidates.push_back(t);
    }
  }
  int bound = kNegInf;
  for (int c : candidates) bound = std::max(bound, c);
  if (dh > kNegInf / 2) bound = std::max(bound, dh - beta);
  return bound;
}

// Case Q: lower bound on the valuation at 0 of z (kPosInf if z must vanish).
int scalar_valuation_bound(const OperatorCase& op, const std::vector<RationalFunction>& alpha, int vh) {
  const int N = static_cast<int>(alpha.size()) - 1;
  int a0 = kPosInf;
  for (const auto& a : alpha)
    if (!a.is_zero()) a0 = std::min(a0, order_at_zero(a));
  std::vector<Rational> tau(static_cast<std::size_t>(N) + 1);
  for (int k = 0; k <= N; ++k) {
    const RationalFunction& a = alpha[static_cast<std::size_t>(k)];
    if (!a.is_zero() && order_at_zero(a) == a0) tau[static_cast<std::size_t>(k)] = tc_zero(a);
  }
  int bound = kPosInf;
  const double lq = log_abs(op.q);
  for (const auto& [r, m] : rational_roots(Polynomial(std::move(tau)))) {
    (void)m;
    if (r == 0) continue;
    const int e = static_cast<int>(std::lround(log_abs(r) / lq));
    for (int t = e - 1; t <= e + 1; ++t)
      if (rational_power(op.q, t) == r) bound = std::min(bound, t);
  }
  if (vh < kPosInf / 2) bound = std::min(bound, vh - a0);
  return bound;
}

int max_degree(const std::vector<RationalFunction>& v) {
  int d = kNegInf;
  for (const auto& f : v)
    if (!f.is_zero()) d = std::max(d, f.degree());
  return d;
}

int min_valuation(const std::vector<RationalFunction>& v) {
  int d = kPosInf;
  for (const auto& f : v)
    if (!f.is_zero()) d = std::min(d, order_at_zero(f));
  return d;
}

struct CyclicData {
  bool ok = false;
  std::vector<RationalFunction> alpha;  // sum_k alpha_k sigma^k z = h, alpha_N = 1
  std::vector<RationalFunction> a;      // u_N W^{-1}
  std::vector<std::vector<RationalFunction>> u;  // u_0 .. u_{N-1}
  MatrixRF Winv;
};

// z = u_0 y turns sigma(y) = Mb y + c into a scalar equation of order N.
CyclicData cyclic_vector(const OperatorCase& op, const MatrixRF& Mb, const Deadline& deadline) {
  const std::size_t N = Mb.rows();
  CyclicData out;
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int attempt = 0; attempt < 12; ++attempt) {
    check_deadline(deadline);
    MatrixRF row(1, N);
    if (attempt == 0) {
      row(0, 0) = RationalFunction(1);
    } else {
      for (std::size_t j = 0; j < N; ++j) row(0, j) = RationalFunction(static_cast<long>(coef(rng)));
    }
    if (row.is_zero()) continue;
    MatrixRF W(N, N);
    std::vector<std::vector<RationalFunction>> us;
    MatrixRF cur = row;
    for (std::size_t k = 0; k < N; ++k) {
      for (std::size_t j = 0; j < N; ++j) W(k, j) = cur(0, j);
      us.push_back(cur.entries());
      cur = apply_sigma(op, cur) * Mb;
    }
    MatrixRF Winv;
    try {
      Winv = W.inverse();
    } catch (const SingularInput&) {
      continue;
    }
    const MatrixRF a = cur * Winv;
    out.ok = true;
    out.a = a.entries();
    out.alpha.resize(N + 1);
    for (std::size_t k = 0; k < N; ++k) out.alpha[k] = -a(0, k);
    out.alpha[N] = RationalFunction(1);
    out.u = std::move(us);
    out.Winv = std::move(Winv);
    return out;
  }
  return out;
}

// ---------------------------------------------------------------- blocks

std::vector<std::vector<std::size_t>> strongly_connected(const MatrixRF& M) {
  const std::size_t n = M.rows();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> comps;
  int counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w = 0; w < n; ++w) {
      if (M(v, w).is_zero()) continue;
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      for (;;) {
        const std::size_t w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
        if (w == v) break;
      }
      std::sort(comp.begin(), comp.end());
      comps.push_back(std::move(comp));
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  return comps;  // dependencies first
}

struct Block {
  std::vector<std::size_t> comps;
  Polynomial U;        // away from 0 for Q and M; the full denominator for S
  int x_power = 0;     // allowed pole order at 0 (Q and M)
  bool x_known = true;
  int excess = 0;      // bound on deg num - deg den of the block entries
  bool excess_known = false;
  bool den_complete = true;
  bool den_fits = true;

  Polynomial full_den() const {
    return x_power > 0 ? U * Polynomial::monomial(Rational(1), x_power) : U;
  }
};

struct Analysis {
  MatrixRF M;
  std::vector<std::vector<RationalFunction>> c;  // c[0] = L^{-1} f0, c[k+1] = L^{-1} f_k
  std::vector<Block> blocks;
  std::vector<std::size_t> block_of;
};

MatrixRF column_of(const std::vector<RationalFunction>& v) { return MatrixRF::column(v); }

// Blocks up to this size get degree bounds eagerly; larger ones only when
// a cheap search fails, since the cyclic vector is costly there.
constexpr std::size_t kEagerBlock = 4;

Analysis analyze(const RationalSystem& sys, const SolverBounds& bounds, bool degree_bounds) {
  const OperatorCase& op = sys.op;
  const std::size_t n = sys.size();
  Analysis an;
  MatrixRF Linv;
  try {
    Linv = sys.L.inverse();
  } catch (const SingularInput&) {
    throw SingularInput("singular system: L is not invertible");
  }
  an.M = Linv * sys.R;
  // M is block triangular in SCC order, so the diagonal blocks of
  // M^{-1} = R^{-1} L are the inverses of those of M.
  MatrixRF Minv;
  try {
    Minv = sys.R.inverse() * sys.L;
  } catch (const SingularInput&) {
    throw SingularInput("singular system: R is not invertible");
  }
  an.c.push_back((Linv * column_of(sys.f0)).entries());
  for (const auto& f : sys.params) an.c.push_back((Linv * column_of(f)).entries());

  const auto comps = strongly_connected(an.M);
  an.block_of.assign(n, 0);
  for (std::size_t b = 0; b < comps.size(); ++b)
    for (std::size_t r : comps[b]) an.block_of[r] = b;

  for (std::size_t b = 0; b < comps.size(); ++b) {
    check_deadline(bounds.deadline);
    Block blk;
    blk.comps = comps[b];
    const std::size_t nb = blk.comps.size();
    MatrixRF Mb(nb, nb);
    for (std::size_t i = 0; i < nb; ++i)
      for (std::size_t j = 0; j < nb; ++j) Mb(i, j) = an.M(blk.comps[i], blk.comps[j]);

    // Inhomogeneity summary: denominator, degree and valuation bounds.
    Polynomial G = Polynomial::constant(Rational(1));
    int Dc = kNegInf, Vc = kPosInf;
    bool inh_known = true, inh_x_known = true;
    for (std::size_t r : blk.comps) {
      for (const auto& cv : an.c) {
        const RationalFunction& f = cv[r];
        if (f.is_zero()) continue;
        G = lcm(G, f.den());
        Dc = std::max(Dc, f.degree());
        Vc = std::min(Vc, order_at_zero(f));
      }
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t bj = an.block_of[j];
        if (bj == b || an.M(r, j).is_zero()) continue;
        const Block& prev = an.blocks[bj];
        const RationalFunction& m = an.M(r, j);
        G = lcm(G, m.den() * prev.full_den());
        if (prev.excess_known)
          Dc = std::max(Dc, add_bound(m.degree(), prev.excess));
        else
          inh_known = false;
        if (prev.x_known)
          Vc = std::min(Vc, order_at_zero(m) - prev.x_power);
        else
          inh_x_known = false;
        if (!prev.den_complete) blk.den_complete = false;
      }
    }

    Polynomial P = G;
    for (std::size_t k = 0; k < nb * nb; ++k)
      if (!Mb.entries()[k].is_zero()) P = lcm(P, Mb.entries()[k].den());
    MatrixRF Mbinv(nb, nb);
    for (std::size_t i = 0; i < nb; ++i)
      for (std::size_t j = 0; j < nb; ++j) Mbinv(i, j) = Minv(blk.comps[i], blk.comps[j]);
    Polynomial Qd = Polynomial::constant(Rational(1));
    for (const auto& e : Mbinv.entries())
      if (!e.is_zero()) Qd = lcm(Qd, e.den());
    Qd *= G;

    switch (op.tag) {
      case Case::S:
        blk.U = shift_like_denominator(op, P, Qd, bounds.deadline);
        break;
      case Case::Q:
        blk.U = shift_like_denominator(op, P.strip_x(), Qd.strip_x(), bounds.deadline);
        break;
      case Case::M: {
        const MahlerDenominator md = mahler_denominator(P.strip_x(), Qd.strip_x(), op.mahler_q(), bounds);
        blk.U = md.U;
        blk.den_fits = md.fits;
        blk.den_complete = false;
        break;
      }
    }

    if (op.tag == Case::M) {
      const int q = op.mahler_q();
      int dM = kNegInf, vM = kPosInf;
      for (const auto& e : Mb.entries())
        if (!e.is_zero()) {
          dM = std::max(dM, e.degree());
          vM = std::min(vM, order_at_zero(e));
        }
      if (inh_known) {
        blk.excess = std::max(floor_div(dM, q - 1), floor_div(Dc, q));
        blk.excess_known = true;
      }
      if (inh_x_known) {
        const int v = std::min(ceil_div(vM, q - 1), ceil_div(Vc, q));
        blk.x_power = std::max(0, -v);
      } else {
        blk.x_known = false;
      }
    } else if (!degree_bounds && nb > kEagerBlock) {
      blk.excess_known = false;
      blk.x_known = op.tag == Case::S;
    } else {
      const CyclicData cyc = cyclic_vector(op, Mb, bounds.deadline);
      if (!cyc.ok) {
        blk.excess_known = false;
        blk.x_known = op.tag == Case::S;
      } else {
        const std::size_t N = nb;
        if (inh_known) {
          // d(e_{k+1}) <= max(d(e_k), d(u_k) + Dc); sigma keeps degrees.
          std::vector<int> De(N + 1, kNegInf);
          for (std::size_t k = 0; k < N; ++k) De[k + 1] = std::max(De[k], add_bound(max_degree(cyc.u[k]), Dc));
          int maxDe = kNegInf;
          for (std::size_t k = 0; k < N; ++k) maxDe = std::max(maxDe, De[k]);
          const int Dh = std::max(De[N], add_bound(max_degree(cyc.a), maxDe));
          const int Bz = scalar_degree_bound(op, cyc.alpha, Dh);
          blk.excess = add_bound(max_degree(cyc.Winv.entries()), std::max(Bz, maxDe));
          blk.excess_known = true;
        }
        if (op.tag == Case::Q) {
          if (inh_x_known) {
            std::vector<int> Ve(N + 1, kPosInf);
            for (std::size_t k = 0; k < N; ++k) Ve[k + 1] = std::min(Ve[k], add_low(min_valuation(cyc.u[k]), Vc));
            int minVe = kPosInf;
            for (std::size_t k = 0; k < N; ++k) minVe = std::min(minVe, Ve[k]);
            const int Vh = std::min(Ve[N], add_low(min_valuation(cyc.a), minVe));
            const int Lz = scalar_valuation_bound(op, cyc.alpha, Vh);
            const int v = add_low(min_valuation(cyc.Winv.entries()), std::min(Lz, minVe));
            blk.x_power = v >= kPosInf / 2 ? 0 : std::max(0, -v);
          } else {
            blk.x_known = false;
          }
        }
      }
    }
    if (blk.full_den().degree() > bounds.max_denominator_degree) blk.den_fits = false;
    an.blocks.push_back(std::move(blk));
  }
  return an;
}

// ---------------------------------------------------------------- local obstruction (scalar M)

// sigma(y) = m y + g with g != 0: is there an exponent e and a leading
// coefficient making the lowest (at_zero) or highest terms cancel?
bool leading_balance_possible(int q, int em, const Rational& cm, int eg, bool at_zero) {
  std::vector<int> cands;
  auto push_div = [&](int a, int b) {
    if (b != 0 && a % b == 0) cands.push_back(a / b);
  };
  push_div(em, q - 1);  // q e = e + em
  push_div(eg, q);      // q e = eg
  cands.push_back(eg - em);
  for (int e : cands) {
    const int t1 = q * e, t2 = e + em, t3 = eg;
    const int best = at_zero ? std::min({t1, t2, t3}) : std::max({t1, t2, t3});
    const bool s1 = t1 == best, s2 = t2 == best, s3 = t3 == best;
    const int count = s1 + s2 + s3;
    if (count < 2) continue;
    if (s1 && s2 && !s3 && cm != 1) continue;
    if (s1 && s2 && s3 && cm == 1) continue;
    return true;
  }
  return false;
}

std::string local_obstruction(const RationalSystem& sys, const Analysis& an) {
  if (sys.op.tag != Case::M || sys.size() != 1 || !sys.params.empty()) return "";
  const RationalFunction& m = an.M(0, 0);
  const RationalFunction& g = an.c[0][0];
  if (g.is_zero()) return "";
  const int q = sys.op.mahler_q();
  if (!leading_balance_possible(q, order_at_zero(m), tc_zero(m), order_at_zero(g), true))
    return "no order of vanishing at 0 balances sigma(y) = m y + g";
  if (!leading_balance_possible(q, m.degree(), lc_inf(m), g.degree(), false))
    return "no degree at infinity balances sigma(y) = m y + g";
  return "";
}

// ---------------------------------------------------------------- linear system

struct Layout {
  std::vector<Polynomial> den;     // per component
  std::vector<int> num_degree;     // per component, -1 = forced zero
  std::vector<std::size_t> offset; // first column of each component
  std::size_t param_offset = 0;
  std::size_t cols = 0;
};

Layout make_layout(const Analysis& an, const std::vector<int>& excess, const std::vector<int>& xpow, std::size_t K) {
  Layout lay;
  const std::size_t n = an.M.rows();
  std::size_t col = 0;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t b = an.block_of[r];
    Polynomial d = an.blocks[b].U;
    if (xpow[b] > 0) d *= Polynomial::monomial(Rational(1), xpow[b]);
    const int nd = std::max(-1, static_cast<int>(std::max(kNegInf, add_bound(d.degree(), excess[b]))));
    lay.den.push_back(d);
    lay.num_degree.push_back(nd);
    lay.offset.push_back(col);
    col += static_cast<std::size_t>(nd + 1);
  }
  lay.param_offset = col;
  lay.cols = col + K;
  return lay;
}

Polynomial sigma_step(const OperatorCase& op) {
  switch (op.tag) {
    case Case::S: return Polynomial{Rational(1), Rational(1)};
    case Case::Q: return Polynomial::monomial(op.q, 1);
    case Case::M: return Polynomial::monomial(Rational(1), op.mahler_q());
  }
  return {};
}

LinearSystemQ build_equations(const RationalSystem& sys, const Layout& lay, const std::vector<std::size_t>& perm,
                              const Deadline& deadline) {
  const OperatorCase& op = sys.op;
  const std::size_t n = sys.size();
  const std::size_t K = sys.params.size();
  LinearSystemQ out;
  out.cols = lay.cols;
  std::vector<Polynomial> sden(n);
  for (std::size_t j = 0; j < n; ++j) sden[j] = apply_sigma(op, lay.den[j]);
  const Polynomial step = sigma_step(op);

  for (std::size_t i = 0; i < n; ++i) {
    check_deadline(deadline);
    // Row denominator.
    std::vector<RationalFunction> lt(n), rt(n);
    Polynomial D = Polynomial::constant(Rational(1));
    for (std::size_t j = 0; j < n; ++j) {
      if (lay.num_degree[j] < 0) continue;
      if (!sys.L(i, j).is_zero()) {
        lt[j] = sys.L(i, j) / RationalFunction(sden[j]);
        D = lcm(D, lt[j].den());
      }
      if (!sys.R(i, j).is_zero()) {
        rt[j] = sys.R(i, j) / RationalFunction(lay.den[j]);
        D = lcm(D, rt[j].den());
      }
    }
    if (!sys.f0[i].is_zero()) D = lcm(D, sys.f0[i].den());
    for (std::size_t k = 0; k < K; ++k)
      if (!sys.params[k][i].is_zero()) D = lcm(D, sys.params[k][i].den());

    std::map<int, std::vector<Rational>> rows;
    std::map<int, Rational> rhs;
    auto row_at = [&](int e) -> std::vector<Rational>& {
      auto it = rows.find(e);
      if (it == rows.end()) it = rows.emplace(e, std::vector<Rational>(lay.cols)).first;
      return it->second;
    };
    auto scaled = [&](const RationalFunction& f) { return f.num() * exact_div(D, f.den()); };

    for (std::size_t j = 0; j < n; ++j) {
      const int nd = lay.num_degree[j];
      if (nd < 0) continue;
      if (!lt[j].is_zero()) {
        Polynomial w = scaled(lt[j]);
        for (int t = 0; t <= nd; ++t) {
          const std::size_t col = perm[lay.offset[j] + static_cast<std::size_t>(t)];
          const auto cs = w.coefficients();
          for (std::size_t e = 0; e < cs.size(); ++e)
            if (cs[e] != 0) row_at(static_cast<int>(e))[col] += cs[e];
          if (t < nd) w *= step;
        }
      }
      if (!rt[j].is_zero()) {
        const Polynomial w = scaled(rt[j]);
        const auto cs = w.coefficients();
        for (int t = 0; t <= nd; ++t) {
          const std::size_t col = perm[lay.offset[j] + static_cast<std::size_t>(t)];
          for (std::size_t e = 0; e < cs.size(); ++e)
            if (cs[e] != 0) row_at(static_cast<int>(e) + t)[col] -= cs[e];
        }
      }
    }
    for (std::size_t k = 0; k < K; ++k) {
      const RationalFunction& f = sys.params[k][i];
      if (f.is_zero()) continue;
      const Polynomial w = scaled(f);
      const auto cs = w.coefficients();
      const std::size_t col = perm[lay.param_offset + k];
      for (std::size_t e = 0; e < cs.size(); ++e)
        if (cs[e] != 0) row_at(static_cast<int>(e))[col] -= cs[e];
    }
    if (!sys.f0[i].is_zero()) {
      const Polynomial w = scaled(sys.f0[i]);
      const auto cs = w.coefficients();
      for (std::size_t e = 0; e < cs.size(); ++e)
        if (cs[e] != 0) {
          row_at(static_cast<int>(e));
          rhs[static_cast<int>(e)] += cs[e];
        }
    }
    for (auto& [e, row] : rows) out.add_row(std::move(row), rhs.count(e) ? rhs[e] : Rational(0));
  }
  return out;
}

std::vector<RationalFunction> assemble_y(const Layout& lay, const std::vector<Rational>& v,
                                         const std::vector<std::size_t>& perm) {
  std::vector<RationalFunction> y;
  for (std::size_t j = 0; j < lay.den.size(); ++j) {
    std::vector<Rational> cs;
    for (int t = 0; t <= lay.num_degree[j]; ++t) cs.push_back(v[perm[lay.offset[j] + static_cast<std::size_t>(t)]]);
    y.push_back(rf_normalize(Polynomial(std::move(cs)), lay.den[j]));
  }
  return y;
}

bool satisfies(const RationalSystem& sys, const std::vector<RationalFunction>& y, const std::vector<Rational>& lambda,
               bool homogeneous) {
  const std::size_t n = sys.size();
  std::vector<RationalFunction> sy(n);
  for (std::size_t j = 0; j < n; ++j) sy[j] = apply_sigma(sys.op, y[j]);
  for (std::size_t i = 0; i < n; ++i) {
    RationalFunction acc;
    for (std::size_t j = 0; j < n; ++j) {
      if (!sys.L(i, j).is_zero() && !sy[j].is_zero()) acc += sys.L(i, j) * sy[j];
      if (!sys.R(i, j).is_zero() && !y[j].is_zero()) acc -= sys.R(i, j) * y[j];
    }
    if (!homogeneous) acc -= sys.f0[i];
    for (std::size_t k = 0; k < lambda.size(); ++k)
      if (lambda[k] != 0) acc -= sys.params[k][i] * RationalFunction(lambda[k]);
    if (!acc.is_zero()) return false;
  }
  return true;
}

std::vector<int> degree_schedule(int cap) {
  std::vector<int> s;
  for (int v : {0, 1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64, 96, 128})
    if (v <= cap) s.push_back(v);
  if (s.empty() || s.back() != cap) s.push_back(cap);
  return s;
}

void validate_system(const RationalSystem& sys) {
  const std::size_t n = sys.size();
  if (n == 0) throw DimensionMismatch("empty system");
  if (!sys.L.is_square() || !sys.R.is_square() || sys.L.rows() != n || sys.f0.size() != n)
    throw DimensionMismatch("rational system shapes do not agree");
  for (const auto& f : sys.params)
    if (f.size() != n) throw DimensionMismatch("parameter vector has the wrong length");
}

// Runs the degree schedule up to limit; true when out holds a final answer.
bool search(const RationalSystem& sys, const Analysis& an, int limit, std::uint64_t seed, const SolverBounds& bounds,
            SolverOutcome& out) {
  const int cap = bounds.max_numerator_degree;
  const std::size_t K = sys.params.size();
  const std::size_t nb = an.blocks.size();
  std::vector<int> schedule = degree_schedule(limit);
  for (const auto& b : an.blocks)
    if (b.excess_known && b.excess >= 0 && b.excess <= limit) schedule.push_back(b.excess);
  std::sort(schedule.begin(), schedule.end());
  schedule.erase(std::unique(schedule.begin(), schedule.end()), schedule.end());

  const bool complete_case = sys.op.tag != Case::M;
  for (int nu : schedule) {
    std::vector<int> excess(nb), xpow(nb);
    bool stage_complete = complete_case;
    bool all_reached = true;
    for (std::size_t b = 0; b < nb; ++b) {
      const Block& blk = an.blocks[b];
      if (blk.excess_known) {
        excess[b] = std::min(nu, blk.excess);
        if (blk.excess > nu) all_reached = false;
        if (blk.excess > cap) stage_complete = false;
      } else {
        excess[b] = nu;
        stage_complete = false;
        all_reached = false;
      }
      xpow[b] = blk.x_known ? blk.x_power : nu;
      if (!blk.x_known || !blk.den_complete) stage_complete = false;
    }
    stage_complete = stage_complete && all_reached;

    const Layout lay = make_layout(an, excess, xpow, K);
    std::vector<std::size_t> perm(lay.cols);
    std::iota(perm.begin(), perm.end(), 0);
    if (seed != 0) {
      std::mt19937_64 rng(seed);
      std::shuffle(perm.begin(), perm.end(), rng);
    }
    LinearSolution ls;
    try {
      const LinearSystemQ eqs = build_equations(sys, lay, perm, bounds.deadline);
      ls = solve_linear(eqs, bounds.deadline);
    } catch (const DeadlineExceeded&) {
      out.kind = Outcome::Unknown;
      out.tag = kBoundedTag;
      out.note = "deadline exceeded";
      return true;
    }
    out.degree_searched = nu;
    if (ls.consistent) {
      out.kind = Outcome::Found;
      out.y = assemble_y(lay, ls.particular, perm);
      for (std::size_t k = 0; k < K; ++k) out.params.push_back(ls.particular[perm[lay.param_offset + k]]);
      if (!satisfies(sys, out.y, out.params, false)) throw Error("internal: solution failed re-verification");
      for (const auto& v : ls.kernel) {
        HomogeneousSolution h;
        h.y = assemble_y(lay, v, perm);
        for (std::size_t k = 0; k < K; ++k) h.params.push_back(v[perm[lay.param_offset + k]]);
        if (!satisfies(sys, h.y, h.params, true)) throw Error("internal: kernel vector failed re-verification");
        out.homogeneous.push_back(std::move(h));
      }
      out.homogeneous_complete = stage_complete;
      out.tag = stage_complete ? kCompleteTag : kBoundedTag;
      return true;
    }
    if (stage_complete) {
      out.kind = Outcome::NoSolution;
      out.tag = kCompleteTag;
      out.note = "no solution within proven denominator and degree bounds";
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<int> dispersion(const Polynomial& p1, const Polynomial& p2, const OperatorCase& op, int bound) {
  if (p1.is_zero() || p2.is_zero()) throw ZeroInput("dispersion of a zero polynomial");
  const Polynomial P = squarefree_part(p1), Q = squarefree_part(p2);
  switch (op.tag) {
    case Case::S: return shift_dispersion(P, Q, std::nullopt);
    case Case::Q: {
      std::vector<int> out;
      if (P.coeff(0) == 0 && Q.coeff(0) == 0) {
        for (int e = 0; e <= bound; ++e) out.push_back(e);
        return out;
      }
      for (int e : dilation_dispersion(P.strip_x(), Q.strip_x(), op.q, bound, std::nullopt)) out.push_back(e);
      return out;
    }
    case Case::M: {
      if (P.coeff(0) == 0 && Q.coeff(0) == 0) {
        std::vector<int> out;
        for (int e = 0; e <= bound; ++e) out.push_back(e);
        return out;
      }
      return mahler_dispersion(P, Q, op.mahler_q(), bound, std::nullopt);
    }
  }
  return {};
}

SolverOutcome solve(const RationalSystem& sys, const SolverBounds& bounds, std::uint64_t seed) {
  validate_system(sys);
  SolverOutcome out;
  out.bounds = bounds;

  Analysis an;
  try {
    an = analyze(sys, bounds, false);
  } catch (const DeadlineExceeded&) {
    out.kind = Outcome::Unknown;
    out.tag = kBoundedTag;
    out.note = "deadline exceeded during analysis";
    return out;
  }

  const std::string obstruction = local_obstruction(sys, an);
  if (!obstruction.empty()) {
    out.kind = Outcome::NoSolution;
    out.tag = kLocalObstructionTag;
    out.note = obstruction;
    return out;
  }

  bool fits = true;
  bool lazy = false;
  for (const auto& b : an.blocks) {
    fits = fits && b.den_fits;
    lazy = lazy || (sys.op.tag != Case::M && b.comps.size() > kEagerBlock);
  }
  if (!fits) {
    out.kind = Outcome::Unknown;
    out.tag = kBoundedTag;
    out.note = "universal denominator exceeds max_denominator_degree";
    return out;
  }

  const int cap = bounds.max_numerator_degree;
  if (lazy) {
    if (search(sys, an, std::min(cap, 8), seed, bounds, out)) return out;
    try {
      an = analyze(sys, bounds, true);
    } catch (const DeadlineExceeded&) {
      out.kind = Outcome::Unknown;
      out.tag = kBoundedTag;
      out.note = "deadline exceeded during analysis";
      return out;
    }
  }
  if (search(sys, an, cap, seed, bounds, out)) return out;
  out.kind = Outcome::Unknown;
  out.tag = kBoundedTag;
  out.note = "no solution up to numerator degree excess " + std::to_string(cap);
  return out;
}

SolverOutcome solve_rational_system(const MatrixRF& M, const std::vector<RationalFunction>& c, const OperatorCase& op,
                                    const SolverBounds& bounds) {
  RationalSystem sys{op, MatrixRF::identity(M.rows()), M, c, {}};
  return solve(sys, bounds);
}

Polynomial universal_denominator(const MatrixRF& M, const std::vector<RationalFunction>& c, const OperatorCase& op,
                                 const SolverBounds& bounds) {
  RationalSystem sys{op, MatrixRF::identity(M.rows()), M, c, {}};
  validate_system(sys);
  const Analysis an = analyze(sys, bounds, true);
  Polynomial u = Polynomial::constant(Rational(1));
  for (const auto& b : an.blocks) u = lcm(u, b.full_den());
  return u;
}

SolverOutcome telescope_scalar(const RationalFunction& g, const OperatorCase& op, bool allow_constant,
                               const SolverBounds& bounds, std::uint64_t seed) {
  RationalSystem sys{op, MatrixRF{{RationalFunction(op.mu())}}, MatrixRF{{RationalFunction(1)}}, {g}, {}};
  if (allow_constant) sys.params.push_back({RationalFunction(-1)});
  SolverOutcome out = solve(sys, bounds, seed);
  if (out.kind != Outcome::Found || seed != 0 || op.tag == Case::M) return out;
  // Constants solve the homogeneous equation: drop the constant term of
  // the polynomial part.
  RationalFunction& b = out.y[0];
  const Rational c0 = divmod(b.num(), b.den()).first.coeff(0);
  if (c0 != 0) b -= RationalFunction(c0);
  return out;
}

}  // namespace diffgal

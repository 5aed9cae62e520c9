#include "diffgal/linear_solve.hpp"

#include <algorithm>
#include <cstdint>

#include "diffgal/errors.hpp"

namespace diffgal {

namespace {

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 p) { return (a * b) % p; }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

bool is_prime_u32(u64 n) {
  if (n < 2) return false;
  for (u64 d : {2ULL, 3ULL, 5ULL, 7ULL}) {
    if (n % d == 0) return n == d;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic for n < 3,215,031,751.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Primes just below 2^31, so products of residues fit in 64 bits.
u64 nth_prime(std::size_t k) {
  static std::vector<u64> cache;
  static u64 next = (1ULL << 31) - 1;
  while (cache.size() <= k) {
    while (!is_prime_u32(next)) next -= 2;
    cache.push_back(next);
    next -= 2;
  }
  return cache[k];
}

struct IntegerSystem {
  std::size_t cols = 0;
  std::vector<std::vector<Integer>> rows;  // each row has cols + 1 entries, rhs last
};

IntegerSystem clear_denominators(const LinearSystemQ& sys) {
  IntegerSystem out;
  out.cols = sys.cols;
  out.rows.reserve(sys.rows.size());
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    const auto& r = sys.rows[i];
    Integer l = sys.rhs[i].get_den();
    bool nonzero = sys.rhs[i] != 0;
    for (const auto& v : r) {
      if (v == 0) continue;
      nonzero = true;
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    }
    if (!nonzero) continue;
    std::vector<Integer> row(sys.cols + 1);
    Integer content = 0;
    for (std::size_t j = 0; j <= sys.cols; ++j) {
      const Rational& v = j < sys.cols ? r[j] : sys.rhs[i];
      if (v == 0) continue;
      row[j] = v.get_num() * (l / v.get_den());
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), row[j].get_mpz_t());
    }
    if (content > 1)
      for (auto& v : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), content.get_mpz_t());
    out.rows.push_back(std::move(row));
  }
  return out;
}

struct ModularEchelon {
  std::vector<std::size_t> pivots;  // may end with cols (the rhs column)
  std::vector<u64> entries;         // rank x (cols + 1), reduced
};

ModularEchelon modular_rref(const IntegerSystem& sys, u64 p) {
  const std::size_t width = sys.cols + 1;
  const std::size_t nrows = sys.rows.size();
  std::vector<u64> m(nrows * width);
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < width; ++j) {
      const Integer& v = sys.rows[i][j];
      if (v == 0) continue;
      m[i * width + j] = mpz_fdiv_ui(v.get_mpz_t(), p);
    }
  ModularEchelon out;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < width && rank < nrows; ++c) {
    std::size_t piv = rank;
    while (piv < nrows && m[piv * width + c] == 0) ++piv;
    if (piv == nrows) continue;
    if (piv != rank)
      std::swap_ranges(m.begin() + static_cast<std::ptrdiff_t>(piv * width),
                       m.begin() + static_cast<std::ptrdiff_t>((piv + 1) * width),
                       m.begin() + static_cast<std::ptrdiff_t>(rank * width));
    u64* prow = &m[rank * width];
    const u64 inv = invmod(prow[c], p);
    for (std::size_t j = c; j < width; ++j) prow[j] = mulmod(prow[j], inv, p);
    std::vector<std::size_t> nz;
    for (std::size_t j = c + 1; j < width; ++j)
      if (prow[j] != 0) nz.push_back(j);
    for (std::size_t r = 0; r < nrows; ++r) {
      if (r == rank) continue;
      u64* row = &m[r * width];
      const u64 f = row[c];
      if (f == 0) continue;
      const u64 nf = p - f;
      row[c] = 0;
      for (std::size_t j : nz) row[j] = (row[j] + nf * prow[j]) % p;
    }
    out.pivots.push_back(c);
    ++rank;
  }
  m.resize(rank * width);
  out.entries = std::move(m);
  return out;
}

// -1 if a is the better (generic) profile, 1 if b is, 0 if equal.
int compare_profiles(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  if (a.size() > b.size()) return -1;
  if (a.size() < b.size()) return 1;
  return 0;
}

// A candidate solution built from echelon entries over Q.
struct Candidate {
  std::vector<std::size_t> pivots;  // without the rhs column
  std::vector<std::size_t> free_cols;
  bool consistent = true;
  // values[i][k]: entry in pivot row i, column free_cols[k]; last k is rhs.
  std::vector<std::vector<Rational>> values;
};

LinearSolution assemble(const Candidate& c, std::size_t cols) {
  LinearSolution out;
  out.consistent = c.consistent;
  out.rank = c.pivots.size() + (c.consistent ? 0 : 1);
  const std::size_t nfree = c.free_cols.size();
  for (std::size_t k = 0; k < nfree; ++k) {
    std::vector<Rational> v(cols);
    v[c.free_cols[k]] = 1;
    for (std::size_t i = 0; i < c.pivots.size(); ++i) v[c.pivots[i]] = -c.values[i][k];
    out.kernel.push_back(std::move(v));
  }
  if (c.consistent) {
    out.particular.assign(cols, Rational(0));
    for (std::size_t i = 0; i < c.pivots.size(); ++i) out.particular[c.pivots[i]] = c.values[i][nfree];
  }
  return out;
}

bool verify_vector(const IntegerSystem& sys, const std::vector<Rational>& v, bool homogeneous) {
  Integer den = 1;
  for (const auto& x : v)
    if (x != 0) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<std::pair<std::size_t, Integer>> w;
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] != 0) w.emplace_back(j, v[j].get_num() * (den / v[j].get_den()));
  Integer acc;
  for (const auto& row : sys.rows) {
    acc = 0;
    for (const auto& [j, x] : w)
      if (row[j] != 0) acc += row[j] * x;
    if (!homogeneous) acc -= row[sys.cols] * den;
    if (acc != 0) return false;
  }
  return true;
}

void check_deadline(const Deadline& deadline) {
  if (deadline && std::chrono::steady_clock::now() > *deadline) throw DeadlineExceeded();
}

}  // namespace

bool rational_reconstruct(const Integer& residue, const Integer& modulus, Rational& out) {
  // Half-extended Euclid on (m, r), stopping once the remainder drops below sqrt(m/2).
  Integer bound;
  Integer half = modulus / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  Integer r0 = modulus, r1 = residue % modulus;
  if (r1 < 0) r1 += modulus;
  Integer t0 = 0, t1 = 1, q, tmp;
  while (r1 > bound) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (abs(t1) > bound || t1 == 0) return false;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return false;
  out = Rational(r1, t1);
  out.canonicalize();
  return true;
}

LinearSolution solve_linear(const LinearSystemQ& sys, const Deadline& deadline) {
  const IntegerSystem isys = clear_denominators(sys);
  const std::size_t cols = sys.cols;
  const std::size_t width = cols + 1;

  std::vector<std::size_t> profile;
  std::vector<std::size_t> free_cols;  // includes the rhs column last
  std::vector<Integer> crt;            // rank x free_cols.size()
  Integer modulus = 1;
  std::optional<Candidate> pending;

  auto reset = [&](const ModularEchelon& e, u64 p) {
    profile = e.pivots;
    free_cols.clear();
    std::size_t k = 0;
    for (std::size_t c = 0; c < width; ++c) {
      if (k < profile.size() && profile[k] == c) {
        ++k;
        continue;
      }
      free_cols.push_back(c);
    }
    crt.assign(profile.size() * free_cols.size(), Integer(0));
    for (std::size_t i = 0; i < profile.size(); ++i)
      for (std::size_t k2 = 0; k2 < free_cols.size(); ++k2)
        crt[i * free_cols.size() + k2] = e.entries[i * width + free_cols[k2]];
    modulus = p;
    pending.reset();
  };

  for (std::size_t pi = 0;; ++pi) {
    check_deadline(deadline);
    const u64 p = nth_prime(pi);
    const ModularEchelon e = modular_rref(isys, p);
    if (pi == 0) {
      reset(e, p);
    } else {
      const int cmp = compare_profiles(e.pivots, profile);
      if (cmp < 0) {
        reset(e, p);
        continue;
      }
      if (cmp > 0) continue;
      // Early termination: a reconstructed candidate that also matches this
      // prime gets checked exactly.
      if (pending) {
        bool agrees = true;
        const std::size_t nfree = free_cols.size();
        for (std::size_t i = 0; i < pending->values.size() && agrees; ++i)
          for (std::size_t k = 0; k < nfree; ++k) {
            const Rational& v = pending->values[i][k];
            const u64 num = mpz_fdiv_ui(v.get_num_mpz_t(), p);
            const u64 den = mpz_fdiv_ui(v.get_den_mpz_t(), p);
            if (den == 0 || mulmod(num, invmod(den, p), p) != e.entries[i * width + free_cols[k]]) {
              agrees = false;
              break;
            }
          }
        if (agrees) {
          LinearSolution sol = assemble(*pending, cols);
          bool ok = true;
          for (const auto& v : sol.kernel)
            if (!verify_vector(isys, v, true)) {
              ok = false;
              break;
            }
          if (ok && sol.consistent) ok = verify_vector(isys, sol.particular, false);
          if (ok) return sol;
        }
        pending.reset();
      }
      // Combine by CRT: x' = x + M ((r - x) M^{-1} mod p).
      const u64 minv = invmod(mpz_fdiv_ui(modulus.get_mpz_t(), p), p);
      for (std::size_t i = 0; i < profile.size(); ++i)
        for (std::size_t k = 0; k < free_cols.size(); ++k) {
          Integer& x = crt[i * free_cols.size() + k];
          const u64 r = e.entries[i * width + free_cols[k]];
          const u64 xr = mpz_fdiv_ui(x.get_mpz_t(), p);
          const u64 t = mulmod((r + p - xr) % p, minv, p);
          if (t != 0) x += modulus * static_cast<unsigned long>(t);
        }
      modulus *= static_cast<unsigned long>(p);
    }

    // Try to reconstruct a candidate.
    Candidate cand;
    cand.consistent = profile.empty() || profile.back() != cols;
    for (std::size_t c : profile)
      if (c != cols) cand.pivots.push_back(c);
    for (std::size_t c : free_cols)
      if (c != cols) cand.free_cols.push_back(c);
    const std::size_t nfree_all = free_cols.size();
    const std::size_t nrows = cand.pivots.size();
    bool ok = true;
    cand.values.assign(nrows, std::vector<Rational>(nfree_all));
    for (std::size_t i = 0; i < nrows && ok; ++i)
      for (std::size_t k = 0; k < nfree_all; ++k) {
        if (!rational_reconstruct(crt[i * nfree_all + k], modulus, cand.values[i][k])) {
          ok = false;
          break;
        }
      }
    if (!ok) continue;
    if (!cand.consistent) {
      // Only the kernel of the coefficient matrix matters; the rhs column
      // is a pivot so free_cols has no rhs entry.
      for (auto& row : cand.values) row.push_back(Rational(0));
    }
    pending = std::move(cand);
  }
}

LinearSolution solve_linear_exact(const LinearSystemQ& sys) {
  const std::size_t cols = sys.cols;
  const std::size_t width = cols + 1;
  std::vector<std::vector<Rational>> m;
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    std::vector<Rational> row = sys.rows[i];
    row.push_back(sys.rhs[i]);
    m.push_back(std::move(row));
  }
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < width && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const Rational inv = 1 / m[rank][c];
    for (std::size_t j = c; j < width; ++j) m[rank][j] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t j = c; j < width; ++j) m[r][j] -= f * m[rank][j];
    }
    pivots.push_back(c);
    ++rank;
  }
  Candidate cand;
  cand.consistent = pivots.empty() || pivots.back() != cols;
  for (std::size_t c : pivots)
    if (c != cols) cand.pivots.push_back(c);
  std::size_t k = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    if (k < cand.pivots.size() && cand.pivots[k] == c) {
      ++k;
      continue;
    }
    cand.free_cols.push_back(c);
  }
  for (std::size_t i = 0; i < cand.pivots.size(); ++i) {
    std::vector<Rational> vals;
    for (std::size_t c : cand.free_cols) vals.push_back(m[i][c]);
    vals.push_back(cand.consistent ? m[i][cols] : Rational(0));
    cand.values.push_back(std::move(vals));
  }
  return assemble(cand, cols);
}

}  // namespace diffgal

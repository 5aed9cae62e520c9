#pragma once

// Dense polynomials over Z/p for p < 2^63. Internal to the library.

#include <cstdint>
#include <vector>

#include "diffgal/polynomial.hpp"

namespace diffgal::modp {

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;

inline u64 mod_of(const Integer& v, u64 p) { return mpz_fdiv_ui(v.get_mpz_t(), p); }

inline u64 mulmod(u64 a, u64 b, u64 p) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p);
}

inline u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

/// Monic gcd; empty if both are zero.
inline ModPoly gcd(ModPoly a, ModPoly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const u64 inv = powmod(b.back(), p - 2, p);
    while (a.size() >= b.size()) {
      const u64 f = mulmod(a.back(), inv, p);
      const std::size_t off = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) {
        const u64 t = mulmod(f, b[i], p);
        a[off + i] = a[off + i] >= t ? a[off + i] - t : a[off + i] + p - t;
      }
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    const u64 inv = powmod(a.back(), p - 2, p);
    for (auto& v : a) v = mulmod(v, inv, p);
  }
  return a;
}

inline int gcd_degree(const ModPoly& a, const ModPoly& b, u64 p) {
  return static_cast<int>(gcd(a, b, p).size()) - 1;
}

/// Primes just below 2^62, descending.
const std::vector<u64>& large_primes();

}  // namespace diffgal::modp

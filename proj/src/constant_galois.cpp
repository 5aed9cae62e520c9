#include "diffgal/constant_galois.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "diffgal/errors.hpp"

namespace diffgal {

namespace {

MatrixRF eval_at_matrix(const Polynomial& p, const MatrixRF& A) {
  const std::size_t n = A.rows();
  MatrixRF acc(n, n);
  for (int k = p.degree(); k >= 0; --k) {
    acc = acc * A;
    const Rational c = p.coeff(k);
    if (c != 0)
      for (std::size_t i = 0; i < n; ++i) acc(i, i) += RationalFunction(c);
  }
  return acc;
}

void require_constant_square(const MatrixRF& A) {
  if (!A.is_square() || A.rows() == 0) throw DimensionMismatch("expected a nonempty square matrix");
  if (!A.is_constant()) throw NonConstantInput("matrix entries must be constants");
}

Integer lcm_int(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

Polynomial characteristic_polynomial(const MatrixRF& A) {
  require_constant_square(A);
  const std::size_t n = A.rows();
  MatrixRF xI = MatrixRF::identity(n) * RationalFunction::x();
  return (xI - A).det().num();
}

JordanChevalley jordan_chevalley(const MatrixRF& A) {
  require_constant_square(A);
  const Polynomial chi = characteristic_polynomial(A);
  if (chi.coeff(0) == 0) throw SingularInput("matrix is not invertible");
  const Polynomial f = squarefree_part(chi);
  const Polynomial fp = f.derivative();
  MatrixRF S = A;
  // Quadratic convergence: log2(n) + 1 steps suffice.
  for (int it = 0; it < 64; ++it) {
    const MatrixRF F = eval_at_matrix(f, S);
    if (F.is_zero()) break;
    S = S - F * eval_at_matrix(fp, S).inverse();
  }
  return {S, S.inverse() * A};
}

std::string Eigenvalue::to_string() const {
  if (kind == Kind::Rational) return value.get_str();
  return "zeta_" + std::to_string(order);
}

std::size_t EigenvalueData::size() const {
  std::size_t n = 0;
  for (const auto& v : values) n += static_cast<std::size_t>(v.multiplicity);
  return n;
}

EigenvalueData eigenvalue_data(const MatrixRF& As) {
  require_constant_square(As);
  const long n = static_cast<long>(As.rows());
  EigenvalueData out;
  Polynomial rest = characteristic_polynomial(As);
  for (const auto& [r, m] : rational_roots(rest)) {
    Eigenvalue e;
    e.value = r;
    e.multiplicity = m;
    out.values.push_back(e);
    rest = exact_div(rest, pow(Polynomial{-r, Rational(1)}, static_cast<unsigned>(m)));
  }
  // phi(d) >= sqrt(d/2), so d <= 2 n^2 covers every possible order.
  for (long d = 3; d <= 2 * n * n + 2 && rest.degree() > 0; ++d) {
    const long ph = euler_phi(d);
    if (ph > rest.degree()) continue;
    const Polynomial phi = cyclotomic(static_cast<int>(d));
    int count = 0;
    for (;;) {
      auto [q, r] = divmod(rest, phi);
      if (!r.is_zero()) break;
      rest = q;
      ++count;
    }
    if (count > 0) {
      Eigenvalue e;
      e.kind = Eigenvalue::Kind::RootOfUnity;
      e.order = static_cast<int>(d);
      e.multiplicity = count * static_cast<int>(ph);
      out.values.push_back(e);
    }
  }
  if (rest.degree() > 0) {
    out.supported = false;
    out.residual = rest.monic();
  }
  return out;
}

IntMatrix lattice_basis(const std::vector<std::vector<Integer>>& generators, std::size_t cols) {
  std::vector<std::vector<Integer>> rows;
  for (const auto& g : generators)
    if (std::any_of(g.begin(), g.end(), [](const Integer& v) { return v != 0; })) rows.push_back(g);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        const Integer q = rows[i][c] / rows[r][c];
        for (std::size_t k = 0; k < cols; ++k) rows[i][k] -= q * rows[r][k];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (auto& v : rows[r]) v = -v;
    for (std::size_t i = 0; i < r; ++i) {
      const Integer q = floor_div(rows[i][c], rows[r][c]);
      if (q != 0)
        for (std::size_t k = 0; k < cols; ++k) rows[i][k] -= q * rows[r][k];
    }
    ++r;
  }
  IntMatrix out(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < cols; ++k) out(i, k) = rows[i][k];
  return out;
}

bool RelationLattice::contains(const std::vector<Integer>& m0) const {
  if (m0.size() != ambient_rank) throw DimensionMismatch("lattice vector has the wrong length");
  std::vector<Integer> m = m0;
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    std::size_t p = 0;
    while (basis(i, p) == 0) ++p;
    if (m[p] % basis(i, p) != 0) return false;
    const Integer c = m[p] / basis(i, p);
    for (std::size_t k = 0; k < ambient_rank; ++k) m[k] -= c * basis(i, k);
  }
  return std::all_of(m.begin(), m.end(), [](const Integer& v) { return v == 0; });
}

RelationLattice relation_lattice(const EigenvalueData& values, const std::optional<Rational>& extra_q) {
  if (!values.supported) throw UnsupportedSpectrum();
  // One slot per eigenvalue counted with multiplicity: a rational value or
  // a root of unity zeta_d^k.
  struct Slot {
    Rational value;
    int order = 0;
    long k = 0;
  };
  std::vector<Slot> slots;
  for (const auto& v : values.values) {
    if (v.kind == Eigenvalue::Kind::Rational) {
      if (v.value == 0) throw ZeroInput("zero eigenvalue");
      for (int i = 0; i < v.multiplicity; ++i) slots.push_back({v.value, 0, 0});
    } else {
      const long ph = euler_phi(v.order);
      for (long rep = 0; rep < v.multiplicity / ph; ++rep)
        for (long k = 1; k < v.order; ++k)
          if (std::gcd(k, static_cast<long>(v.order)) == 1) slots.push_back({Rational(0), v.order, k});
    }
  }
  const std::size_t n = slots.size();

  std::map<Integer, std::size_t> prime_index;
  Integer D = 1;
  auto note_rational = [&](const Rational& r) {
    if (r < 0) D = lcm_int(D, 2);
    for (const Integer& part : {Integer(r.get_num()), Integer(r.get_den())})
      if (abs(part) > 1)
        for (const auto& [p, e] : factor_integer(part)) {
          (void)e;
          prime_index.emplace(p, 0);
        }
  };
  for (const auto& s : slots) {
    if (s.order == 0) note_rational(s.value);
    else D = lcm_int(D, s.order);
  }
  if (extra_q) {
    if (*extra_q == 0 || abs(*extra_q) == 1) throw BadOperatorParameter("q must not be 0 or +-1");
    note_rational(*extra_q);
  }
  std::size_t idx = 0;
  for (auto& [p, i] : prime_index) i = idx++;

  // Exponent data of one multiplicand: prime exponents and the torsion
  // coordinate in Z/D.
  auto exponents = [&](const Rational& r, std::vector<Integer>& ev, Integer& tor) {
    ev.assign(prime_index.size(), 0);
    tor = r < 0 ? D / 2 : Integer(0);
    for (int side = 0; side < 2; ++side) {
      const Integer part = side == 0 ? Integer(r.get_num()) : Integer(r.get_den());
      if (abs(part) <= 1) continue;
      for (const auto& [p, e] : factor_integer(part)) ev[prime_index[p]] += side == 0 ? e : -e;
    }
  };

  // Unknowns: m_1..m_n, then j (power of q), then the multiple of D.
  const std::size_t nvars = n + (extra_q ? 1 : 0) + (D > 1 ? 1 : 0);
  const std::size_t nrows = prime_index.size() + (D > 1 ? 1 : 0);
  std::vector<std::vector<Integer>> gens;
  if (nrows == 0) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Integer> e(n, 0);
      e[i] = 1;
      gens.push_back(e);
    }
  } else {
    IntMatrix C(nrows, nvars);
    std::vector<Integer> ev;
    Integer tor;
    for (std::size_t i = 0; i < n; ++i) {
      if (slots[i].order == 0) {
        exponents(slots[i].value, ev, tor);
        for (std::size_t p = 0; p < ev.size(); ++p) C(p, i) = ev[p];
      } else {
        tor = D / slots[i].order * slots[i].k;
      }
      if (D > 1) C(nrows - 1, i) = tor;
    }
    if (extra_q) {
      exponents(*extra_q, ev, tor);
      for (std::size_t p = 0; p < ev.size(); ++p) C(p, n) = -ev[p];
      if (D > 1) C(nrows - 1, n) = -tor;
    }
    if (D > 1) C(nrows - 1, nvars - 1) = D;
    const SmithForm sf = snf(C);
    for (std::size_t c = sf.rank; c < nvars; ++c) {
      std::vector<Integer> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = sf.V(i, c);
      gens.push_back(v);
    }
  }
  RelationLattice L;
  L.ambient_rank = n;
  L.basis = lattice_basis(gens, n);
  if (L.basis.rows() > 0) L.snf_invariants = snf(L.basis).invariants();
  return L;
}

std::string GroupDescriptor::to_string(const std::string& field) const {
  std::vector<std::string> parts;
  if (w_marker == WMarker::W) parts.push_back("W");
  if (w_marker == WMarker::FullGm) parts.push_back("Gm(C)");
  if (torus_rank == 1) parts.push_back("Gm(" + field + ")");
  if (torus_rank > 1) parts.push_back("Gm(" + field + ")^" + std::to_string(torus_rank));
  if (unipotent) parts.push_back("Ga(" + field + ")");
  for (const auto& t : torsion) parts.push_back("Z/" + t.get_str());
  if (parts.empty()) return "1";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " x " + parts[i];
  return out;
}

namespace {

GroupDescriptor descriptor_from(const RelationLattice& L, bool unipotent) {
  GroupDescriptor g;
  g.torus_rank = static_cast<int>(L.ambient_rank - L.rank());
  g.unipotent = unipotent ? 1 : 0;
  for (const auto& d : L.snf_invariants)
    if (d > 1) g.torsion.push_back(d);
  return g;
}

}  // namespace

GroupDescriptor closure_descriptor_over_C(const MatrixRF& A) {
  const JordanChevalley jc = jordan_chevalley(A);
  const EigenvalueData ev = eigenvalue_data(jc.semisimple);
  if (!ev.supported) throw UnsupportedSpectrum();
  GroupDescriptor g = descriptor_from(relation_lattice(ev), !jc.unipotent.is_identity());
  if (g.torsion.size() > 1) throw Error("internal: torsion of a monogenic closure must be cyclic");
  return g;
}

GroupDescriptor galois_descriptor_over_k(const DifferenceSystem& sys) {
  sys.validate();
  const JordanChevalley jc = jordan_chevalley(sys.A);
  const EigenvalueData ev = eigenvalue_data(jc.semisimple);
  if (!ev.supported) throw UnsupportedSpectrum();
  if (sys.op.tag == Case::S) {
    // The unipotent part is gauged away over k.
    GroupDescriptor g = descriptor_from(relation_lattice(ev), false);
    if (g.torsion.size() > 1) throw Error("internal: torsion in case S must be cyclic");
    return g;
  }
  GroupDescriptor g = descriptor_from(relation_lattice(ev, sys.op.q), !jc.unipotent.is_identity());
  if (g.torsion.size() > 2) throw Error("internal: torsion over k has more than two generators");
  return g;
}

}  // namespace diffgal

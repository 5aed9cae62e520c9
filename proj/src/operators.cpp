#include "diffgal/operators.hpp"

#include "diffgal/errors.hpp"

namespace diffgal {

OperatorCase OperatorCase::qdilation(const Rational& q) {
  if (q == 0 || q == 1 || q == -1)
    throw BadOperatorParameter("q must be nonzero and not a root of unity, got " + q.get_str());
  return {Case::Q, q};
}

OperatorCase OperatorCase::mahler(const Rational& q) {
  if (q.get_den() != 1 || q < 2) throw BadOperatorParameter("Mahler q must be an integer >= 2, got " + q.get_str());
  if (q > 64) throw BadOperatorParameter("Mahler q larger than 64 is not supported");
  return {Case::M, q};
}

std::string OperatorCase::name() const { return case_name(tag); }

Case parse_case(const std::string& s) {
  if (s == "S") return Case::S;
  if (s == "Q") return Case::Q;
  if (s == "M") return Case::M;
  throw BadOperatorParameter("unknown case '" + s + "' (expected S, Q or M)");
}

std::string case_name(Case c) {
  switch (c) {
    case Case::S: return "S";
    case Case::Q: return "Q";
    case Case::M: return "M";
  }
  return "?";
}

Polynomial apply_sigma(const OperatorCase& op, const Polynomial& p) {
  switch (op.tag) {
    case Case::S: return p.shift(Rational(1));
    case Case::Q: return p.dilate(op.q);
    case Case::M: return p.substitute_power(op.mahler_q());
  }
  return p;
}

RationalFunction apply_sigma(const OperatorCase& op, const RationalFunction& f) {
  if (f.is_constant()) return f;
  return rf_normalize(apply_sigma(op, f.num()), apply_sigma(op, f.den()));
}

MatrixRF apply_sigma(const OperatorCase& op, const MatrixRF& m) {
  return m.map([&](const RationalFunction& f) { return apply_sigma(op, f); });
}

Polynomial apply_sigma_inverse(const OperatorCase& op, const Polynomial& p) {
  switch (op.tag) {
    case Case::S: return p.shift(Rational(-1));
    case Case::Q: return p.dilate(1 / op.q);
    case Case::M: break;
  }
  throw BadOperatorParameter("the Mahler operator has no inverse on Q(x)");
}

Polynomial apply_sigma_power(const OperatorCase& op, const Polynomial& p, int e) {
  if (e == 0) return p;
  if (op.tag == Case::S) return p.shift(Rational(e));
  if (op.tag == Case::Q) {
    Rational c = 1;
    const Rational base = e > 0 ? op.q : 1 / op.q;
    for (int i = 0; i < (e > 0 ? e : -e); ++i) c *= base;
    return p.dilate(c);
  }
  if (e < 0) throw BadOperatorParameter("the Mahler operator has no inverse on Q(x)");
  Polynomial r = p;
  for (int i = 0; i < e; ++i) r = apply_sigma(op, r);
  return r;
}

RationalFunction apply_delta(const OperatorCase& op, const RationalFunction& f) {
  if (f.is_constant()) return RationalFunction();
  const Polynomial& n = f.num();
  const Polynomial& d = f.den();
  Polynomial top = n.derivative() * d - n * d.derivative();
  if (op.tag != Case::S) top *= Polynomial::x();
  return rf_normalize(top, d * d);
}

MatrixRF apply_delta(const OperatorCase& op, const MatrixRF& m) {
  return m.map([&](const RationalFunction& f) { return apply_delta(op, f); });
}

void DifferenceSystem::validate() const {
  if (!A.is_square() || A.rows() == 0) throw DimensionMismatch("system matrix must be square and non-empty");
  if (A.det().is_zero()) throw SingularInput("system matrix has zero determinant");
}

DifferenceSystem gauge_transform(const DifferenceSystem& sys, const MatrixRF& T) {
  if (!T.is_square() || T.rows() != sys.A.rows()) throw DimensionMismatch("gauge matrix size differs from system");
  MatrixRF Tinv;
  try {
    Tinv = T.inverse();
  } catch (const SingularInput&) {
    throw SingularInput("singular gauge matrix");
  }
  return {sys.op, apply_sigma(sys.op, T) * sys.A * Tinv};
}

MatrixRF transport_certificate(const OperatorCase& op, const MatrixRF& B, const MatrixRF& T) {
  const MatrixRF Tinv = T.inverse();
  return apply_delta(op, T) * Tinv + T * B * Tinv;
}

MatrixRF kron_power_reduction(const MatrixRF& A) {
  if (!A.is_square()) throw DimensionMismatch("kron power of a non-square matrix");
  const RationalFunction d = A.det();
  if (d.is_zero()) throw SingularInput("kron power reduction of a singular matrix");
  MatrixRF k = A;
  for (std::size_t i = 1; i < A.rows(); ++i) k = kron(k, A);
  return k * d.inverse();
}

MatrixRF sigma_power_system(const DifferenceSystem& sys, int t) {
  if (t < 1) throw BadOperatorParameter("sigma power must be >= 1");
  MatrixRF acc = sys.A;
  MatrixRF shifted = sys.A;
  for (int i = 1; i < t; ++i) {
    shifted = apply_sigma(sys.op, shifted);
    acc = shifted * acc;
  }
  return acc;
}

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::Iso: return "iso";
    case Variant::SsInt: return "ss_int";
    case Variant::Piso: return "piso";
  }
  return "?";
}

bool check_consistency(const DifferenceSystem& sys, const MatrixRF& B, Variant variant) {
  const MatrixRF& A = sys.A;
  if (B.rows() != A.rows() || B.cols() != A.cols()) return false;
  const MatrixRF sB = apply_sigma(sys.op, B);
  const MatrixRF dA = apply_delta(sys.op, A);
  switch (variant) {
    case Variant::Iso: {
      const MatrixRF Ainv = A.inverse();
      return sB == A * B * Ainv + dA * Ainv;
    }
    case Variant::SsInt:
      return sB * A * RationalFunction(sys.op.mu()) == A * B + dA;
    case Variant::Piso: {
      const RationalFunction det = A.det();
      const RationalFunction corr = apply_delta(sys.op, det) / det / RationalFunction(static_cast<long>(A.rows()));
      return sB * A * RationalFunction(sys.op.mu()) == A * B + dA - A * corr;
    }
  }
  return false;
}

}  // namespace diffgal

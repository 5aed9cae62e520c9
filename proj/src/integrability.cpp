#include "diffgal/integrability.hpp"

#include "diffgal/errors.hpp"

namespace diffgal {

namespace {

RationalFunction log_derivative_det(const DifferenceSystem& sys) {
  const RationalFunction d = sys.A.det();
  return apply_delta(sys.op, d) / d;
}

Rational variant_mu(const DifferenceSystem& sys, Variant v) {
  return v == Variant::Iso ? Rational(1) : sys.op.mu();
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Found: return "Found";
    case Verdict::No: return "No";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

Variant integrability_variant(Case c) { return c == Case::M ? Variant::SsInt : Variant::Iso; }

ConsistencySystem build_consistency_system(const DifferenceSystem& sys, Variant variant) {
  sys.validate();
  const std::size_t n = sys.n();
  const MatrixRF Ainv = sys.A.inverse();
  const RationalFunction inv_mu(1 / variant_mu(sys, variant));
  ConsistencySystem out;
  out.M = kron(Ainv.transpose(), sys.A) * inv_mu;
  MatrixRF C = apply_delta(sys.op, sys.A) * Ainv;
  if (variant == Variant::Piso)
    C -= MatrixRF::identity(n) * (log_derivative_det(sys) * RationalFunction(Rational(1, static_cast<long>(n))));
  out.c = (C * inv_mu).vec();
  return out;
}

RationalSystem consistency_rational_system(const DifferenceSystem& sys, Variant variant) {
  sys.validate();
  const std::size_t n = sys.n();
  const MatrixRF I = MatrixRF::identity(n);
  RationalSystem rs;
  rs.op = sys.op;
  rs.L = kron(sys.A.transpose(), I) * RationalFunction(variant_mu(sys, variant));
  rs.R = kron(I, sys.A);
  MatrixRF F = apply_delta(sys.op, sys.A);
  if (variant == Variant::Piso)
    F -= sys.A * (log_derivative_det(sys) * RationalFunction(Rational(1, static_cast<long>(n))));
  rs.f0 = F.vec();
  return rs;
}

namespace {

IntegrabilityResult run(const DifferenceSystem& sys, const SolverBounds& bounds, Variant variant) {
  const RationalSystem rs = consistency_rational_system(sys, variant);
  const SolverOutcome out = solve(rs, bounds);
  IntegrabilityResult r;
  r.tag = out.tag;
  r.note = out.note;
  r.degree_searched = out.degree_searched;
  switch (out.kind) {
    case Outcome::Found: {
      IntegrabilityCertificate cert;
      cert.variant = variant;
      cert.B = MatrixRF::unvec(out.y, sys.n(), sys.n());
      cert.verified = check_consistency(sys, cert.B, variant);
      if (!cert.verified) throw Error("internal: integrability certificate failed verification");
      r.verdict = Verdict::Found;
      r.certificate = std::move(cert);
      break;
    }
    case Outcome::NoSolution: r.verdict = Verdict::No; break;
    case Outcome::Unknown: r.verdict = Verdict::Unknown; break;
  }
  return r;
}

}  // namespace

IntegrabilityResult is_integrable(const DifferenceSystem& sys, const SolverBounds& bounds) {
  return run(sys, bounds, integrability_variant(sys.op.tag));
}

IntegrabilityResult is_projectively_integrable(const DifferenceSystem& sys, const SolverBounds& bounds) {
  return run(sys, bounds, Variant::Piso);
}

MatrixRF projective_from_integrable(const MatrixRF& B) {
  const std::size_t n = B.rows();
  return B - MatrixRF::identity(n) * (B.trace() * RationalFunction(Rational(1, static_cast<long>(n))));
}

GapReport integrable_gap_test(const DifferenceSystem& sys, const SolverBounds& bounds) {
  return integrable_gap_test(sys, bounds, is_projectively_integrable(sys, bounds));
}

GapReport integrable_gap_test(const DifferenceSystem& sys, const SolverBounds& bounds,
                              const IntegrabilityResult& projective) {
  sys.validate();
  GapReport rep;
  const SolverOutcome t = telescope_scalar(log_derivative_det(sys), sys.op, false, bounds);
  rep.det_condition_tag = t.tag;
  switch (t.kind) {
    case Outcome::Found:
      rep.det_condition = Verdict::Found;
      rep.b = t.y[0];
      break;
    case Outcome::NoSolution: rep.det_condition = Verdict::No; break;
    case Outcome::Unknown: rep.det_condition = Verdict::Unknown; break;
  }
  rep.projective = projective.verdict;
  // integrable <=> projectively integrable and the determinant condition
  // holds; the trace of an integrability certificate solves the latter.
  if (rep.projective == Verdict::No || rep.det_condition == Verdict::No) {
    rep.conclusion = Verdict::No;
    rep.statement = rep.projective == Verdict::No ? "not projectively integrable, hence not integrable"
                                                  : "the determinant condition fails, hence not integrable";
  } else if (rep.projective == Verdict::Found && rep.det_condition == Verdict::Found) {
    const std::size_t n = sys.n();
    IntegrabilityCertificate cert;
    cert.variant = integrability_variant(sys.op.tag);
    cert.B = projective.certificate->B +
             MatrixRF::identity(n) * (*rep.b * RationalFunction(Rational(1, static_cast<long>(n))));
    cert.verified = check_consistency(sys, cert.B, cert.variant);
    if (!cert.verified) throw Error("internal: gap-test certificate failed verification");
    rep.certificate = std::move(cert);
    rep.conclusion = Verdict::Found;
    rep.statement = "projectively integrable and the determinant condition holds, hence integrable";
  } else {
    rep.conclusion = Verdict::Unknown;
    rep.statement = "undecided: projective integrability or the determinant condition unknown within bounds";
  }
  return rep;
}

namespace {

ShapeParameter unknown(const std::string& name) { return {name, std::nullopt}; }

}  // namespace

ShapeReport integrable_group_shape(const DifferenceSystem& sys, const std::optional<IntegrabilityStatus>& status,
                                   const SolverBounds& bounds) {
  if (!status) throw StatusUnknown();
  sys.validate();
  ShapeReport rep;
  const Case c = sys.op.tag;
  if (*status == IntegrabilityStatus::Integrable) {
    rep.basis = "classification of integrable systems";
    rep.family = c == Case::S ? "Gm(C0)^r x Z/t" : "Gm(C0)^r x Ga(C0)^s x Z/t x Z/p";
    if (sys.A.is_constant()) {
      const GroupDescriptor d = galois_descriptor_over_k(sys);
      rep.exact = true;
      rep.descriptor = d;
      rep.basis += "; constant system: sigma-Galois group over k at C0-points";
      rep.parameters.push_back({"r", Integer(d.torus_rank)});
      if (c != Case::S) rep.parameters.push_back({"s", Integer(d.unipotent)});
      rep.parameters.push_back({"t", d.torsion.empty() ? Integer(1) : d.torsion[0]});
      if (c != Case::S) rep.parameters.push_back({"p", d.torsion.size() > 1 ? d.torsion[1] : Integer(1)});
    } else {
      rep.parameters.push_back(unknown("r"));
      if (c != Case::S) rep.parameters.push_back(unknown("s"));
      rep.parameters.push_back(unknown("t"));
      if (c != Case::S) rep.parameters.push_back(unknown("p"));
    }
    return rep;
  }
  rep.basis = "classification of projectively integrable, non-integrable systems";
  switch (c) {
    case Case::S:
      rep.family = "Gm(C) x Gm(C0)^r x Z/t";
      rep.parameters = {unknown("r"), unknown("t")};
      break;
    case Case::Q: {
      rep.parameters = {unknown("r"), unknown("s"), unknown("t"), unknown("p")};
      // W test: sigma(b) - b = delta(det)/det - c for a constant c.
      const RationalFunction d = sys.A.det();
      const SolverOutcome w = telescope_scalar(apply_delta(sys.op, d) / d, sys.op, true, bounds);
      std::string W = "W";
      if (w.kind == Outcome::Found) {
        W = "W0";
        rep.note = "W0 = {a in C^x : delta(delta(a)/a) = 0}";
      } else if (w.kind == Outcome::NoSolution) {
        W = "Gm(C)";
      } else {
        rep.note = "W is Gm(C) or {a in C^x : delta(delta(a)/a) = 0}, undecided within bounds";
      }
      rep.family = W + " x Gm(C0)^r x Ga(C0)^s x Z/t x Z/p";
      break;
    }
    case Case::M:
      rep.parameters = {unknown("r"), unknown("s"), unknown("t"), unknown("p")};
      rep.family = "Gm(C) x Gm(C0)^r x Ga(C0)^s x Z/t x Z/p";
      break;
  }
  if (c != Case::S) {
    const std::string split =
        "identity component as shown; the product form holds when gcd(n,t,p) = 1, which is not decided here";
    rep.note = rep.note.empty() ? split : rep.note + "; " + split;
  }
  return rep;
}

}  // namespace diffgal

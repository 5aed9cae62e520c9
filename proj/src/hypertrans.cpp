#include "diffgal/hypertrans.hpp"

#include <regex>
#include <set>
#include <sstream>

#include "diffgal/errors.hpp"

namespace diffgal {

std::string scalar_verdict_name(ScalarVerdict::Kind k) {
  switch (k) {
    case ScalarVerdict::Kind::SatisfiesLDE: return "SatisfiesLDE";
    case ScalarVerdict::Kind::WType: return "WType";
    case ScalarVerdict::Kind::Hypertranscendental: return "Hypertranscendental";
    case ScalarVerdict::Kind::Unknown: return "Unknown";
  }
  return "?";
}

ScalarVerdict scalar_classify(const OperatorCase& op, const RationalFunction& a, const SolverBounds& bounds) {
  if (a.is_zero()) throw ZeroInput("scalar_classify needs a != 0");
  ScalarVerdict v;
  v.bounds = bounds;
  const RationalFunction g = apply_delta(op, a) / a;
  const RationalFunction mu(op.mu());

  const SolverOutcome plain = telescope_scalar(g, op, false, bounds);
  v.tag = plain.tag;
  v.note = plain.note;
  if (plain.kind == Outcome::Found) {
    const RationalFunction& b = plain.y[0];
    if (mu * apply_sigma(op, b) - b != g) throw Error("internal: scalar certificate failed verification");
    v.kind = ScalarVerdict::Kind::SatisfiesLDE;
    v.b = b;
    return v;
  }
  if (plain.kind == Outcome::Unknown) return v;

  if (op.tag == Case::Q) {
    const SolverOutcome w = telescope_scalar(g, op, true, bounds);
    v.tag = w.tag;
    v.note = w.note;
    if (w.kind == Outcome::Found) {
      const RationalFunction& b = w.y[0];
      const Rational c = w.params[0];
      if (apply_sigma(op, b) - b != g - RationalFunction(c) || c == 0)
        throw Error("internal: W-type certificate failed verification");
      v.kind = ScalarVerdict::Kind::WType;
      v.b = b;
      v.c = c;
      v.note = "criterion per cited source";
      return v;
    }
    if (w.kind == Outcome::Unknown) return v;
  }
  // plain (and for Q the constant-shifted) equation proven unsolvable
  v.kind = ScalarVerdict::Kind::Hypertranscendental;
  if (op.tag == Case::Q) v.note = "criterion per cited source";
  return v;
}

std::string ReductiveDescriptor::to_string() const {
  std::vector<std::string> parts;
  if (sl2_blocks == 1) parts.push_back("SL(2)");
  if (sl2_blocks > 1) parts.push_back("SL(2)^" + std::to_string(sl2_blocks));
  if (torus_rank == 1) parts.push_back("Gm");
  if (torus_rank > 1) parts.push_back("Gm^" + std::to_string(torus_rank));
  for (const auto& t : finite) parts.push_back("Z/" + t.get_str());
  if (parts.empty()) return "1";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " x " + parts[i];
  return out;
}

ReductiveDescriptor parse_reductive_descriptor(const std::string& text) {
  static const std::regex sl2(R"(SL\(2\)(?:\^([1-9][0-9]*))?)");
  static const std::regex gm(R"((?:Gm|torus)(?:\^([1-9][0-9]*))?)");
  static const std::regex zt(R"(Z/([1-9][0-9]*))");
  ReductiveDescriptor d;
  std::string rest = text;
  std::vector<std::string> factors;
  std::size_t pos;
  while ((pos = rest.find(" x ")) != std::string::npos) {
    factors.push_back(rest.substr(0, pos));
    rest = rest.substr(pos + 3);
  }
  factors.push_back(rest);
  for (auto f : factors) {
    const auto b = f.find_first_not_of(' ');
    const auto e = f.find_last_not_of(' ');
    f = b == std::string::npos ? "" : f.substr(b, e - b + 1);
    std::smatch m;
    if (f == "1") continue;
    if (std::regex_match(f, m, sl2)) {
      d.sl2_blocks += m[1].matched ? std::stoi(m[1]) : 1;
    } else if (std::regex_match(f, m, gm)) {
      d.torus_rank += m[1].matched ? std::stoi(m[1]) : 1;
    } else if (std::regex_match(f, m, zt)) {
      const Integer t(m[1].str(), 10);
      if (t > 1) d.finite.push_back(t);
    } else {
      throw UnsupportedDescriptor("unsupported group factor '" + f + "' (expected SL(2)[^m], Gm[^r], Z/t or 1)");
    }
  }
  return d;
}

LiftReport reductive_lift_report(const ReductiveDescriptor& H) {
  if (H.sl2_blocks < 0 || H.torus_rank < 0) throw UnsupportedDescriptor("negative multiplicity in group descriptor");
  LiftReport r;
  r.input_group = H.to_string();
  const int m = H.sl2_blocks;
  if (m == 0) {
    r.derived_identity_component = "1";
    r.conclusion = "sigma-delta-Galois group is a subgroup of H(C); H^{0,der} is trivial, so the containment is vacuous";
    return r;
  }
  r.derived_identity_component = m == 1 ? "SL(2)" : "SL(2)^" + std::to_string(m);
  r.conclusion = "sigma-delta-Galois group is a subgroup of H(C) containing " + r.derived_identity_component + "(C)";
  if (H.torus_rank == 0) {
    r.diff_transcendence_degree_lower_bound = 3 * m;
  } else {
    r.note = "identity component not semisimple: no degree bound reported";
  }
  return r;
}

MatrixRF companion_sl2_matrix(const Polynomial& a) {
  return MatrixRF{{RationalFunction(0), RationalFunction(-1)}, {RationalFunction(1), RationalFunction(a)}};
}

std::optional<LiftReport> companion_sl2_report(const OperatorCase& op, const Polynomial& a) {
  if (op.tag != Case::S || a.degree() < 1 || a.coeff(0) != 0) return std::nullopt;
  LiftReport r = reductive_lift_report({1, 0, {}});
  r.note = "sigma-Galois group SL(2)(C0) over C0(x) for a(0) = 0, deg a >= 1";
  return r;
}

std::optional<LiftReport> companion_block_report(const OperatorCase& op, const std::vector<Polynomial>& as) {
  if (op.tag != Case::S || as.empty()) return std::nullopt;
  std::set<int> exps;
  for (const auto& a : as) {
    if (a.degree() < 1 || a != Polynomial::monomial(Rational(1), a.degree())) return std::nullopt;
    if (!exps.insert(a.degree()).second) return std::nullopt;
  }
  LiftReport r = reductive_lift_report({static_cast<int>(as.size()), 0, {}});
  r.note = "block diagonal of companion systems with a_j = x^i_j, distinct i_j: sigma-Galois group SL(2)(C0)^m";
  return r;
}

}  // namespace diffgal

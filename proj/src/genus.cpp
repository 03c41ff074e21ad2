#include "solgenus/genus.hpp"

#include "solgenus/errors.hpp"
#include "solgenus/forms.hpp"

namespace solgenus {

std::string_view to_string(TheoremBranch b) {
  switch (b) {
    case TheoremBranch::MainQuadratic: return "MainQuadratic";
    case TheoremBranch::RepeatedOne: return "RepeatedOne";
    case TheoremBranch::RepeatedMinusOne: return "RepeatedMinusOne";
    case TheoremBranch::TraceZero: return "TraceZero";
  }
  return "?";
}

TheoremBranch theorem_branch(const CharPoly& p) {
  if (p.t == 0) return TheoremBranch::TraceZero;
  switch (spectrum_class(p)) {
    case SpectrumClass::RepeatedOne: return TheoremBranch::RepeatedOne;
    case SpectrumClass::RepeatedMinusOne: return TheoremBranch::RepeatedMinusOne;
    case SpectrumClass::SplitRational: return TheoremBranch::TraceZero;
    case SpectrumClass::RealQuadratic:
    case SpectrumClass::ComplexQuadratic: return TheoremBranch::MainQuadratic;
  }
  throw InternalError("unreachable spectrum class");
}

std::string_view to_string(EvidenceLevel e) {
  switch (e) {
    case EvidenceLevel::None: return "none";
    case EvidenceLevel::Fast: return "fast";
    case EvidenceLevel::Full: return "full";
  }
  return "?";
}

EvidenceLevel parse_evidence_level(std::string_view text) {
  if (text == "none") return EvidenceLevel::None;
  if (text == "fast") return EvidenceLevel::Fast;
  if (text == "full") return EvidenceLevel::Full;
  throw DomainError("unknown evidence level: " + std::string(text));
}

std::string_view to_string(Rigidity r) { return r == Rigidity::Rigid ? "Rigid" : "NonRigid"; }

namespace {

FieldDescriptor rational_field(const Int& D) { return {D, 1, isqrt(D), 1}; }

void collect_evidence(GenusReport& report) {
  if (report.evidence_level == EvidenceLevel::None) return;
  const auto& reps = report.representatives;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      PairEvidence pe{i, j, are_conjugate_gl2z(reps[i].matrix, reps[j].matrix),
                      std::nullopt, std::nullopt};
      if (report.evidence_level == EvidenceLevel::Full) {
        pe.brute_force = brute_force_conjugator(reps[i].matrix, reps[j].matrix,
                                                kFullEvidenceBound);
        pe.modular = profinite_evidence(reps[i].matrix, reps[j].matrix,
                                        kFullEvidenceModulus);
      }
      report.evidence.push_back(std::move(pe));
    }
  }
}

}  // namespace

GenusReport genus(const IntMat2& a, EvidenceLevel level) {
  GenusReport r;
  r.matrix = a;
  r.poly = char_poly(a);
  r.geometry = geometry(a);
  r.branch = theorem_branch(r.poly);
  r.evidence_level = level;
  r.presentation = presentation(a);
  r.canonical = canonical_form(a);

  Int D = r.poly.disc();
  if (r.branch == TheoremBranch::MainQuadratic) {
    OrderDisc od = order_disc(r.poly);
    r.field = {od.D, od.D0, od.f, od.radicand()};
    r.eigenvalue = eigenvalue_unit(r.poly);
    r.h_field = class_set(od.D0, EquivMode::Improper).size();
    r.h_order = od.f == 1 ? r.h_field : class_set(od, EquivMode::Improper).size();
    r.genus = r.h_field;
    r.discrepancy = od.f > 1 && r.h_field != r.h_order;
    LMSet lm = lm_representatives(r.poly);
    for (const LMRep& rep : lm.reps) r.representatives.push_back({rep.matrix, rep.form, rep.ideal});
    for (std::size_t i = 0; i < r.representatives.size(); ++i) {
      if (auto w = are_conjugate_gl2z(a, r.representatives[i].matrix)) {
        r.input_class = i;
        r.input_witness = w;
        break;
      }
    }
  } else {
    if (D < 0) {
      // t = 0, n = 1: K = Q(i)
      OrderDisc od = order_disc(r.poly);
      r.field = {od.D, od.D0, od.f, od.radicand()};
      r.h_field = class_set(od.D0, EquivMode::Improper).size();
      r.h_order = class_set(od, EquivMode::Improper).size();
    } else {
      r.field = rational_field(D);
      r.h_field = 1;
      r.h_order = 1;
    }
    r.genus = 1;
    r.representatives.push_back({r.canonical.target, std::nullopt, std::nullopt});
    r.input_class = 0;
    r.input_witness = ConjugacyWitness{r.canonical.conjugator};
  }
  if (r.h_field == 0 || r.representatives.empty()) {
    throw InternalError("empty class set");
  }
  collect_evidence(r);
  return r;
}

bool corollary1_check(const IntMat2& a) {
  CharPoly p = char_poly(a);
  if (p.t != 0 && p.disc() != 0) return true;
  return genus(a, EvidenceLevel::None).genus == 1;
}

Rigidity rigidity_verdict(const IntMat2& a) {
  return genus(a, EvidenceLevel::None).rigid() ? Rigidity::Rigid : Rigidity::NonRigid;
}

namespace {

std::string superscript(const Int& e) {
  static const char* const digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string out = e < 0 ? "⁻" : "";
  for (char ch : to_string(abs(e))) out += digits[ch - '0'];
  return out;
}

std::string power(const char* gen, const Int& e) {
  if (e == 0) return "";
  if (e == 1) return gen;
  return gen + superscript(e);
}

std::string word(const Int& ex, const Int& ey) {
  std::string w = power("x", ex) + power("y", ey);
  return w.empty() ? "1" : w;
}

}  // namespace

std::string presentation(const IntMat2& a) {
  return "⟨x,y,t | [x,y]=1, txt⁻¹=" + word(a.a, a.c) + ", tyt⁻¹=" + word(a.b, a.d) + "⟩";
}

}  // namespace solgenus

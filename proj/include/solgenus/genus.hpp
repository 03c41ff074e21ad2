#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "solgenus/conjugacy.hpp"
#include "solgenus/latimer_macduffee.hpp"
#include "solgenus/matrix.hpp"
#include "solgenus/quadratic_order.hpp"

namespace solgenus {

enum class TheoremBranch { MainQuadratic, RepeatedOne, RepeatedMinusOne, TraceZero };

std::string_view to_string(TheoremBranch b);

TheoremBranch theorem_branch(const CharPoly& p);

/// none: no conjugacy searches. fast: forms-based Z verdicts between the
/// representatives. full: additionally a bounded brute-force search and the
/// mod-m table for every pair.
enum class EvidenceLevel { None, Fast, Full };

std::string_view to_string(EvidenceLevel e);
EvidenceLevel parse_evidence_level(std::string_view text);

inline constexpr std::int64_t kFullEvidenceBound = 50;
inline constexpr std::int64_t kFullEvidenceModulus = 30;

/// Discriminant data of Q(λ). For K = Q (D a square) the field
/// discriminant is reported as 1 and f = sqrt(D), so D = f²·D0 throughout.
struct FieldDescriptor {
  Int D;
  Int D0;
  Int f;
  Int d;  // square-free radicand; 1 for Q
};

struct Representative {
  IntMat2 matrix;
  std::optional<BQForm> form;
  std::optional<IdealRep> ideal;
};

struct PairEvidence {
  std::size_t i;
  std::size_t j;
  std::optional<ConjugacyWitness> z_witness;
  std::optional<BoundedSearch> brute_force;
  std::optional<ProfiniteEvidence> modular;
};

struct GenusReport {
  IntMat2 matrix;
  CharPoly poly;
  GeometryLabel geometry;
  TheoremBranch branch;
  FieldDescriptor field;
  std::optional<UnitElement> eigenvalue;

  std::size_t h_field = 0;
  std::size_t h_order = 0;
  std::size_t genus = 0;
  bool discrepancy = false;

  // MainQuadratic: Latimer–MacDuffee set; otherwise the single canonical form.
  std::vector<Representative> representatives;
  // P·A = target·P for the canonical form of A.
  CanonicalForm canonical;
  // Index into representatives of the class of A, with P·A = rep·P. Empty when
  // A's multiplier ring is larger than Z[λ] (possible only for f > 1).
  std::optional<std::size_t> input_class;
  std::optional<ConjugacyWitness> input_witness;

  EvidenceLevel evidence_level = EvidenceLevel::Fast;
  std::vector<PairEvidence> evidence;

  std::string presentation;

  bool rigid() const { return genus == 1; }
};

GenusReport genus(const IntMat2& a, EvidenceLevel level = EvidenceLevel::Fast);

/// (tr A = 0 or D = 0) ⇒ genus(A) = 1. Returns whether the implication held.
bool corollary1_check(const IntMat2& a);

enum class Rigidity { Rigid, NonRigid };
std::string_view to_string(Rigidity r);
Rigidity rigidity_verdict(const IntMat2& a);

/// ⟨x,y,t | [x,y]=1, txt⁻¹=x^a y^c, tyt⁻¹=x^b y^d⟩ for A = [[a,b],[c,d]].
std::string presentation(const IntMat2& a);

}  // namespace solgenus

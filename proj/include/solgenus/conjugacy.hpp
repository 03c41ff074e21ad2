#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "solgenus/forms.hpp"
#include "solgenus/matrix.hpp"

namespace solgenus {

/// P in GL2(Z) with P·A = B·P, i.e. B = P·A·P⁻¹.
struct ConjugacyWitness {
  IntMat2 P;
};

/// Residue matrix P mod m with P·A ≡ B·P (mod m) and gcd(det P, m) = 1.
/// Entries are reduced into [0, m).
struct ModularWitness {
  std::int64_t m;
  IntMat2 P;
};

/// The fixed-line form of A = [[p, q], [r, s]]: q_A(v) = det(v, A·v) =
/// r·x² + (s − p)·xy − q·y², divided by its content. Definite forms are
/// flipped to positive. Conjugation by U carries q_A to det(U)·(q_A∘U⁻¹).
BQForm matrix_to_form(const IntMat2& a);

/// Inverse of the dictionary above: the matrix of trace t whose fixed-line
/// form is content·q, with content² = (t² − 4n) / disc(q). The orientation is
/// the one q carries (definite q gives a matrix with positive fixed-line form).
IntMat2 form_to_matrix(const BQForm& q, const Int& content, const Int& trace);

/// Authoritative GL2(Z)-conjugacy decision. The witness is verified before it
/// is returned.
std::optional<ConjugacyWitness> are_conjugate_gl2z(const IntMat2& a, const IntMat2& b);

/// Human-readable reason when are_conjugate_gl2z says no.
std::string non_conjugacy_reason(const IntMat2& a, const IntMat2& b);

/// Canonical representative of the GL2(Z)-class of A and P with P·A = target·P.
///
///   D = 0:     [[e, k], [0, e]], e = t/2, k = content of A − eI (k >= 0)
///   t = 0, n = −1:  [[0, 1], [1, 0]], or [[1, 0], [0, −1]] when A ≡ I mod 2
///   irreducible: form_to_matrix of the least reduced form in the Improper
///              class of A's fixed-line form (t = 0, n = 1 gives [[0, −1], [1, 0]])
struct CanonicalForm {
  IntMat2 target;
  IntMat2 conjugator;
};
CanonicalForm canonical_form(const IntMat2& a);

/// Outcome of a bounded exhaustive search. An empty witness only says that no
/// conjugator has all entries in [−bound, bound].
struct BoundedSearch {
  std::optional<ConjugacyWitness> witness;
  std::int64_t bound;

  bool found() const { return witness.has_value(); }
};

/// Scans P with entries in [−bound, bound], det = ±1, and returns the
/// lexicographically least (P11, P12, P21, P22) with P·A = B·P, except that
/// A = B always yields the identity. Entries of A and B must fit in 32 bits
/// and bound in 2^20.
BoundedSearch brute_force_conjugator(const IntMat2& a, const IntMat2& b, std::int64_t bound);

/// Lexicographically least residue witness over Z/m by a direct scan of all
/// matrices mod m (no factorization). A ≡ B gives the identity.
std::optional<ModularWitness> scan_conjugator_mod(const IntMat2& a, const IntMat2& b,
                                                  std::int64_t m);

/// Factors m, scans GL2(Z/p^k) per prime power and glues by CRT.
std::optional<ModularWitness> are_conjugate_mod_m(const IntMat2& a, const IntMat2& b,
                                                  std::int64_t m);

bool verify_witness(const IntMat2& a, const IntMat2& b, const ConjugacyWitness& w);
bool verify_witness(const IntMat2& a, const IntMat2& b, const ModularWitness& w);

struct ModularRow {
  std::int64_t m;
  std::optional<ModularWitness> witness;
};

struct ProfiniteEvidence {
  std::int64_t m_max;
  std::vector<ModularRow> table;
  std::optional<std::int64_t> refuted_at;

  bool consistent() const { return !refuted_at.has_value(); }
  std::string verdict() const;
};

/// are_conjugate_mod_m for every m in [2, m_max]. No precondition.
ProfiniteEvidence modular_table(const IntMat2& a, const IntMat2& b, std::int64_t m_max);

/// As modular_table, but requires equal characteristic polynomials.
ProfiniteEvidence profinite_evidence(const IntMat2& a, const IntMat2& b, std::int64_t m_max);

}  // namespace solgenus

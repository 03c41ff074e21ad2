#pragma once

#include <optional>
#include <string>
#include <vector>

#include "solgenus/bigint.hpp"
#include "solgenus/matrix.hpp"
#include "solgenus/quadratic_order.hpp"

namespace solgenus {

/// Primitive binary quadratic form a·x² + b·xy + c·y² with nonsquare
/// discriminant. Definite forms are always positive definite.
class BQForm {
 public:
  BQForm(Int a, Int b, Int c);

  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  const Int& c() const { return c_; }
  Int disc() const { return b_ * b_ - 4 * a_ * c_; }
  bool is_definite() const { return disc() < 0; }

  std::string to_string() const;

  friend bool operator==(const BQForm&, const BQForm&) = default;

 private:
  Int a_, b_, c_;
};

// Deterministic total order used for picking and sorting class
// representatives: |a|, then positive a first, then |b|, then positive b.
bool form_less(const BQForm& x, const BQForm& y);

/// Proper: SL2(Z) equivalence, q ~ q∘U with det U = 1.
/// Improper: GL2(Z) acting with the determinant twist, q ~ det(U)·(q∘U).
/// Improper classes are the (wide) ideal classes of the order, i.e. the
/// Z-similarity classes of matrices; Proper classes are narrow classes.
enum class EquivMode { Proper, Improper };

std::string_view to_string(EquivMode mode);

/// (q∘U)(v) = q(U·v). Composition: (q∘U)∘V = q∘(U·V).
BQForm compose(const BQForm& q, const IntMat2& u);

/// The twisted action det(U)·(q∘U). Undefined for definite q with det U = −1
/// (the result would be negative definite) and rejected there.
BQForm act(const BQForm& q, const IntMat2& u);

// A form together with the transformation that produced it from the input:
// form = input∘transform.
struct Reduction {
  BQForm form;
  IntMat2 transform;
};

Reduction reduce_definite_with_transform(const BQForm& q);
/// Unique reduced form: |b| <= a <= c, b >= 0 if |b| = a or a = c.
BQForm reduce_definite(const BQForm& q);
bool is_reduced_definite(const BQForm& q);

/// Reduced indefinite: 0 < b < sqrt D and sqrt D − b < 2|a| < sqrt D + b.
bool is_reduced_indefinite(const BQForm& q);
Reduction rho_step_with_transform(const BQForm& q);
BQForm rho_step(const BQForm& q);
Reduction reduce_indefinite_with_transform(const BQForm& q);
/// The cycle of reduced forms through the reduction of q, starting there.
std::vector<BQForm> cycle(const BQForm& q);

struct FormClassSet {
  OrderDisc disc;
  EquivMode mode;
  std::vector<BQForm> reps;

  std::size_t size() const { return reps.size(); }
};

/// One representative per class of primitive forms of discriminant D, sorted
/// by form_less, so the principal class comes first.
FormClassSet class_set(const OrderDisc& disc, EquivMode mode);
FormClassSet class_set(const Int& D, EquivMode mode);

/// U with q2 = q1∘U (Proper) or q2 = det(U)·(q1∘U) (Improper); nullopt if the
/// forms are inequivalent. Throws on discriminant mismatch.
std::optional<IntMat2> forms_equivalent(const BQForm& q1, const BQForm& q2,
                                        EquivMode mode);

}  // namespace solgenus

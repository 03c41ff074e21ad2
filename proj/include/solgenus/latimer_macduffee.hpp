#pragma once

#include <optional>
#include <vector>

#include "solgenus/forms.hpp"
#include "solgenus/matrix.hpp"
#include "solgenus/quadratic_order.hpp"

namespace solgenus {

/// The lattice Z·norm + Z·(−b + sqrt D)/2 in K. It is an ideal of the order
/// of discriminant D exactly when 4·norm divides b² − D.
struct IdealRep {
  Int norm;
  Int b;
  Int D;

  friend bool operator==(const IdealRep&, const IdealRep&) = default;
};

/// (a, b, c) ↦ [|a|, (−b + sqrt D)/2]. A negative leading coefficient selects
/// the same ideal as (−a, b, −c), which lies in the same Improper class.
IdealRep form_to_ideal(const BQForm& q);

/// Matrix of x ↦ λ·x on the basis (norm, (−b + sqrt D)/2), columns holding
/// the coordinates of the images. For the form (a, b, c) and k = (t + b)/2
/// this is [[k, −c], [a, k − b]]; its fixed-line form (see matrix_to_form) is
/// (a, −b, c).
IntMat2 multiplication_matrix(const IdealRep& ideal, const CharPoly& p);

struct LMRep {
  IntMat2 matrix;
  BQForm form;
  IdealRep ideal;
};

/// One matrix per Z-similarity class with invertible ideal class in Z[λ].
struct LMSet {
  CharPoly poly;
  OrderDisc disc;
  std::vector<LMRep> reps;
};

/// Principal class first, realized by the basis (1, λ) so that its matrix is
/// the companion matrix; the remaining classes follow class_set order.
LMSet lm_representatives(const CharPoly& p);

}  // namespace solgenus

#pragma once

#include <string>

#include "solgenus/bigint.hpp"
#include "solgenus/matrix.hpp"

namespace solgenus {

// m = square^2 * core with core square-free and sign(core) = sign(m).
struct SquareFreeParts {
  Int core;
  Int square;
};

// Trial division up to sqrt|m|; intended for desk-scale discriminants.
SquareFreeParts square_free_decompose(const Int& m);

/// Discriminant D of an order in a quadratic field, split as D = f²·D0 with
/// D0 the fundamental discriminant of the field and f the conductor.
struct OrderDisc {
  Int D;
  Int D0;
  Int f;

  // Square-free d with K = Q(sqrt d).
  Int radicand() const;
  bool is_maximal() const { return f == 1; }

  friend bool operator==(const OrderDisc&, const OrderDisc&) = default;
};

bool is_fundamental_discriminant(const Int& D);

// Any nonsquare D ≡ 0, 1 (mod 4).
OrderDisc decompose_discriminant(const Int& D);

// D = t² − 4n; rejects D = 0 and perfect squares with DegenerateSpectrum.
OrderDisc order_disc(const CharPoly& p);

/// x + y·sqrt(D0) with 2x, 2y integral, stored doubled.
struct QuadElement {
  Int twice_x;
  Int twice_y;
  Int D0;

  Int trace() const { return twice_x; }
  // (4x² − 4y²D0) / 4; exact for elements of O_K.
  Int norm() const;
  std::string to_string() const;

  friend bool operator==(const QuadElement&, const QuadElement&) = default;
};

struct UnitElement {
  QuadElement value;
  Int norm;
};

/// The eigenvalue λ = (t + sqrt D)/2 as a unit of O_K.
UnitElement eigenvalue_unit(const CharPoly& p);

/// [O_K : Z[λ, λ⁻¹]], computed as the lattice index of (1, λ) in the
/// maximal-order basis (1, (D0 + sqrt D0)/2).
Int subring_index(const CharPoly& p);

}  // namespace solgenus

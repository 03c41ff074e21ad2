#include "solgenus/quadratic_order.hpp"

#include "solgenus/errors.hpp"

namespace solgenus {

SquareFreeParts square_free_decompose(const Int& m) {
  if (m == 0) throw DomainError("square-free decomposition of zero");
  Int rest = abs(m);
  Int core = 1;
  Int square = 1;
  for (Int p = 2; p * p <= rest; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (mod(rest, p) == 0) {
      rest /= p;
      ++e;
    }
    for (unsigned i = 0; i < e / 2; ++i) square *= p;
    if (e % 2 == 1) core *= p;
  }
  core *= rest;
  if (m < 0) core = -core;
  return {core, square};
}

Int OrderDisc::radicand() const {
  return mod(D0, 4) == 0 ? Int(D0 / 4) : D0;
}

bool is_fundamental_discriminant(const Int& D) {
  if (D == 0 || D == 1) return false;
  Int r = mod(D, 4);
  if (r == 1) return square_free_decompose(D).square == 1;
  if (r != 0) return false;
  Int m = D / 4;
  Int rm = mod(m, 4);
  return (rm == 2 || rm == 3) && square_free_decompose(m).square == 1;
}

OrderDisc decompose_discriminant(const Int& D) {
  if (D == 0 || is_square(D)) {
    throw DegenerateSpectrum("discriminant " + to_string(D) +
                             " is zero or a perfect square");
  }
  Int r = mod(D, 4);
  if (r != 0 && r != 1) {
    throw DomainError("discriminant " + to_string(D) + " is not 0 or 1 mod 4");
  }
  SquareFreeParts parts = square_free_decompose(D);
  Int D0 = parts.core;
  Int f = parts.square;
  if (mod(D0, 4) != 1) {
    // D0 = 4·core requires an even square part.
    D0 *= 4;
    f /= 2;
  }
  if (D != f * f * D0) throw InternalError("discriminant split failed");
  return {D, D0, f};
}

OrderDisc order_disc(const CharPoly& p) { return decompose_discriminant(p.disc()); }

Int QuadElement::norm() const {
  Int num = twice_x * twice_x - twice_y * twice_y * D0;
  if (mod(num, 4) != 0) throw InternalError("non-integral norm");
  return num / 4;
}

std::string QuadElement::to_string() const {
  // Render over the square-free radicand: sqrt(D0) = s·sqrt(d), s ∈ {1, 2}.
  Int d = mod(D0, 4) == 0 ? Int(D0 / 4) : D0;
  Int y2 = mod(D0, 4) == 0 ? Int(2 * twice_y) : twice_y;
  Int x2 = twice_x;
  bool halves = mod(x2, 2) != 0 || mod(y2, 2) != 0;
  if (!halves) {
    x2 /= 2;
    y2 /= 2;
  }
  std::string root = "√" + solgenus::to_string(d);
  std::string coeff;
  if (abs(y2) != 1) coeff = solgenus::to_string(abs(y2));
  std::string body;
  if (x2 != 0) {
    body = solgenus::to_string(x2) + (y2 < 0 ? "-" : "+") + coeff + root;
  } else {
    body = (y2 < 0 ? "-" : "") + coeff + root;
  }
  return halves ? "(" + body + ")/2" : body;
}

UnitElement eigenvalue_unit(const CharPoly& p) {
  OrderDisc od = order_disc(p);
  // λ = (t + f·sqrt(D0)) / 2
  QuadElement value{p.t, od.f, od.D0};
  Int nrm = value.norm();
  if (nrm != p.n) throw InternalError("eigenvalue norm mismatch");
  return {value, nrm};
}

Int subring_index(const CharPoly& p) {
  OrderDisc od = order_disc(p);
  // λ = u + f·ω0 with ω0 = (D0 + sqrt D0)/2, u = (t − f·D0)/2.
  Int twice_u = p.t - od.f * od.D0;
  if (mod(twice_u, 2) != 0) throw InternalError("λ not integral over O_K basis");
  // Columns (1, 0) and (u, f) in the basis (1, ω0).
  IntMat2 change{1, twice_u / 2, 0, od.f};
  return abs(change.det());
}

}  // namespace solgenus

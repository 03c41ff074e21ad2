#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "solgenus/bigint.hpp"

namespace solgenus {

/// 2x2 integer matrix [[a, b], [c, d]], row-major.
///
/// Used for monodromies, conjugators and class representatives. Entries are
/// unbounded; nothing here overflows.
struct IntMat2 {
  Int a, b, c, d;

  static IntMat2 identity() { return {1, 0, 0, 1}; }

  Int det() const { return a * d - b * c; }
  Int trace() const { return a + d; }
  bool is_unimodular() const;

  friend bool operator==(const IntMat2& x, const IntMat2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};

IntMat2 mat_mul(const IntMat2& x, const IntMat2& y);
inline IntMat2 operator*(const IntMat2& x, const IntMat2& y) {
  return mat_mul(x, y);
}
IntMat2 mat_inv(const IntMat2& m);
IntMat2 mat_pow(const IntMat2& m, unsigned long k);

/// λ² − tλ + n for a matrix of trace t and determinant n.
struct CharPoly {
  Int t;
  Int n;

  Int disc() const { return t * t - 4 * n; }

  friend bool operator==(const CharPoly& x, const CharPoly& y) {
    return x.t == y.t && x.n == y.n;
  }
};

/// Rejects matrices outside GL2(Z).
CharPoly char_poly(const IntMat2& m);

/// Companion matrix [[0, −n], [1, t]].
IntMat2 companion(const CharPoly& p);

enum class SpectrumClass {
  RealQuadratic,     // D > 0, not a square
  SplitRational,     // D = 4: eigenvalues 1 and -1
  RepeatedOne,       // D = 0, t = 2
  RepeatedMinusOne,  // D = 0, t = -2
  ComplexQuadratic,  // D < 0
};

SpectrumClass spectrum_class(const CharPoly& p);

enum class GeometryLabel { Sol, Nil, Euclidean };

bool is_hyperbolic(const IntMat2& m);

/// Least k >= 1 with m^k = I, or nullopt when m has infinite order.
std::optional<unsigned> matrix_order(const IntMat2& m);

GeometryLabel geometry(const IntMat2& m);

std::string_view to_string(SpectrumClass s);
std::string_view to_string(GeometryLabel g);

/// Accepts "a b; c d" (commas allowed as separators) or "[[a,b],[c,d]]".
IntMat2 parse_matrix(std::string_view text);
/// Emits "a b; c d".
std::string format_matrix(const IntMat2& m);

}  // namespace solgenus

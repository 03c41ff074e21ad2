#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace solgenus {

using Int = mpz_class;

// floor(sqrt(n)) for n >= 0.
Int isqrt(const Int& n);
bool is_square(const Int& n);

// Non-negative gcd.
Int gcd(const Int& a, const Int& b);

Int floor_div(const Int& a, const Int& b);
// Representative of a mod m in [0, |m|).
Int mod(const Int& a, const Int& m);

inline int sign(const Int& a) { return sgn(a); }
inline Int abs_value(const Int& a) { return abs(a); }

std::optional<std::int64_t> to_int64(const Int& a);

std::string to_string(const Int& a);

// True when |a| < 2^53, i.e. the value survives a round trip through an
// IEEE double.
bool fits_double_exactly(const Int& a);

// Extended Euclid: returns (g, x, y) with a*x + b*y = g >= 0.
struct Bezout {
  Int g, x, y;
};
Bezout extended_gcd(const Int& a, const Int& b);

}  // namespace solgenus

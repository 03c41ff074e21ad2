#include "solgenus/bigint.hpp"

#include <limits>

#include "solgenus/errors.hpp"

namespace solgenus {

Int isqrt(const Int& n) {
  if (n < 0) throw DomainError("isqrt of a negative number");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square(const Int& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int floor_div(const Int& a, const Int& b) {
  if (b == 0) throw DomainError("division by zero");
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int mod(const Int& a, const Int& m) {
  if (m == 0) throw DomainError("modulus zero");
  Int r;
  Int am = abs(m);
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), am.get_mpz_t());
  return r;
}

std::optional<std::int64_t> to_int64(const Int& a) {
  if (a > Int(std::to_string(std::numeric_limits<std::int64_t>::max())) ||
      a < Int(std::to_string(std::numeric_limits<std::int64_t>::min()))) {
    return std::nullopt;
  }
  if (a.fits_slong_p()) return static_cast<std::int64_t>(a.get_si());
  // long narrower than 64 bits: go through the decimal string.
  return static_cast<std::int64_t>(std::stoll(a.get_str()));
}

std::string to_string(const Int& a) { return a.get_str(); }

bool fits_double_exactly(const Int& a) {
  return mpz_sizeinbase(a.get_mpz_t(), 2) <= 53;
}

Bezout extended_gcd(const Int& a, const Int& b) {
  Bezout r;
  mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return r;
}

}  // namespace solgenus

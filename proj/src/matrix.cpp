#include "solgenus/matrix.hpp"

#include <cctype>

#include "solgenus/errors.hpp"

namespace solgenus {

bool IntMat2::is_unimodular() const {
  Int dt = det();
  return dt == 1 || dt == -1;
}

IntMat2 mat_mul(const IntMat2& x, const IntMat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
          x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

IntMat2 mat_inv(const IntMat2& m) {
  Int dt = m.det();
  if (dt != 1 && dt != -1) {
    throw DomainError("matrix is not invertible over Z (det = " +
                      to_string(dt) + ")");
  }
  // adj(m) / det, and 1/det = det for det = ±1
  return {dt * m.d, -dt * m.b, -dt * m.c, dt * m.a};
}

IntMat2 mat_pow(const IntMat2& m, unsigned long k) {
  IntMat2 result = IntMat2::identity();
  IntMat2 base = m;
  while (k != 0) {
    if (k & 1u) result = result * base;
    base = base * base;
    k >>= 1u;
  }
  return result;
}

CharPoly char_poly(const IntMat2& m) {
  if (!m.is_unimodular()) {
    throw DomainError("matrix is not in GL2(Z): det = " + to_string(m.det()));
  }
  return {m.trace(), m.det()};
}

IntMat2 companion(const CharPoly& p) { return {0, -p.n, 1, p.t}; }

SpectrumClass spectrum_class(const CharPoly& p) {
  if (p.n != 1 && p.n != -1) {
    throw DomainError("characteristic polynomial has non-unit constant term");
  }
  Int disc = p.disc();
  if (disc < 0) return SpectrumClass::ComplexQuadratic;
  if (disc == 0) {
    return p.t > 0 ? SpectrumClass::RepeatedOne
                   : SpectrumClass::RepeatedMinusOne;
  }
  if (disc == 4) return SpectrumClass::SplitRational;
  if (is_square(disc)) {
    throw InternalError("unit characteristic polynomial with square discriminant " +
                        to_string(disc));
  }
  return SpectrumClass::RealQuadratic;
}

bool is_hyperbolic(const IntMat2& m) {
  CharPoly p = char_poly(m);
  Int at = abs(p.t);
  if (at > 2) return true;
  return p.n == -1 && p.t != 0;
}

std::optional<unsigned> matrix_order(const IntMat2& m) {
  CharPoly p = char_poly(m);
  // Finite order forces both eigenvalues onto the unit circle, so |t| <= 2;
  // the possible orders in GL2(Z) are 1, 2, 3, 4, 6.
  if (abs(p.t) > 2) return std::nullopt;
  IntMat2 power = m;
  for (unsigned k = 1; k <= 12; ++k) {
    if (power == IntMat2::identity()) return k;
    power = power * m;
  }
  return std::nullopt;
}

GeometryLabel geometry(const IntMat2& m) {
  if (is_hyperbolic(m)) return GeometryLabel::Sol;
  if (matrix_order(m).has_value()) return GeometryLabel::Euclidean;
  return GeometryLabel::Nil;
}

std::string_view to_string(SpectrumClass s) {
  switch (s) {
    case SpectrumClass::RealQuadratic: return "RealQuadratic";
    case SpectrumClass::SplitRational: return "SplitRational";
    case SpectrumClass::RepeatedOne: return "RepeatedOne";
    case SpectrumClass::RepeatedMinusOne: return "RepeatedMinusOne";
    case SpectrumClass::ComplexQuadratic: return "ComplexQuadratic";
  }
  return "?";
}

std::string_view to_string(GeometryLabel g) {
  switch (g) {
    case GeometryLabel::Sol: return "Sol";
    case GeometryLabel::Nil: return "Nil";
    case GeometryLabel::Euclidean: return "Euclidean";
  }
  return "?";
}

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  std::size_t pos() const { return pos_; }
  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  void expect(char ch) {
    skip_ws();
    if (peek() != ch) {
      throw ParseError(std::string("expected '") + ch + "'", pos_);
    }
    ++pos_;
  }

  Int integer() {
    skip_ws();
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    std::size_t digits = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == digits) throw ParseError("expected integer", start);
    std::string token(text_.substr(start, pos_ - start));
    if (token.front() == '+') token.erase(0, 1);
    return Int(token);
  }

  // Whitespace and/or one comma between two entries of a row.
  void entry_separator() {
    std::size_t start = pos_;
    skip_ws();
    if (peek() == ',') {
      ++pos_;
      skip_ws();
    }
    if (pos_ == start) throw ParseError("expected separator", pos_);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

IntMat2 parse_json_matrix(Scanner& s) {
  IntMat2 m;
  s.expect('[');
  s.expect('[');
  m.a = s.integer();
  s.expect(',');
  m.b = s.integer();
  s.expect(']');
  s.expect(',');
  s.expect('[');
  m.c = s.integer();
  s.expect(',');
  m.d = s.integer();
  s.expect(']');
  s.expect(']');
  return m;
}

IntMat2 parse_text_matrix(Scanner& s) {
  IntMat2 m;
  m.a = s.integer();
  s.entry_separator();
  m.b = s.integer();
  s.expect(';');
  m.c = s.integer();
  s.entry_separator();
  m.d = s.integer();
  return m;
}

}  // namespace

IntMat2 parse_matrix(std::string_view text) {
  Scanner s(text);
  s.skip_ws();
  IntMat2 m = s.peek() == '[' ? parse_json_matrix(s) : parse_text_matrix(s);
  s.skip_ws();
  if (!s.done()) throw ParseError("trailing input", s.pos());
  return m;
}

std::string format_matrix(const IntMat2& m) {
  return to_string(m.a) + " " + to_string(m.b) + "; " + to_string(m.c) + " " +
         to_string(m.d);
}

}  // namespace solgenus

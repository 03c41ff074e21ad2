#include "solgenus/conjugacy.hpp"

#include <array>
#include <map>
#include <numeric>

#include "solgenus/errors.hpp"

namespace solgenus {

namespace {

const IntMat2 kFlip{1, 0, 0, -1};

// Raw fixed-line data of an irreducible A: primitive form (positive when
// definite), the sign that was removed, and the content.
struct OrientedForm {
  BQForm form;
  int sign;
  Int content;
};

OrientedForm oriented_form(const IntMat2& m) {
  CharPoly p = char_poly(m);
  Int D = p.disc();
  if (D == 0 || is_square(D)) {
    throw DegenerateSpectrum("characteristic polynomial of " + format_matrix(m) +
                             " is reducible");
  }
  Int a = m.c;
  Int b = m.d - m.a;
  Int c = -m.b;
  Int g = gcd(gcd(a, b), c);
  int s = (D < 0 && a < 0) ? -1 : 1;
  return {BQForm(s * a / g, s * b / g, s * c / g), s, g};
}

void require_unimodular(const IntMat2& m) {
  if (!m.is_unimodular()) {
    throw DomainError("matrix " + format_matrix(m) + " is not in GL2(Z)");
  }
}

// Primitive vector spanning the kernel of a nonzero rank-one matrix.
std::array<Int, 2> kernel_vector(const IntMat2& n) {
  Int x, y;
  if (n.a != 0 || n.b != 0) {
    x = -n.b;
    y = n.a;
  } else {
    x = -n.d;
    y = n.c;
  }
  Int g = gcd(x, y);
  if (g == 0) throw InternalError("kernel of the zero matrix requested");
  return {x / g, y / g};
}

// Unimodular matrix with first column (x, y), (x, y) primitive.
IntMat2 complete_basis(const std::array<Int, 2>& v) {
  Bezout e = extended_gcd(v[0], v[1]);  // v0·ex + v1·ey = 1
  if (e.g != 1) throw InternalError("vector is not primitive");
  // det [[v0, −ey], [v1, ex]] = v0·ex + v1·ey = 1
  return {v[0], -e.y, v[1], e.x};
}

CanonicalForm canonical_repeated(const IntMat2& m, const Int& eig) {
  IntMat2 nil{m.a - eig, m.b, m.c, m.d - eig};
  if (nil == IntMat2{0, 0, 0, 0}) return {m, IntMat2::identity()};
  IntMat2 basis = complete_basis(kernel_vector(nil));
  IntMat2 upper = mat_inv(basis) * m * basis;  // [[e, k'], [0, e]]
  if (upper.c != 0 || upper.a != eig || upper.d != eig) {
    throw InternalError("unipotent normal form failed");
  }
  if (upper.b < 0) {
    basis = basis * kFlip;
    upper = mat_inv(basis) * m * basis;
  }
  return {upper, mat_inv(basis)};
}

CanonicalForm canonical_involution(const IntMat2& m) {
  // A² = I with eigenvalues 1 and −1.
  std::array<Int, 2> plus = kernel_vector({m.a - 1, m.b, m.c, m.d - 1});
  std::array<Int, 2> minus = kernel_vector({m.a + 1, m.b, m.c, m.d + 1});
  Int index = plus[0] * minus[1] - plus[1] * minus[0];
  IntMat2 basis;
  IntMat2 target;
  if (abs(index) == 1) {
    basis = {plus[0], minus[0], plus[1], minus[1]};
    target = {1, 0, 0, -1};
  } else if (abs(index) == 2) {
    // Eigenlattice has index 2; (x + z)/2 and its image give a basis on which
    // A acts by swapping.
    Int y0 = (plus[0] + minus[0]) / 2;
    Int y1 = (plus[1] + minus[1]) / 2;
    basis = {y0, m.a * y0 + m.b * y1, y1, m.c * y0 + m.d * y1};
    target = {0, 1, 1, 0};
  } else {
    throw InternalError("eigenlattice index of an involution is not 1 or 2");
  }
  if (!basis.is_unimodular()) throw InternalError("involution basis is not unimodular");
  return {target, mat_inv(basis)};
}

// Least form (form_less) in the Improper class of the fixed-line form,
// realized as a matrix.
IntMat2 irreducible_target(const IntMat2& m) {
  OrientedForm of = oriented_form(m);
  Int t = m.trace();
  if (of.form.is_definite()) {
    BQForm positive = of.sign > 0 ? of.form : compose(of.form, kFlip);
    return form_to_matrix(reduce_definite(positive), of.content, t);
  }
  std::optional<BQForm> best;
  for (const BQForm& start : {of.form, act(of.form, kFlip)}) {
    for (const BQForm& q : cycle(start)) {
      if (!best || form_less(q, *best)) best = q;
    }
  }
  return form_to_matrix(*best, of.content, t);
}

void check_fits(const IntMat2& m) {
  const Int limit = Int(1) << 31;
  for (const Int* e : {&m.a, &m.b, &m.c, &m.d}) {
    if (abs(*e) >= limit) {
      throw DomainError("bounded search needs entries below 2^31 in absolute value");
    }
  }
}

using i64 = std::int64_t;
using i128 = __int128;

std::array<i64, 4> entries64(const IntMat2& m) {
  return {*to_int64(m.a), *to_int64(m.b), *to_int64(m.c), *to_int64(m.d)};
}

bool commutes_exactly(const std::array<i64, 4>& a, const std::array<i64, 4>& b,
                      i64 x, i64 y, i64 z, i64 w) {
  i128 det = static_cast<i128>(x) * w - static_cast<i128>(y) * z;
  if (det != 1 && det != -1) return false;
  auto [a1, a2, a3, a4] = a;
  auto [b1, b2, b3, b4] = b;
  return static_cast<i128>(x) * a1 + static_cast<i128>(y) * a3 ==
             static_cast<i128>(b1) * x + static_cast<i128>(b2) * z &&
         static_cast<i128>(x) * a2 + static_cast<i128>(y) * a4 ==
             static_cast<i128>(b1) * y + static_cast<i128>(b2) * w &&
         static_cast<i128>(z) * a1 + static_cast<i128>(w) * a3 ==
             static_cast<i128>(b3) * x + static_cast<i128>(b4) * z &&
         static_cast<i128>(z) * a2 + static_cast<i128>(w) * a4 ==
             static_cast<i128>(b3) * y + static_cast<i128>(b4) * w;
}

// n / d when exact and within [−bound, bound].
std::optional<i64> exact_in_box(i128 n, i64 d, i64 bound) {
  if (n % d != 0) return std::nullopt;
  i128 q = n / d;
  if (q < -bound || q > bound) return std::nullopt;
  return static_cast<i64>(q);
}

i64 mod64(i128 v, i64 m) {
  i128 r = v % m;
  return static_cast<i64>(r < 0 ? r + m : r);
}

std::vector<std::pair<i64, i64>> prime_power_factors(i64 m) {
  std::vector<std::pair<i64, i64>> out;  // (p, p^k)
  for (i64 p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    i64 q = 1;
    while (m % p == 0) {
      m /= p;
      q *= p;
    }
    out.emplace_back(p, q);
  }
  if (m > 1) out.emplace_back(m, m);
  return out;
}

}  // namespace

BQForm matrix_to_form(const IntMat2& a) { return oriented_form(a).form; }

IntMat2 form_to_matrix(const BQForm& q, const Int& content, const Int& trace) {
  Int gb = content * q.b();
  if (content <= 0 || mod(trace - gb, 2) != 0) {
    throw DomainError("no integral matrix with trace " + to_string(trace) +
                      " has fixed-line form " + to_string(content) + "·" + q.to_string());
  }
  return {(trace - gb) / 2, -content * q.c(), content * q.a(), (trace + gb) / 2};
}

CanonicalForm canonical_form(const IntMat2& a) {
  CharPoly p = char_poly(a);
  Int D = p.disc();
  CanonicalForm out;
  if (D == 0) {
    out = canonical_repeated(a, p.t / 2);
  } else if (D == 4) {
    out = canonical_involution(a);
  } else {
    IntMat2 target = irreducible_target(a);
    auto w = are_conjugate_gl2z(a, target);
    if (!w) throw InternalError("matrix is not conjugate to its canonical form");
    out = {target, w->P};
  }
  if (!verify_witness(a, out.target, ConjugacyWitness{out.conjugator})) {
    throw InternalError("canonical conjugator failed verification");
  }
  return out;
}

std::optional<ConjugacyWitness> are_conjugate_gl2z(const IntMat2& a, const IntMat2& b) {
  CharPoly pa = char_poly(a);
  CharPoly pb = char_poly(b);
  if (!(pa == pb)) return std::nullopt;
  Int D = pa.disc();
  ConjugacyWitness w;
  if (D == 0 || D == 4) {
    CanonicalForm ca = canonical_form(a);
    CanonicalForm cb = canonical_form(b);
    if (!(ca.target == cb.target)) return std::nullopt;
    w.P = mat_inv(cb.conjugator) * ca.conjugator;
  } else {
    OrientedForm fa = oriented_form(a);
    OrientedForm fb = oriented_form(b);
    if (fa.content != fb.content) return std::nullopt;
    // P·A·P⁻¹ = B  ⇔  q_B(P·v) = det(P)·q_A(v)
    if (D > 0) {
      auto u = forms_equivalent(fb.form, fa.form, EquivMode::Improper);
      if (!u) return std::nullopt;
      w.P = *u;
    } else if (fa.sign == fb.sign) {
      auto u = forms_equivalent(fb.form, fa.form, EquivMode::Proper);
      if (!u) return std::nullopt;
      w.P = *u;
    } else {
      auto u = forms_equivalent(fb.form, compose(fa.form, kFlip), EquivMode::Proper);
      if (!u) return std::nullopt;
      w.P = *u * kFlip;
    }
  }
  if (!verify_witness(a, b, w)) {
    throw InternalError("conjugator failed verification for " + format_matrix(a) +
                        " and " + format_matrix(b));
  }
  return w;
}

std::string non_conjugacy_reason(const IntMat2& a, const IntMat2& b) {
  CharPoly pa = char_poly(a);
  CharPoly pb = char_poly(b);
  if (pa.t != pb.t) return "trace mismatch";
  if (pa.n != pb.n) return "determinant mismatch";
  Int D = pa.disc();
  if (D == 0 || D == 4) return "canonical forms differ";
  if (oriented_form(a).content != oriented_form(b).content) {
    return "fixed-line forms have different discriminants";
  }
  return "fixed-line forms lie in different ideal classes";
}

bool verify_witness(const IntMat2& a, const IntMat2& b, const ConjugacyWitness& w) {
  return w.P.is_unimodular() && w.P * a == b * w.P;
}

bool verify_witness(const IntMat2& a, const IntMat2& b, const ModularWitness& w) {
  Int m = w.m;
  if (w.m < 2 || gcd(w.P.det(), m) != 1) return false;
  IntMat2 lhs = w.P * a;
  IntMat2 rhs = b * w.P;
  return mod(lhs.a - rhs.a, m) == 0 && mod(lhs.b - rhs.b, m) == 0 &&
         mod(lhs.c - rhs.c, m) == 0 && mod(lhs.d - rhs.d, m) == 0;
}

BoundedSearch brute_force_conjugator(const IntMat2& a, const IntMat2& b, std::int64_t bound) {
  require_unimodular(a);
  require_unimodular(b);
  if (bound < 0 || bound > (i64{1} << 20)) throw DomainError("search bound out of range");
  check_fits(a);
  check_fits(b);
  BoundedSearch result{std::nullopt, bound};
  if (a == b && bound >= 1) {
    result.witness = ConjugacyWitness{IntMat2::identity()};
    return result;
  }
  auto ea = entries64(a);
  auto eb = entries64(b);
  auto [a1, a2, a3, a4] = ea;
  auto [b1, b2, b3, b4] = eb;
  auto hit = [&](i64 x, i64 y, i64 z, i64 w) {
    result.witness = ConjugacyWitness{IntMat2{x, y, z, w}};
  };
  if (b2 != 0) {
    // Row 1 of P·A = B·P determines (P21, P22) from (P11, P12).
    for (i64 x = -bound; x <= bound; ++x) {
      for (i64 y = -bound; y <= bound; ++y) {
        auto z = exact_in_box(static_cast<i128>(x) * (a1 - b1) + static_cast<i128>(y) * a3, b2, bound);
        if (!z) continue;
        auto w = exact_in_box(static_cast<i128>(x) * a2 + static_cast<i128>(y) * (a4 - b1), b2, bound);
        if (!w) continue;
        if (commutes_exactly(ea, eb, x, y, *z, *w)) {
          hit(x, y, *z, *w);
          return result;
        }
      }
    }
  } else if (b3 != 0) {
    // Row 2 determines (P11, P12) from (P21, P22); keep the least in full order.
    std::optional<std::array<i64, 4>> best;
    for (i64 z = -bound; z <= bound; ++z) {
      for (i64 w = -bound; w <= bound; ++w) {
        auto x = exact_in_box(static_cast<i128>(z) * (a1 - b4) + static_cast<i128>(w) * a3, b3, bound);
        if (!x) continue;
        auto y = exact_in_box(static_cast<i128>(z) * a2 + static_cast<i128>(w) * (a4 - b4), b3, bound);
        if (!y) continue;
        std::array<i64, 4> cand{*x, *y, z, w};
        if (commutes_exactly(ea, eb, *x, *y, z, w) && (!best || cand < *best)) best = cand;
      }
    }
    if (best) hit((*best)[0], (*best)[1], (*best)[2], (*best)[3]);
  } else {
    for (i64 x = -bound; x <= bound; ++x)
      for (i64 y = -bound; y <= bound; ++y)
        for (i64 z = -bound; z <= bound; ++z)
          for (i64 w = -bound; w <= bound; ++w)
            if (commutes_exactly(ea, eb, x, y, z, w)) {
              hit(x, y, z, w);
              return result;
            }
  }
  if (result.witness && !verify_witness(a, b, *result.witness)) {
    throw InternalError("bounded search returned an invalid witness");
  }
  return result;
}

std::optional<ModularWitness> scan_conjugator_mod(const IntMat2& a, const IntMat2& b,
                                                  std::int64_t m) {
  if (m < 2 || m > (i64{1} << 20)) throw DomainError("modulus out of range");
  Int mm = m;
  auto res = [&](const Int& v) { return *to_int64(mod(v, mm)); };
  const i64 a1 = res(a.a), a2 = res(a.b), a3 = res(a.c), a4 = res(a.d);
  const i64 b1 = res(b.a), b2 = res(b.b), b3 = res(b.c), b4 = res(b.d);
  if (a1 == b1 && a2 == b2 && a3 == b3 && a4 == b4) return ModularWitness{m, IntMat2::identity()};
  for (i64 x = 0; x < m; ++x) {
    for (i64 y = 0; y < m; ++y) {
      const i64 lhs1 = mod64(static_cast<i128>(x) * (a1 - b1) + static_cast<i128>(y) * a3, m);
      for (i64 z = 0; z < m; ++z) {
        // row 1, column 1: x·a1 + y·a3 ≡ b1·x + b2·z
        if (mod64(static_cast<i128>(b2) * z, m) != lhs1) continue;
        for (i64 w = 0; w < m; ++w) {
          if (mod64(static_cast<i128>(x) * a2 + static_cast<i128>(y) * a4 -
                        static_cast<i128>(b1) * y - static_cast<i128>(b2) * w, m) != 0) continue;
          if (mod64(static_cast<i128>(z) * a1 + static_cast<i128>(w) * a3 -
                        static_cast<i128>(b3) * x - static_cast<i128>(b4) * z, m) != 0) continue;
          if (mod64(static_cast<i128>(z) * a2 + static_cast<i128>(w) * a4 -
                        static_cast<i128>(b3) * y - static_cast<i128>(b4) * w, m) != 0) continue;
          i64 det = mod64(static_cast<i128>(x) * w - static_cast<i128>(y) * z, m);
          if (std::gcd(det, m) != 1) continue;
          return ModularWitness{m, IntMat2{x, y, z, w}};
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

// CRT-glues per-prime-power witnesses (modulus q, residue matrix) into one
// witness mod m and verifies it.
ModularWitness glue_witnesses(const IntMat2& a, const IntMat2& b, i64 m,
                              const std::vector<ModularWitness>& parts) {
  IntMat2 glued{0, 0, 0, 0};
  Int modulus = 1;
  for (const ModularWitness& part : parts) {
    Int q = part.m;
    Bezout e = extended_gcd(modulus, q);  // modulus·e.x + q·e.y = 1
    auto glue = [&](const Int& r1, const Int& r2) {
      // ≡ r1 mod modulus, ≡ r2 mod q
      return mod(r1 + (r2 - r1) * e.x * modulus, modulus * q);
    };
    glued = {glue(glued.a, part.P.a), glue(glued.b, part.P.b),
             glue(glued.c, part.P.c), glue(glued.d, part.P.d)};
    modulus *= q;
  }
  ModularWitness w{m, glued};
  if (!verify_witness(a, b, w)) throw InternalError("CRT witness failed verification");
  return w;
}

}  // namespace

std::optional<ModularWitness> are_conjugate_mod_m(const IntMat2& a, const IntMat2& b,
                                                  std::int64_t m) {
  if (m < 2 || m > (i64{1} << 20)) throw DomainError("modulus out of range");
  std::vector<ModularWitness> parts;
  for (auto [p, q] : prime_power_factors(m)) {
    auto part = scan_conjugator_mod(a, b, q);
    if (!part) return std::nullopt;
    parts.push_back(*part);
  }
  return glue_witnesses(a, b, m, parts);
}

std::string ProfiniteEvidence::verdict() const {
  if (refuted_at) return "refuted at m = " + std::to_string(*refuted_at);
  return "consistent with profinite conjugacy up to m = " + std::to_string(m_max);
}

ProfiniteEvidence modular_table(const IntMat2& a, const IntMat2& b, std::int64_t m_max) {
  if (m_max < 2) throw DomainError("m_max must be at least 2");
  ProfiniteEvidence ev{m_max, {}, std::nullopt};
  // Prime-power scans repeat across m; cache them.
  std::map<i64, std::optional<ModularWitness>> by_prime_power;
  auto scan = [&](i64 q) -> const std::optional<ModularWitness>& {
    auto it = by_prime_power.find(q);
    if (it == by_prime_power.end()) {
      it = by_prime_power.emplace(q, scan_conjugator_mod(a, b, q)).first;
    }
    return it->second;
  };
  for (i64 m = 2; m <= m_max; ++m) {
    std::vector<ModularWitness> parts;
    for (auto [p, q] : prime_power_factors(m)) {
      const auto& part = scan(q);
      if (!part) break;
      parts.push_back(*part);
    }
    ModularRow row{m, std::nullopt};
    if (parts.size() == prime_power_factors(m).size()) {
      row.witness = glue_witnesses(a, b, m, parts);
    }
    if (!row.witness && !ev.refuted_at) ev.refuted_at = m;
    ev.table.push_back(std::move(row));
  }
  return ev;
}

ProfiniteEvidence profinite_evidence(const IntMat2& a, const IntMat2& b, std::int64_t m_max) {
  if (!(char_poly(a) == char_poly(b))) {
    throw DomainError("profinite evidence requires equal characteristic polynomials");
  }
  return modular_table(a, b, m_max);
}

}  // namespace solgenus

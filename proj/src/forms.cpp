#include "solgenus/forms.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "solgenus/errors.hpp"

namespace solgenus {

BQForm::BQForm(Int a, Int b, Int c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  Int D = disc();
  if (D == 0 || is_square(D)) {
    throw DegenerateSpectrum("form " + to_string() + " has square discriminant");
  }
  if (gcd(gcd(a_, b_), c_) != 1) {
    throw DomainError("form " + to_string() + " is not primitive");
  }
  if (D < 0 && a_ < 0) {
    throw DomainError("definite form " + to_string() + " is not positive");
  }
}

std::string BQForm::to_string() const {
  return "(" + solgenus::to_string(a_) + "," + solgenus::to_string(b_) + "," +
         solgenus::to_string(c_) + ")";
}

bool form_less(const BQForm& x, const BQForm& y) {
  auto key = [](const BQForm& q) {
    return std::make_tuple(Int(abs(q.a())), q.a() < 0, Int(abs(q.b())), q.b() < 0);
  };
  auto kx = key(x);
  auto ky = key(y);
  if (kx != ky) return kx < ky;
  return x.c() < y.c();
}

std::string_view to_string(EquivMode mode) {
  return mode == EquivMode::Proper ? "proper" : "improper";
}

BQForm compose(const BQForm& q, const IntMat2& u) {
  const Int& a = q.a();
  const Int& b = q.b();
  const Int& c = q.c();
  return BQForm(a * u.a * u.a + b * u.a * u.c + c * u.c * u.c,
                2 * a * u.a * u.b + b * (u.a * u.d + u.b * u.c) + 2 * c * u.c * u.d,
                a * u.b * u.b + b * u.b * u.d + c * u.d * u.d);
}

BQForm act(const BQForm& q, const IntMat2& u) {
  Int dt = u.det();
  if (dt != 1 && dt != -1) throw DomainError("transformation is not in GL2(Z)");
  BQForm r = compose(q, u);
  if (dt == 1) return r;
  if (q.is_definite()) {
    throw DomainError("twisted action of a det -1 matrix on a definite form");
  }
  return BQForm(-r.a(), -r.b(), -r.c());
}

namespace {

const IntMat2 kSwap{0, -1, 1, 0};

IntMat2 translation(const Int& s) { return {1, s, 0, 1}; }

void require_definite(const BQForm& q) {
  if (!q.is_definite()) throw DomainError("form " + q.to_string() + " is indefinite");
}

void require_indefinite(const BQForm& q) {
  if (q.is_definite()) throw DomainError("form " + q.to_string() + " is definite");
}

// Generous bound on reduction steps; reduction takes O(log) steps in the
// size of the coefficients, so hitting it means a bug.
std::size_t step_limit(const BQForm& q) {
  std::size_t bits = mpz_sizeinbase(q.a().get_mpz_t(), 2) +
                     mpz_sizeinbase(q.b().get_mpz_t(), 2) +
                     mpz_sizeinbase(q.c().get_mpz_t(), 2);
  std::size_t root = mpz_sizeinbase(Int(abs(q.disc())).get_mpz_t(), 2);
  // also bounds cycle walks: a cycle has at most as many members as there are
  // reduced forms, which is O(sqrt D · d(D)).
  std::size_t cyc = root < 56 ? (std::size_t{1} << (root / 2 + 2)) * (root + 1) * 4 : SIZE_MAX / 4;
  return 64 + 8 * bits + cyc;
}

}  // namespace

bool is_reduced_definite(const BQForm& q) {
  require_definite(q);
  if (abs(q.b()) > q.a() || q.a() > q.c()) return false;
  if ((abs(q.b()) == q.a() || q.a() == q.c()) && q.b() < 0) return false;
  return true;
}

Reduction reduce_definite_with_transform(const BQForm& q) {
  require_definite(q);
  BQForm cur = q;
  IntMat2 total = IntMat2::identity();
  auto apply = [&](const IntMat2& u) {
    cur = compose(cur, u);
    total = total * u;
  };
  std::size_t limit = step_limit(q);
  for (std::size_t step = 0;; ++step) {
    if (step > limit) throw InternalError("definite reduction did not terminate");
    const Int& a = cur.a();
    if (cur.b() > a || cur.b() <= -a) {
      // new b = b + 2as lands in (−a, a]
      apply(translation(floor_div(a - cur.b(), 2 * a)));
    }
    if (cur.a() > cur.c()) {
      apply(kSwap);
      continue;
    }
    if (cur.a() == cur.c() && cur.b() < 0) apply(kSwap);
    break;
  }
  return {cur, total};
}

BQForm reduce_definite(const BQForm& q) { return reduce_definite_with_transform(q).form; }

bool is_reduced_indefinite(const BQForm& q) {
  require_indefinite(q);
  Int D = q.disc();
  const Int& b = q.b();
  if (b <= 0 || b * b >= D) return false;
  Int two_a = 2 * abs(q.a());
  Int lower = two_a + b;  // sqrt D − b < 2|a|  ⇔  D < (2|a| + b)²
  if (lower * lower <= D) return false;
  Int upper = two_a - b;  // 2|a| < sqrt D + b  ⇔  2|a| − b < sqrt D
  return upper < 0 || upper * upper < D;
}

Reduction rho_step_with_transform(const BQForm& q) {
  require_indefinite(q);
  Int D = q.disc();
  Int root = isqrt(D);
  const Int& b = q.b();
  const Int& c = q.c();
  Int abs_c = abs(c);
  Int width = 2 * abs_c;
  Int next_b;
  if (c * c > D) {
    // normalize into (−|c|, |c|]
    next_b = mod(-b, width);
    if (next_b > abs_c) next_b -= width;
  } else {
    // the unique value in (sqrt D − 2|c|, sqrt D)
    Int lo = root - width + 1;
    next_b = lo + mod(-b - lo, width);
  }
  Int num = next_b + b;
  if (mod(num, 2 * c) != 0) throw InternalError("rho step is not integral");
  IntMat2 u{0, -1, 1, num / (2 * c)};
  BQForm next = compose(q, u);
  if (next.a() != c || next.b() != next_b) throw InternalError("rho step mismatch");
  return {next, u};
}

BQForm rho_step(const BQForm& q) { return rho_step_with_transform(q).form; }

Reduction reduce_indefinite_with_transform(const BQForm& q) {
  require_indefinite(q);
  BQForm cur = q;
  IntMat2 total = IntMat2::identity();
  std::size_t limit = step_limit(q);
  for (std::size_t step = 0; !is_reduced_indefinite(cur); ++step) {
    if (step > limit) throw InternalError("indefinite reduction did not terminate");
    Reduction r = rho_step_with_transform(cur);
    cur = r.form;
    total = total * r.transform;
  }
  return {cur, total};
}

std::vector<BQForm> cycle(const BQForm& q) {
  BQForm start = reduce_indefinite_with_transform(q).form;
  std::vector<BQForm> out{start};
  std::size_t limit = step_limit(start);
  for (BQForm cur = rho_step(start); !(cur == start); cur = rho_step(cur)) {
    out.push_back(cur);
    if (out.size() > limit) throw InternalError("cycle did not close");
  }
  return out;
}

namespace {

struct FormKeyLess {
  bool operator()(const BQForm& x, const BQForm& y) const {
    if (x.a() != y.a()) return x.a() < y.a();
    if (x.b() != y.b()) return x.b() < y.b();
    return x.c() < y.c();
  }
};

std::vector<BQForm> definite_class_reps(const Int& D) {
  std::vector<BQForm> reps;
  Int absD = abs(D);
  for (Int a = 1; 3 * a * a <= absD; ++a) {
    for (Int b = -a + 1; b <= a; ++b) {
      Int num = b * b - D;
      if (mod(num, 4 * a) != 0) continue;
      Int c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (gcd(gcd(a, b), c) != 1) continue;
      reps.emplace_back(a, b, c);
    }
  }
  return reps;
}

std::vector<BQForm> reduced_indefinite_forms(const Int& D) {
  std::vector<BQForm> out;
  Int root = isqrt(D);
  for (Int b = 1; b <= root; ++b) {
    if (mod(b - D, 2) != 0) continue;
    Int num = b * b - D;  // = 4ac < 0
    // sqrt D − b < 2|a|  and  2|a| <= b + floor(sqrt D)
    for (Int a = 1; 2 * a <= b + root; ++a) {
      Int lower = 2 * a + b;
      if (lower * lower <= D) continue;
      if (mod(num, 4 * a) != 0) continue;
      for (int s : {1, -1}) {
        Int sa = s * a;
        Int c = num / (4 * sa);
        if (gcd(gcd(sa, b), c) != 1) continue;
        out.emplace_back(sa, b, c);
      }
    }
  }
  return out;
}

// Union-find over cycle indices.
std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

std::vector<BQForm> indefinite_class_reps(const Int& D, EquivMode mode) {
  std::vector<BQForm> forms = reduced_indefinite_forms(D);
  std::map<BQForm, std::size_t, FormKeyLess> cycle_of;
  std::vector<std::vector<BQForm>> cycles;
  for (const BQForm& q : forms) {
    if (cycle_of.count(q) != 0) continue;
    std::vector<BQForm> cyc = cycle(q);
    for (const BQForm& member : cyc) cycle_of.emplace(member, cycles.size());
    cycles.push_back(std::move(cyc));
  }
  if (cycle_of.size() != forms.size()) {
    throw InternalError("reduced-form enumeration and cycles disagree");
  }
  std::vector<std::size_t> parent(cycles.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  if (mode == EquivMode::Improper) {
    for (const BQForm& q : forms) {
      BQForm twin(-q.a(), q.b(), -q.c());
      std::size_t x = find_root(parent, cycle_of.at(q));
      std::size_t y = find_root(parent, cycle_of.at(twin));
      if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
  }
  std::map<std::size_t, BQForm> best;
  for (const BQForm& q : forms) {
    std::size_t root = find_root(parent, cycle_of.at(q));
    auto it = best.find(root);
    if (it == best.end()) {
      best.emplace(root, q);
    } else if (form_less(q, it->second)) {
      it->second = q;
    }
  }
  std::vector<BQForm> reps;
  for (auto& [root, q] : best) reps.push_back(q);
  return reps;
}

std::optional<IntMat2> proper_definite(const BQForm& q1, const BQForm& q2) {
  Reduction r1 = reduce_definite_with_transform(q1);
  Reduction r2 = reduce_definite_with_transform(q2);
  if (!(r1.form == r2.form)) return std::nullopt;
  return r1.transform * mat_inv(r2.transform);
}

std::optional<IntMat2> proper_indefinite(const BQForm& q1, const BQForm& q2) {
  Reduction r1 = reduce_indefinite_with_transform(q1);
  Reduction r2 = reduce_indefinite_with_transform(q2);
  BQForm cur = r1.form;
  IntMat2 walk = IntMat2::identity();
  std::size_t limit = step_limit(r1.form);
  for (std::size_t step = 0;; ++step) {
    if (cur == r2.form) return r1.transform * walk * mat_inv(r2.transform);
    Reduction next = rho_step_with_transform(cur);
    cur = next.form;
    walk = walk * next.transform;
    if (cur == r1.form) return std::nullopt;
    if (step > limit) throw InternalError("cycle walk did not close");
  }
}

}  // namespace

FormClassSet class_set(const OrderDisc& disc, EquivMode mode) {
  std::vector<BQForm> reps = disc.D < 0 ? definite_class_reps(disc.D)
                                        : indefinite_class_reps(disc.D, mode);
  std::sort(reps.begin(), reps.end(), form_less);
  return {disc, mode, std::move(reps)};
}

FormClassSet class_set(const Int& D, EquivMode mode) {
  return class_set(decompose_discriminant(D), mode);
}

std::optional<IntMat2> forms_equivalent(const BQForm& q1, const BQForm& q2,
                                        EquivMode mode) {
  if (q1.disc() != q2.disc()) {
    throw DomainError("discriminant mismatch: " + q1.to_string() + " vs " +
                      q2.to_string());
  }
  // On positive definite forms the twisted det −1 action leaves the cone, so
  // both modes reduce to proper equivalence.
  if (q1.is_definite()) return proper_definite(q1, q2);
  if (auto u = proper_indefinite(q1, q2)) return u;
  if (mode == EquivMode::Proper) return std::nullopt;
  const IntMat2 flip{1, 0, 0, -1};
  if (auto w = proper_indefinite(act(q1, flip), q2)) return flip * *w;
  return std::nullopt;
}

}  // namespace solgenus

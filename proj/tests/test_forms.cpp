#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "solgenus/errors.hpp"
#include "solgenus/forms.hpp"
#include "test_support.hpp"

using namespace solgenus;

namespace {

// Independent count of reduced positive definite primitive forms.
long count_reduced_definite(long D) {
  long count = 0;
  for (long a = 1; 3 * a * a <= -D; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      long num = b * b - D;
      if (num % (4 * a) != 0) continue;
      long c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      ++count;
    }
  }
  return count;
}

BQForm random_form(std::mt19937_64& rng, const BQForm& base) {
  // det −1 would move an indefinite form to the class of its negative
  IntMat2 u = testing::random_unimodular(rng, 6);
  if (u.det() == -1) u = u * IntMat2{1, 0, 0, -1};
  return compose(base, u);
}

}  // namespace

TEST_CASE("BQForm validation") {
  CHECK_THROWS_AS(BQForm(1, 2, 1), DomainError);    // D = 0
  CHECK_THROWS_AS(BQForm(1, 3, 2), DomainError);    // D = 1
  CHECK_THROWS_AS(BQForm(2, 2, 2), DomainError);    // not primitive
  CHECK_THROWS_AS(BQForm(-1, 0, -1), DomainError);  // negative definite
  CHECK(BQForm(3, 2, -3).disc() == 40);
  CHECK(BQForm(3, 2, -3).to_string() == "(3,2,-3)");
}

TEST_CASE("reduce_definite") {
  CHECK(reduce_definite({1, 0, 1}) == BQForm(1, 0, 1));
  CHECK(reduce_definite({2, 2, 3}) == BQForm(2, 2, 3));
  CHECK(reduce_definite({3, 2, 1}) == BQForm(1, 0, 2));
  CHECK(is_reduced_definite({2, 2, 3}));
  CHECK_FALSE(is_reduced_definite({3, 2, 1}));
  CHECK_THROWS_AS(reduce_definite({1, 1, -1}), DomainError);
}

TEST_CASE("rho cycles") {
  auto c5 = cycle({1, 1, -1});
  CHECK(c5.size() == 2);
  CHECK(std::find(c5.begin(), c5.end(), BQForm(1, 1, -1)) != c5.end());
  CHECK(std::find(c5.begin(), c5.end(), BQForm(-1, 1, 1)) != c5.end());

  auto principal = cycle({1, 6, -1});
  CHECK(std::find(principal.begin(), principal.end(), BQForm(1, 6, -1)) != principal.end());
  auto other = cycle({3, 2, -3});
  for (const auto& f : other) {
    CHECK(is_reduced_indefinite(f));
    CHECK(std::find(principal.begin(), principal.end(), f) == principal.end());
  }
  for (const auto& f : principal) CHECK(is_reduced_indefinite(f));
}

TEST_CASE("class_set examples") {
  CHECK(class_set(Int(-4), EquivMode::Proper).size() == 1);
  CHECK(class_set(Int(-3), EquivMode::Improper).size() == 1);
  CHECK(class_set(Int(-20), EquivMode::Proper).size() == 2);
  CHECK(class_set(Int(5), EquivMode::Improper).size() == 1);
  CHECK(class_set(Int(40), EquivMode::Improper).size() == 2);
  CHECK(class_set(Int(40), EquivMode::Proper).size() == 2);
  CHECK(class_set(Int(12), EquivMode::Proper).size() == 2);
  CHECK(class_set(Int(12), EquivMode::Improper).size() == 1);
  CHECK(class_set(Int(229), EquivMode::Improper).size() == 3);
  CHECK(class_set(Int(40), EquivMode::Improper).reps.front() == BQForm(1, 6, -1));
  CHECK_THROWS_AS(class_set(Int(16), EquivMode::Improper), DomainError);
}

TEST_CASE("class numbers of real quadratic fields") {
  // Wide class numbers of Q(sqrt d), d = 2..101 square-free, from the
  // standard tables.
  const std::vector<std::pair<long, std::size_t>> table = {
      {2, 1},  {3, 1},  {5, 1},  {6, 1},  {7, 1},  {10, 2}, {11, 1}, {13, 1},
      {14, 1}, {15, 2}, {17, 1}, {19, 1}, {21, 1}, {22, 1}, {23, 1}, {26, 2},
      {29, 1}, {30, 2}, {31, 1}, {33, 1}, {34, 2}, {35, 2}, {37, 1}, {38, 1},
      {39, 2}, {41, 1}, {42, 2}, {43, 1}, {46, 1}, {47, 1}, {51, 2}, {53, 1},
      {55, 2}, {57, 1}, {58, 2}, {59, 1}, {61, 1}, {62, 1}, {65, 2}, {66, 2},
      {67, 1}, {69, 1}, {70, 2}, {71, 1}, {73, 1}, {74, 2}, {77, 1}, {78, 2},
      {79, 3}, {82, 4}, {83, 1}, {85, 2}, {86, 1}, {87, 2}, {89, 1}, {91, 2},
      {93, 1}, {94, 1}, {95, 2}, {97, 1}, {101, 1}};
  for (auto [d, h] : table) {
    long D = d % 4 == 1 ? d : 4 * d;
    CAPTURE(d);
    CHECK(class_set(Int(D), EquivMode::Improper).size() == h);
  }
}

TEST_CASE("definite class numbers match an exhaustive count") {
  for (long D = -3; D >= -3000; --D) {
    long r = ((D % 4) + 4) % 4;
    if (r != 0 && r != 1) continue;
    CAPTURE(D);
    CHECK(class_set(Int(D), EquivMode::Proper).size() ==
          static_cast<std::size_t>(count_reduced_definite(D)));
  }
}

TEST_CASE("mode bounds") {
  for (long D = 5; D <= 1500; ++D) {
    long r = D % 4;
    if ((r != 0 && r != 1) || is_square(Int(D))) continue;
    std::size_t narrow = class_set(Int(D), EquivMode::Proper).size();
    std::size_t wide = class_set(Int(D), EquivMode::Improper).size();
    CAPTURE(D);
    CHECK((narrow == wide || narrow == 2 * wide));
  }
  // A unit of norm −1 in the order makes the two notions coincide.
  for (long t = 1; t <= 40; ++t) {
    Int D = t * t + 4;
    CAPTURE(t);
    CHECK(class_set(D, EquivMode::Proper).size() == class_set(D, EquivMode::Improper).size());
  }
}

TEST_CASE("reduction preserves discriminant and primitivity; idempotent") {
  std::mt19937_64 rng(3);
  for (long D : {-3L, -4L, -20L, -56L, -231L, 5L, 12L, 40L, 229L, 316L, 1001L}) {
    for (const auto& rep : class_set(Int(D), EquivMode::Proper).reps) {
      for (int i = 0; i < 30; ++i) {
        BQForm q = random_form(rng, rep);
        CHECK(q.disc() == D);
        Reduction r = q.is_definite() ? reduce_definite_with_transform(q)
                                      : reduce_indefinite_with_transform(q);
        CHECK(r.form.disc() == D);
        CHECK(r.transform.det() == 1);
        CHECK(compose(q, r.transform) == r.form);
        if (q.is_definite()) {
          CHECK(is_reduced_definite(r.form));
          CHECK(reduce_definite(r.form) == r.form);
          CHECK(r.form == reduce_definite(rep));
        } else {
          CHECK(is_reduced_indefinite(r.form));
          CHECK(reduce_indefinite_with_transform(r.form).form == r.form);
          auto cyc = cycle(rep);
          CHECK(std::find(cyc.begin(), cyc.end(), r.form) != cyc.end());
        }
      }
    }
  }
}

TEST_CASE("forms_equivalent examples") {
  BQForm q{1, 1, -1};
  auto id = forms_equivalent(q, q, EquivMode::Proper);
  REQUIRE(id);
  CHECK(compose(q, *id) == q);
  CHECK(forms_equivalent({1, 1, -1}, {-1, 1, 1}, EquivMode::Proper));
  CHECK(forms_equivalent({1, 1, -1}, {-1, 1, 1}, EquivMode::Improper));
  CHECK_FALSE(forms_equivalent({1, 6, -1}, {3, 2, -3}, EquivMode::Proper));
  CHECK_FALSE(forms_equivalent({1, 6, -1}, {3, 2, -3}, EquivMode::Improper));
  CHECK_FALSE(forms_equivalent({1, 2, -2}, {-1, 2, 2}, EquivMode::Proper));
  auto w = forms_equivalent({1, 2, -2}, {-1, 2, 2}, EquivMode::Improper);
  REQUIRE(w);
  CHECK(w->det() == -1);
  CHECK(act(BQForm(1, 2, -2), *w) == BQForm(-1, 2, 2));
  CHECK_THROWS_AS(forms_equivalent({1, 1, -1}, {1, 6, -1}, EquivMode::Proper), DomainError);
}

TEST_CASE("forms_equivalent witnesses substitute, are symmetric, separate classes") {
  std::mt19937_64 rng(5);
  for (long D : {-20L, -84L, 12L, 40L, 60L, 145L, 229L, 316L}) {
    for (EquivMode mode : {EquivMode::Proper, EquivMode::Improper}) {
      auto reps = class_set(Int(D), mode).reps;
      for (std::size_t i = 0; i < reps.size(); ++i) {
        for (std::size_t j = 0; j < reps.size(); ++j) {
          for (int k = 0; k < 5; ++k) {
            BQForm x = random_form(rng, reps[i]);
            BQForm y = random_form(rng, reps[j]);
            auto u = forms_equivalent(x, y, mode);
            auto v = forms_equivalent(y, x, mode);
            CAPTURE(D);
            CAPTURE(x.to_string());
            CAPTURE(y.to_string());
            CHECK(u.has_value() == (i == j));
            CHECK(u.has_value() == v.has_value());
            if (u) {
              if (mode == EquivMode::Proper) CHECK(u->det() == 1);
              CHECK((mode == EquivMode::Proper ? compose(x, *u) : act(x, *u)) == y);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("reps are least in their class and sorted") {
  for (long D : {40L, 229L, 316L, 1001L, -84L}) {
    auto reps = class_set(Int(D), EquivMode::Improper).reps;
    CHECK(std::is_sorted(reps.begin(), reps.end(), form_less));
    for (const auto& r : reps) {
      if (r.is_definite()) continue;
      for (const auto& f : cycle(r)) CHECK_FALSE(form_less(f, r));
    }
  }
}

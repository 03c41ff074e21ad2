#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "solgenus/conjugacy.hpp"
#include "solgenus/errors.hpp"
#include "solgenus/latimer_macduffee.hpp"
#include "test_support.hpp"

using namespace solgenus;

namespace {

const IntMat2 kRot{0, -1, 1, 0};
const IntMat2 kD40a{0, 1, 1, 6};

IntMat2 d40_second() { return lm_representatives({6, -1}).reps.at(1).matrix; }

std::vector<IntMat2> irreducible_box(long bound) {
  std::vector<IntMat2> out;
  for (const auto& m : testing::unimodular_box(-bound, bound)) {
    Int D = char_poly(m).disc();
    if (D != 0 && !is_square(D)) out.push_back(m);
  }
  return out;
}

}  // namespace

TEST_CASE("matrix_to_form") {
  CHECK(matrix_to_form({0, -1, 1, 3}) == BQForm(1, 3, 1));
  CHECK(matrix_to_form({0, 1, 1, 6}) == BQForm(1, 6, -1));
  CHECK(matrix_to_form(kRot) == BQForm(1, 0, 1));
  CHECK(matrix_to_form({0, 1, -1, 0}) == BQForm(1, 0, 1));
  CHECK(matrix_to_form({1, 2, 2, 5}) == BQForm(1, 2, -1));  // content 2
  CHECK_THROWS_AS(matrix_to_form({1, 1, 0, 1}), DegenerateSpectrum);
}

TEST_CASE("form_to_matrix inverts matrix_to_form up to content") {
  for (const auto& m : irreducible_box(3)) {
    IntMat2 diff{m.a, m.b, m.c, m.d};
    Int g = gcd(gcd(diff.c, diff.d - diff.a), diff.b);
    IntMat2 back = form_to_matrix(matrix_to_form(m), g, m.trace());
    CAPTURE(format_matrix(m));
    CHECK(char_poly(back) == char_poly(m));
    CHECK(are_conjugate_gl2z(back, m));
  }
}

TEST_CASE("are_conjugate_gl2z examples") {
  auto w = are_conjugate_gl2z(kD40a, kD40a);
  REQUIRE(w);
  CHECK(w->P == IntMat2::identity());
  w = are_conjugate_gl2z(kRot, {0, 1, -1, 0});
  REQUIRE(w);
  CHECK(verify_witness(kRot, {0, 1, -1, 0}, *w));
  CHECK(w->P.det() == -1);
  CHECK_FALSE(are_conjugate_gl2z(kD40a, d40_second()));
  CHECK_FALSE(are_conjugate_gl2z({0, -1, 1, 3}, {0, -1, 1, 4}));
  CHECK(non_conjugacy_reason({0, -1, 1, 3}, {0, -1, 1, 4}).find("trace") != std::string::npos);
  CHECK_THROWS_AS(are_conjugate_gl2z({2, 0, 0, 1}, kRot), DomainError);
}

TEST_CASE("planted conjugator") {
  IntMat2 a{0, -1, 1, 3};
  IntMat2 p{2, 1, 1, 1};
  IntMat2 b = p * a * mat_inv(p);
  BoundedSearch s = brute_force_conjugator(a, b, 5);
  REQUIRE(s.found());
  CHECK(verify_witness(a, b, *s.witness));
  CHECK(s.bound == 5);
  auto w = are_conjugate_gl2z(a, b);
  REQUIRE(w);
  CHECK(verify_witness(a, b, *w));

  auto id = brute_force_conjugator(a, a, 1);
  REQUIRE(id.found());
  CHECK(id.witness->P == IntMat2::identity());
  CHECK_FALSE(brute_force_conjugator(kD40a, d40_second(), 50).found());
}

TEST_CASE("pruned search matches the naive scan") {
  std::mt19937_64 rng(17);
  auto box = irreducible_box(2);
  std::uniform_int_distribution<std::size_t> pick(0, box.size() - 1);
  int agreements = 0;
  for (int i = 0; i < 400; ++i) {
    IntMat2 a = box[pick(rng)];
    IntMat2 b = box[pick(rng)];
    if (i % 2 == 0) {
      IntMat2 u = testing::random_unimodular(rng, 2);
      b = u * a * mat_inv(u);
    }
    bool fast = brute_force_conjugator(a, b, 4).found();
    bool slow = testing::naive_conjugator_exists(a, b, 4);
    CHECK(fast == slow);
    agreements += fast;
  }
  CHECK(agreements > 50);
}

TEST_CASE("forms decision agrees with brute force on [-3,3]") {
  auto box = irreducible_box(3);
  std::map<std::pair<long, long>, std::vector<IntMat2>> by_poly;
  for (const auto& m : box) by_poly[{m.trace().get_si(), m.det().get_si()}].push_back(m);
  for (const auto& [key, mats] : by_poly) {
    for (std::size_t i = 0; i < mats.size(); ++i) {
      for (std::size_t j = i; j < mats.size(); ++j) {
        auto w = are_conjugate_gl2z(mats[i], mats[j]);
        auto s = brute_force_conjugator(mats[i], mats[j], 15);
        if (w) CHECK(verify_witness(mats[i], mats[j], *w));
        if (s.found()) CHECK(w.has_value());
        if (!w) CHECK_FALSE(s.found());
      }
    }
  }
}

TEST_CASE("conjugacy is an equivalence relation") {
  std::mt19937_64 rng(23);
  std::vector<IntMat2> sample;
  for (IntMat2 base : {IntMat2{0, 1, 1, 6}, d40_second(), IntMat2{0, -1, 1, 3}, kRot,
                       IntMat2{1, 1, 0, 1}, IntMat2{0, 1, 1, 0}, IntMat2{-1, 3, 0, -1}}) {
    for (int k = 0; k < 4; ++k) {
      IntMat2 u = testing::random_unimodular(rng, 4);
      sample.push_back(u * base * mat_inv(u));
    }
  }
  for (const auto& a : sample) {
    auto self = are_conjugate_gl2z(a, a);
    REQUIRE(self);
    for (const auto& b : sample) {
      auto ab = are_conjugate_gl2z(a, b);
      if (!ab) continue;
      auto ba = are_conjugate_gl2z(b, a);
      REQUIRE(ba);
      CHECK(verify_witness(b, a, ConjugacyWitness{mat_inv(ab->P)}));
      for (const auto& c : sample) {
        auto bc = are_conjugate_gl2z(b, c);
        if (!bc) continue;
        CHECK(are_conjugate_gl2z(a, c));
        CHECK(verify_witness(a, c, ConjugacyWitness{bc->P * ab->P}));
      }
    }
  }
}

TEST_CASE("canonical forms for degenerate spectra") {
  // D = 0: content of A − eI decides the class.
  auto c = canonical_form({1, 0, 5, 1});
  CHECK(c.target == IntMat2{1, 5, 0, 1});
  CHECK(c.conjugator * IntMat2{1, 0, 5, 1} == c.target * c.conjugator);
  c = canonical_form({-1, 4, 0, -1});
  CHECK(c.target == IntMat2{-1, 4, 0, -1});
  c = canonical_form({3, 4, -1, -1});
  CHECK(c.target == IntMat2{1, 1, 0, 1});
  c = canonical_form(IntMat2::identity());
  CHECK(c.target == IntMat2::identity());

  // t = 0, n = −1: two classes, split by A mod 2.
  CHECK(canonical_form({0, 1, 1, 0}).target == IntMat2{0, 1, 1, 0});
  CHECK(canonical_form({1, 0, 0, -1}).target == IntMat2{1, 0, 0, -1});
  CHECK(canonical_form({1, 2, 0, -1}).target == IntMat2{1, 0, 0, -1});
  CHECK(canonical_form({1, 1, 0, -1}).target == IntMat2{0, 1, 1, 0});
  CHECK_FALSE(are_conjugate_gl2z({0, 1, 1, 0}, {1, 0, 0, -1}));
  CHECK_FALSE(brute_force_conjugator({0, 1, 1, 0}, {1, 0, 0, -1}, 20).found());

  CHECK(canonical_form(kRot).target == kRot);
  CHECK(canonical_form({0, 1, -1, 0}).target == kRot);

  for (const auto& m : testing::unimodular_box(-4, 4)) {
    CanonicalForm cf = canonical_form(m);
    CAPTURE(format_matrix(m));
    CHECK(std::abs(cf.conjugator.det().get_si()) == 1);
    CHECK(cf.conjugator * m == cf.target * cf.conjugator);
    CHECK(canonical_form(cf.target).target == cf.target);
  }
}

TEST_CASE("degenerate decisions agree with brute force") {
  std::vector<IntMat2> degenerate;
  for (const auto& m : testing::unimodular_box(-3, 3)) {
    Int D = char_poly(m).disc();
    if (D == 0 || D == 4) degenerate.push_back(m);
  }
  for (std::size_t i = 0; i < degenerate.size(); ++i)
    for (std::size_t j = i; j < degenerate.size(); j += 3) {
      const auto& a = degenerate[i];
      const auto& b = degenerate[j];
      if (!(char_poly(a) == char_poly(b))) continue;
      auto w = are_conjugate_gl2z(a, b);
      bool found = brute_force_conjugator(a, b, 12).found();
      if (w) CHECK(verify_witness(a, b, *w));
      CHECK(w.has_value() == found);
    }
}

TEST_CASE("modular witnesses") {
  auto w = are_conjugate_mod_m(kD40a, kD40a, 9);
  REQUIRE(w);
  CHECK(w->P == IntMat2::identity());
  w = are_conjugate_mod_m(kD40a, d40_second(), 7);
  REQUIRE(w);
  CHECK(verify_witness(kD40a, d40_second(), *w));
  CHECK_FALSE(are_conjugate_mod_m({0, -1, 1, 3}, {0, -1, 1, 4}, 5));
  CHECK_THROWS_AS(are_conjugate_mod_m(kD40a, kD40a, 1), DomainError);

  ProfiniteEvidence ev = profinite_evidence(kD40a, kD40a, 10);
  CHECK(ev.table.size() == 9);
  CHECK(ev.consistent());
  ev = profinite_evidence(kD40a, d40_second(), 30);
  CHECK(ev.consistent());
  CHECK(ev.verdict() == "consistent with profinite conjugacy up to m = 30");
  CHECK_THROWS_AS(profinite_evidence({0, -1, 1, 3}, {0, -1, 1, 4}, 10), DomainError);

  ProfiniteEvidence mt = modular_table({0, -1, 1, 3}, {0, -1, 1, 4}, 10);
  REQUIRE(mt.refuted_at);
  CHECK(*mt.refuted_at == 2);
  CHECK(mt.verdict() == "refuted at m = 2");
}

TEST_CASE("CRT path agrees with a monolithic scan for m <= 12") {
  std::vector<IntMat2> mats = {kD40a, d40_second(), {0, -1, 1, 3}, {1, 1, 1, 2},
                               {2, 1, 1, 1}, {0, -1, 1, 4}, {1, 2, 0, 1}, {0, 1, 1, 0},
                               {1, 0, 0, -1}, kRot};
  for (const auto& a : mats)
    for (const auto& b : mats)
      for (std::int64_t m = 2; m <= 12; ++m) {
        auto crt = are_conjugate_mod_m(a, b, m);
        auto scan = scan_conjugator_mod(a, b, m);
        CAPTURE(m);
        CHECK(crt.has_value() == scan.has_value());
        if (crt) CHECK(verify_witness(a, b, *crt));
        if (scan) CHECK(verify_witness(a, b, *scan));
      }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "solgenus/errors.hpp"
#include "solgenus/quadratic_order.hpp"

using namespace solgenus;

TEST_CASE("square_free_decompose") {
  auto p = square_free_decompose(40);
  CHECK(p.core == 10);
  CHECK(p.square == 2);
  p = square_free_decompose(5);
  CHECK(p.core == 5);
  CHECK(p.square == 1);
  p = square_free_decompose(-4);
  CHECK(p.core == -1);
  CHECK(p.square == 2);
  CHECK_THROWS_AS(square_free_decompose(0), DomainError);
}

TEST_CASE("square_free_decompose is exact for |m| <= 10^4") {
  for (long m = -10000; m <= 10000; ++m) {
    if (m == 0) continue;
    auto p = square_free_decompose(m);
    CAPTURE(m);
    CHECK(p.core * p.square * p.square == m);
    CHECK(p.square > 0);
    CHECK(sgn(p.core) == (m > 0 ? 1 : -1));
    long core = std::labs(p.core.get_si());
    for (long k = 2; k * k <= core; ++k) CHECK(core % (k * k) != 0);
  }
}

TEST_CASE("order_disc") {
  CHECK(order_disc({3, 1}) == OrderDisc{5, 5, 1});
  CHECK(order_disc({6, -1}) == OrderDisc{40, 40, 1});
  CHECK(order_disc({7, 1}) == OrderDisc{45, 5, 3});
  CHECK(order_disc({0, 1}) == OrderDisc{-4, -4, 1});
  CHECK(order_disc({1, 1}) == OrderDisc{-3, -3, 1});
  CHECK(order_disc({4, -1}) == OrderDisc{20, 5, 2});
  CHECK_THROWS_AS(order_disc({2, 1}), DegenerateSpectrum);
  CHECK_THROWS_AS(order_disc({0, -1}), DegenerateSpectrum);
  CHECK(order_disc({6, -1}).radicand() == 10);
  CHECK(order_disc({3, 1}).radicand() == 5);
}

TEST_CASE("fundamental discriminants") {
  for (long d : {5, 8, 12, 13, -3, -4, -7, -8, 40, 229, -20}) CHECK(is_fundamental_discriminant(d));
  for (long d : {20, 45, 9, 16, 32, -12, 4, 1, 0, 2, 3}) CHECK_FALSE(is_fundamental_discriminant(d));
  for (long D = -2000; D <= 2000; ++D) {
    if (D == 0 || is_square(Int(D)) || (mod(Int(D), 4) != 0 && mod(Int(D), 4) != 1)) continue;
    OrderDisc od = decompose_discriminant(D);
    CAPTURE(D);
    CHECK(od.D == od.f * od.f * od.D0);
    CHECK(is_fundamental_discriminant(od.D0));
  }
}

TEST_CASE("eigenvalue_unit") {
  UnitElement u = eigenvalue_unit({6, -1});
  CHECK(u.norm == -1);
  CHECK(u.value.to_string() == "3+√10");
  u = eigenvalue_unit({1, 1});
  CHECK(u.norm == 1);
  CHECK(u.value.to_string() == "(1+√-3)/2");
  u = eigenvalue_unit({3, 1});
  CHECK(u.norm == 1);
  CHECK(u.value.to_string() == "(3+√5)/2");
  CHECK(eigenvalue_unit({7, 1}).value.to_string() == "(7+3√5)/2");
  CHECK_THROWS_AS(eigenvalue_unit({2, 1}), DegenerateSpectrum);
}

TEST_CASE("subring_index") {
  CHECK(subring_index({6, -1}) == 1);
  CHECK(subring_index({7, 1}) == 3);
  CHECK(subring_index({3, 1}) == 1);
}

TEST_CASE("index equals conductor; λ recovers trace and norm") {
  for (long t = -30; t <= 30; ++t) {
    for (long n : {-1L, 1L}) {
      Int D = CharPoly{t, n}.disc();
      if (D == 0 || is_square(D)) continue;
      CAPTURE(t);
      CAPTURE(n);
      CHECK(subring_index({t, n}) == order_disc({t, n}).f);
      UnitElement u = eigenvalue_unit({t, n});
      CHECK(u.value.trace() == t);
      CHECK(u.value.norm() == n);
      // O_K coordinates: both halves when D0 ≡ 1 (mod 4), integral x otherwise
      if (mod(u.value.D0, 4) == 1) {
        CHECK(mod(u.value.twice_x - u.value.twice_y, 2) == 0);
      } else {
        CHECK(mod(u.value.twice_x, 2) == 0);
      }
    }
  }
}

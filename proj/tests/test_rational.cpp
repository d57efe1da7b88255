#include <catch2/catch_amalgamated.hpp>

#include "masure/laurent.hpp"
#include "masure/polyhedra.hpp"

using namespace masure;

TEST_CASE("rational arithmetic is exact") {
  REQUIRE(Rat(1, 2) + Rat(1, 3) == Rat(5, 6));
  REQUIRE(Rat(-4, 6) == Rat(-2, 3));
  REQUIRE(Rat(7, -2) == Rat(-7, 2));
  REQUIRE(Rat(3, 4) * Rat(8, 9) == Rat(2, 3));
  REQUIRE(Rat(1) / Rat(1, 5) == Rat(5));
  REQUIRE(Rat(-7, 2).floor() == -4);
  REQUIRE(Rat(-7, 2).ceil() == -3);
  REQUIRE(Rat(7, 2).floor() == 3);
  REQUIRE(Rat::parse("3/4") == Rat(3, 4));
  REQUIRE(Rat::parse("-5") == Rat(-5));
  REQUIRE_THROWS_AS(Rat(1, 0), Error);
  REQUIRE(Rat(1, 3) < Rat(1, 2));
}

TEST_CASE("p-adic valuations") {
  REQUIRE(padic_val(8, 2) == 3);
  REQUIRE(padic_val(-12, 2) == 2);
  REQUIRE(padic_val(9, 3) == 2);
  REQUIRE(padic_val(7, 2) == 0);
}

TEST_CASE("extended rationals with loud indeterminate sums") {
  ExtRat a = ExtRat::pos_inf(), b = ExtRat::neg_inf(), c{Rat(1, 2)};
  REQUIRE((a + c).is_pos_inf());
  REQUIRE((b + c).is_neg_inf());
  REQUIRE_THROWS_AS(a + b, Error);
  REQUIRE(b < c);
  REQUIRE(c < a);
  REQUIRE(-a == b);
}

TEST_CASE("Laurent polynomial ring") {
  Laurent x = Laurent::term(Rat(1, 2), 3);
  Laurent y = Laurent::term(Rat(2), -1);
  REQUIRE((x * y) == Laurent::term(Rat(1), 2));
  REQUIRE((x + (-x)).is_zero());
  REQUIRE(x.unit_inverse() * x == Laurent(Rat(1)));
  Laurent s = x + y;
  REQUIRE(s.min_deg() == -1);
  REQUIRE(s.max_deg() == 3);
  REQUIRE_THROWS_AS(s.unit_inverse(), Error);
  REQUIRE(Laurent(Rat(5)).is_constant());
}

TEST_CASE("matrices over Laurent with adjugate inverse") {
  MatL m = MatL::identity(2);
  m(0, 1) = Laurent::term(Rat(3), 1);
  MatL inv = m.inverse_det1();
  REQUIRE(m * inv == MatL::identity(2));
  MatL a = MatL::identity(3);
  a(0, 1) = Laurent(Rat(2));
  a(1, 2) = Laurent(Rat(-1, 3));
  REQUIRE(a * a.inverse_det1() == MatL::identity(3));
}

TEST_CASE("Fourier-Motzkin feasibility and extrema") {
  // 0 <= x <= 3, x + y >= 1, y <= 2
  std::vector<LinIneq> cs = {
      {{Rat(1), Rat(0)}, Rat(0), false},   // x >= 0
      {{Rat(-1), Rat(0)}, Rat(3), false},  // 3 - x >= 0
      {{Rat(1), Rat(1)}, Rat(-1), false},  // x + y - 1 >= 0
      {{Rat(0), Rat(-1)}, Rat(2), false},  // 2 - y >= 0
  };
  REQUIRE(lp_feasible(cs, 2));
  auto mx = lp_extremum(cs, 2, {Rat(1), Rat(1)}, true);
  REQUIRE(mx.status == LpStatus::Bounded);
  REQUIRE(mx.value == Rat(5));
  auto mn = lp_extremum(cs, 2, {Rat(1), Rat(1)}, false);
  REQUIRE(mn.value == Rat(1));
  // -y is bounded here (y >= 1 - x >= -2)
  auto bnd = lp_extremum(cs, 2, {Rat(0), Rat(-1)}, true);
  REQUIRE(bnd.status == LpStatus::Bounded);
  REQUIRE(bnd.value == Rat(2));
  // without the ceiling on y the objective y is unbounded
  std::vector<LinIneq> open(cs.begin(), cs.begin() + 3);
  auto unb = lp_extremum(open, 2, {Rat(0), Rat(1)}, true);
  REQUIRE(unb.status == LpStatus::Unbounded);
  cs.push_back({{Rat(-1), Rat(0)}, Rat(-4), false});  // x >= 4: infeasible
  REQUIRE_FALSE(lp_feasible(cs, 2));
  // strictness: x > 0 and x <= 0 is empty
  std::vector<LinIneq> st = {{{Rat(1)}, Rat(0), true}, {{Rat(-1)}, Rat(0), false}};
  REQUIRE_FALSE(lp_feasible(st, 1));
}

#include <catch2/catch_amalgamated.hpp>

#include "masure/apartment.hpp"

using namespace masure;

namespace {
Apartment a2() { return Apartment(TitsCone(RootSystem::build({{2, -1}, {-1, 2}}))); }
Apartment a1() { return Apartment(TitsCone(RootSystem::build({{2}}))); }
}  // namespace

TEST_CASE("root evaluation on facade points") {
  Apartment ap = a2();
  const RootSystem& rs = ap.rs();
  ApartmentPoint x = ap.principal_point({Rat(3, 2), Rat(0)});
  REQUIRE(ap.eval_root(rs.simple_root(0), x) == ExtRat(Rat(3, 2)));
  // chamber facade: every positive root evaluates to +inf
  ApartmentPoint c{ap.cone().fundamental_chamber(), {Rat(0), Rat(0)}};
  REQUIRE(ap.eval_root(rs.simple_root(0), c).is_pos_inf());
  REQUIRE(ap.eval_root(rs.root_from_coords({1, 1}), c).is_pos_inf());
  REQUIRE(ap.eval_root(rs.root_from_coords({-1, 0}), c).is_neg_inf());
  // panel facade: the vanishing root stays finite
  ApartmentPoint pnl{ap.cone().canonical(1, WeylWord(), {0}), {Rat(5), Rat(7)}};
  REQUIRE(ap.eval_root(rs.simple_root(0), pnl) == ExtRat(Rat(5)));
  REQUIRE(ap.eval_root(rs.simple_root(1), pnl).is_pos_inf());
}

TEST_CASE("half-apartment membership conventions") {
  Apartment ap = a1();
  const RootSystem& rs = ap.rs();
  Root alpha = rs.simple_root(0);
  HalfApartment all{alpha, ExtRat::pos_inf()};
  ApartmentPoint x = ap.principal_point({Rat(-100)});
  REQUIRE(ap.contains(all, x));  // D(a, inf) = A
  HalfApartment d{rs.root_from_coords({-1}), ExtRat(Rat(0))};
  ApartmentPoint c{ap.cone().fundamental_chamber(), {Rat(0)}};
  REQUIRE_FALSE(ap.contains(d, c));  // -inf + finite < 0
  HalfApartment d2{alpha, ExtRat(Rat(0))};
  REQUIRE(ap.contains(d2, ap.principal_point({Rat(1, 2)})));
}

TEST_CASE("point equality and projection between facades") {
  Apartment ap = a2();
  Facet panel = ap.cone().canonical(1, WeylWord(), {1});
  // reps differing along Vect(panel) name the same point
  ApartmentPoint x{panel, {Rat(1), Rat(0)}};
  // Vect(F_{1}) is spanned by the coweight e_0
  ApartmentPoint y{panel, {Rat(5), Rat(0)}};
  REQUIRE(ap.equal(x, y));
  ApartmentPoint z{panel, {Rat(1), Rat(1)}};
  REQUIRE_FALSE(ap.equal(x, z));

  ApartmentPoint o = ap.origin();
  ApartmentPoint pr = ap.project(o, panel);
  REQUIRE(pr.direction == panel);
  REQUIRE(pr.rep == o.rep);
  // projection is transitive along nested spans and keeps the rep
  Facet chamber = ap.cone().fundamental_chamber();
  REQUIRE(ap.equal(ap.project(pr, chamber), ap.project(o, chamber)));
  // non-incident: a panel facade does not project to a disjoint-span panel
  Facet other = ap.cone().canonical(1, WeylWord(), {0});
  REQUIRE_THROWS_AS(ap.project(x, other), Error);
}

TEST_CASE("the affine reflections nu") {
  Apartment ap = a1();
  const RootSystem& rs = ap.rs();
  Root alpha = rs.simple_root(0);
  auto m0 = ap.nu_reflection(alpha, Rat(0));
  REQUIRE(ap.equal(ap.apply(m0, ap.origin()), ap.origin()));
  auto m = ap.nu_reflection(alpha, Rat(3, 2));
  REQUIRE(ap.auto_equal(ap.compose(m, m), ap.identity_auto()));
  // image of D(a, l) is D(-a, -l)
  HalfApartment d{alpha, ExtRat(Rat(3, 2))};
  HalfApartment img = ap.transport(m, d);
  REQUIRE(img.root.coords == VecI{-1});
  REQUIRE(img.level == ExtRat(Rat(-3, 2)));
  // composing with the reflection of the same wall named oppositely
  Root neg = rs.root_from_coords({-1});
  auto m2 = ap.nu_reflection(neg, Rat(-3, 2));
  REQUIRE(ap.auto_equal(ap.compose(m, m2), ap.identity_auto()));
}

TEST_CASE("nu transport matches membership on sampled data") {
  Apartment ap = a2();
  const RootSystem& rs = ap.rs();
  auto roots = rs.enumerate_real_roots(2);
  std::vector<Apartment::AffineAuto> autos = {
      ap.nu_reflection(rs.simple_root(0), Rat(1)),
      ap.compose(ap.nu_reflection(rs.simple_root(1), Rat(-1, 2)),
                 ap.nu_translation({Rat(1), Rat(0)})),
      ap.nu_translation({Rat(-1, 2), Rat(3, 2)})};
  std::vector<ApartmentPoint> pts = {ap.origin(), ap.principal_point({Rat(1, 2), Rat(-1)}),
                                     ApartmentPoint{ap.cone().canonical(1, WeylWord(), {0}),
                                                    {Rat(1), Rat(2)}}};
  for (const auto& n : autos)
    for (const auto& r : roots)
      for (const auto& lvl : {Rat(0), Rat(1), Rat(-1, 2)}) {
        HalfApartment d{r, ExtRat(lvl)};
        HalfApartment img = ap.transport(n, d);
        for (const auto& x : pts)
          REQUIRE(ap.contains(d, x) == ap.contains(img, ap.apply(n, x)));
      }
}

TEST_CASE("opposition of points") {
  Apartment ap = a2();
  ApartmentPoint o = ap.origin();
  REQUIRE(ap.equal(ap.opposition(o), o));  // fixes the principal facade
  ApartmentPoint c{ap.cone().fundamental_chamber(), {Rat(1), Rat(0)}};
  REQUIRE(ap.equal(ap.opposition(ap.opposition(c)), c));
  // commutes with the affine action of W
  auto n = ap.nu_reflection(ap.rs().simple_root(0), Rat(1));
  REQUIRE(ap.equal(ap.apply(n, ap.opposition(c)), ap.opposition(ap.apply(n, c))));
}

TEST_CASE("facet germs against closed constraint sets") {
  Apartment ap = a2();
  const RootSystem& rs = ap.rs();
  auto germ = ap.germ(ap.origin(), ap.cone().fundamental_chamber());
  HalfApartment d1{rs.simple_root(0), ExtRat(Rat(0))};
  REQUIRE(ap.germ_member(germ, {d1}));
  HalfApartment d2{rs.root_from_coords({-1, 0}), ExtRat(Rat(0))};
  REQUIRE_FALSE(ap.germ_member(germ, {d2}));
  // strict inequality wins regardless of the direction
  auto germ2 = ap.germ(ap.principal_point({Rat(1), Rat(0)}),
                       ap.cone().canonical(-1, WeylWord(), {}));
  REQUIRE(ap.germ_member(germ2, {d1}));
  REQUIRE_THROWS_AS(ap.germ(ApartmentPoint{ap.cone().fundamental_chamber(), {Rat(0), Rat(0)}},
                            ap.cone().canonical(1, WeylWord(), {0})),
                    Error);
}

TEST_CASE("enclosure trace of principal point sets") {
  Apartment ap = a1();
  const RootSystem& rs = ap.rs();
  // the half-integer point: 0 <= alpha <= 1
  auto res = ap.enclosure_trace({ap.principal_point({Rat(1, 2)})}, ap.cone().principal_facet(),
                                ValueSet::integers());
  REQUIRE(res.exact);
  REQUIRE(res.constraints.size() == 2);
  for (const auto& d : res.constraints) {
    if (d.root.coords == VecI{1}) REQUIRE(d.level == ExtRat(Rat(0)));
    if (d.root.coords == VecI{-1}) REQUIRE(d.level == ExtRat(Rat(1)));
  }
  // the origin is a special vertex: D(a,0) in both directions
  auto reso = ap.enclosure_trace({ap.origin()}, ap.cone().principal_facet(),
                                 ValueSet::integers());
  for (const auto& d : reso.constraints) REQUIRE(d.level == ExtRat(Rat(0)));
  // containment and per-root monotonicity in Omega
  auto two = ap.enclosure_trace({ap.origin(), ap.principal_point({Rat(1, 2)})},
                                ap.cone().principal_facet(), ValueSet::integers());
  for (const auto& x : {ap.origin(), ap.principal_point({Rat(1, 2)})})
    REQUIRE(ap.satisfies(two.constraints, x));
  for (const auto& d : two.constraints)
    for (const auto& d0 : reso.constraints)
      if (d.root == d0.root) REQUIRE(d0.level <= d.level);
  (void)rs;
}

TEST_CASE("enclosure trace through a facade uses the preimage cone") {
  Apartment ap = a2();
  const RootSystem& rs = ap.rs();
  Facet panel = ap.cone().canonical(1, WeylWord(), {1});
  ApartmentPoint a{panel, {Rat(1, 2), Rat(0)}};
  auto res = ap.enclosure_trace({a}, ap.cone().principal_facet(), ValueSet::integers());
  REQUIRE(res.exact);
  // roots nonnegative on the panel direction get finite minimal levels from
  // the canonical preimage; the opposite ones are dropped
  std::map<VecI, ExtRat> got;
  for (const auto& d : res.constraints) got[d.root.coords] = d.level;
  REQUIRE(got.count(VecI{0, 1}) == 1);   // alpha_2 vanishes on the panel
  REQUIRE(got.count(VecI{0, -1}) == 1);
  REQUIRE(got.count(VecI{1, 0}) == 1);   // alpha_1 positive on the panel
  REQUIRE(got.count(VecI{-1, 0}) == 0);  // negative: no finite level
  REQUIRE(got[VecI{1, 0}] == ExtRat(Rat(0)));   // ceil(-1/2)
  REQUIRE(got[VecI{0, 1}] == ExtRat(Rat(0)));
  REQUIRE(got[VecI{1, 1}] == ExtRat(Rat(0)));
  // the grid hook of alternative preimages only tightens levels
  Apartment::EnclosureOptions opt;
  opt.preimage_offsets = {{Rat(1), Rat(0)}, {Rat(-1), Rat(0)}};
  auto res2 = ap.enclosure_trace({a}, ap.cone().principal_facet(), ValueSet::integers(), opt);
  std::map<VecI, ExtRat> got2;
  for (const auto& d : res2.constraints) got2[d.root.coords] = d.level;
  for (const auto& [r, lvl] : got2)
    if (got.count(r)) REQUIRE(got[r] <= lvl);
  (void)rs;
}

TEST_CASE("fractional value sets round levels up inside the set") {
  ValueSet half = ValueSet::fraction(2);
  REQUIRE(half.min_geq(Rat(1, 3)) == Rat(1, 2));
  REQUIRE(half.min_geq(Rat(-1, 3)) == Rat(0));
  REQUIRE(half.contains(Rat(3, 2)));
  REQUIRE_FALSE(half.contains(Rat(1, 3)));
  ValueSet re = ValueSet::reals();
  REQUIRE(re.min_geq(Rat(1, 3)) == Rat(1, 3));
}

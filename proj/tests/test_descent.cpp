#include <catch2/catch_amalgamated.hpp>

#include "masure/descent.hpp"

using namespace masure;

namespace {
RootSystem a2() { return RootSystem::build({{2, -1}, {-1, 2}}); }
DescentData a2_swap() {
  return DescentData(a2(), {DescentGenerator{{1, 0}, {Rat(1), Rat(-1)}}});
}
}  // namespace

TEST_CASE("descent validation") {
  // the zero cocycle is always consistent
  DescentData zero(a2(), {DescentGenerator{{1, 0}, {Rat(0), Rat(0)}}});
  REQUIRE(zero.validate(4).ok());
  // order two forces omega_{sigma a} = -omega_a
  auto good = a2_swap();
  REQUIRE(good.validate(4).ok());
  DescentData bad(a2(), {DescentGenerator{{1, 0}, {Rat(1), Rat(1)}}});
  REQUIRE_FALSE(bad.validate(4).ok());
  // a non-automorphism permutation on B2 is rejected
  RootSystem b2 = RootSystem::build({{2, -2}, {-1, 2}});
  DescentData nb(b2, {DescentGenerator{{1, 0}, {Rat(0), Rat(0)}}});
  REQUIRE_FALSE(nb.validate(4).ok());
}

TEST_CASE("the Galois action on the apartment") {
  auto dd = a2_swap();
  REQUIRE(dd.validate(4).ok());
  const auto& sigma = dd.group()[1];
  const RootSystem rs = a2();
  Apartment ap{TitsCone(rs)};

  // transport of half-apartments: sigma D(alpha_1, 0) = D(alpha_2, 1)
  HalfApartment d{rs.simple_root(0), ExtRat(Rat(0))};
  HalfApartment img = dd.act_half(sigma, d);
  REQUIRE(img.root.coords == VecI{0, 1});
  REQUIRE(img.level == ExtRat(Rat(1)));

  // group law: sigma^2 = identity on points
  for (const VecR rep : {VecR{Rat(0), Rat(0)}, VecR{Rat(1, 2), Rat(-3, 2)}}) {
    ApartmentPoint x = ap.principal_point(rep);
    REQUIRE(ap.equal(dd.act_point(sigma, dd.act_point(sigma, x)), x));
  }
  // containment equivariance
  for (const VecR rep : {VecR{Rat(0), Rat(0)}, VecR{Rat(1), Rat(0)}, VecR{Rat(-1, 2), Rat(2)}}) {
    ApartmentPoint x = ap.principal_point(rep);
    REQUIRE(ap.contains(d, x) == ap.contains(img, dd.act_point(sigma, x)));
  }
  // facade points transport too
  TitsCone tc(rs);
  ApartmentPoint f{tc.canonical(1, WeylWord(), {0}), {Rat(1), Rat(1)}};
  ApartmentPoint fi = dd.act_point(sigma, f);
  REQUIRE(fi.direction == tc.canonical(1, WeylWord(), {1}));

  // the relator sigma^2 = e also acts trivially on half-apartments
  for (const auto& r : rs.enumerate_real_roots(2))
    for (const Rat& lvl : {Rat(0), Rat(1), Rat(-1, 2)}) {
      HalfApartment d0{r, ExtRat(lvl)};
      HalfApartment d2 = dd.act_half(sigma, dd.act_half(sigma, d0));
      REQUIRE(d2.root == d0.root);
      REQUIRE(d2.level == d0.level);
    }
}

TEST_CASE("fixed apartment data") {
  auto dd = a2_swap();
  dd.validate(4);
  auto [base, basis] = dd.fixed_apartment();
  REQUIRE(basis.size() == 1);
  REQUIRE(basis[0] == VecR{Rat(1), Rat(1)});  // the line of alpha_1^vee + alpha_2^vee
  // the base point is fixed by every group element
  Apartment ap{TitsCone(a2())};
  for (const auto& e : dd.group()) REQUIRE(ap.equal(dd.act_point(e, base), base));
  // zero cocycle fixes o itself
  DescentData zero(a2(), {DescentGenerator{{1, 0}, {Rat(0), Rat(0)}}});
  zero.validate(4);
  auto [o2, b2] = zero.fixed_apartment();
  REQUIRE(is_zero(o2.rep));
  (void)b2;
}

TEST_CASE("restricted root systems") {
  auto dd = a2_swap();
  dd.validate(4);
  auto rrs = dd.restrict_roots(4);
  REQUIRE(rrs.non_reduced);
  REQUIRE(rrs.roots.size() == 4);  // {a, 2a, -a, -2a}
  int doubled = 0;
  for (const auto& r : rrs.roots)
    if (r.doubled) ++doubled;
  REQUIRE(doubled == 2);
  // the short ray has the three sources alpha_1, alpha_2, theta
  for (const auto& r : rrs.roots)
    if (r.form == VecR{Rat(1)}) REQUIRE(r.sources.size() == 3);

  // trivial Gamma: everything restricts to itself
  DescentData triv(a2(), {});
  triv.validate(3);
  REQUIRE(triv.restrict_roots(2).roots.size() == 6);

  // A3 diagram flip: reduced C2-shaped restriction with four ray pairs
  RootSystem a3 = RootSystem::build({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
  DescentData flip(a3, {DescentGenerator{{2, 1, 0}, {Rat(0), Rat(0), Rat(0)}}});
  REQUIRE(flip.validate(3).ok());
  auto r3 = flip.restrict_roots(4);
  REQUIRE_FALSE(r3.non_reduced);
  REQUIRE(r3.roots.size() == 8);
}

TEST_CASE("descended valuations") {
  auto dd = a2_swap();
  dd.validate(4);
  auto rrs = dd.restrict_roots(4);
  Vrd v = Vrd::instantiate(GroupTag::SL3, 2);
  const DescentData::RestrictedRoot* a = nullptr;
  const DescentData::RestrictedRoot* a2x = nullptr;
  for (const auto& r : rrs.roots) {
    if (r.form == VecR{Rat(1)}) a = &r;
    if (r.form == VecR{Rat(2)}) a2x = &r;
  }
  REQUIRE(a);
  REQUIRE(a2x);
  Root r1 = v.rs().root_from_coords({1, 0});
  Root r2 = v.rs().root_from_coords({0, 1});
  Root th = v.rs().root_from_coords({1, 1});

  // min(omega(c1), omega(c2), omega(c3)/2) = min(2, 1, 2)
  auto val = dd.descend_valuation(
      v, *a, {RootLetter{r1, Rat(4)}, RootLetter{r2, Rat(2)}, RootLetter{th, Rat(16)}});
  REQUIRE(val == ExtRat(Rat(1)));
  auto val2 = dd.descend_valuation(v, *a, {RootLetter{th, Rat(2)}});
  REQUIRE(val2 == ExtRat(Rat(1, 2)));
  // single factor with ratio 1
  REQUIRE(dd.descend_valuation(v, *a, {RootLetter{r1, Rat(8)}}) == ExtRat(Rat(3)));
  // scaling between the ray and its double on U_{2a}
  auto at2a = dd.descend_valuation(v, *a2x, {RootLetter{th, Rat(2)}});
  REQUIRE(at2a == ExtRat(Rat(1)));
  REQUIRE(at2a == ExtRat(Rat(2) * val2.value()));
  // letters outside the ray are rejected
  Root nr = v.rs().root_from_coords({-1, 0});
  REQUIRE_THROWS_AS(dd.descend_valuation(v, *a, {RootLetter{nr, Rat(1)}}), Error);

  // combinatorial mode: Z plus half-contributions gives (1/2) Z
  auto vs = dd.descended_value_set(*a, ValueSet::integers());
  REQUIRE(vs.step == Rat(1, 2));
}

TEST_CASE("the descended valuation satisfies the fixed-set characterization") {
  auto dd = a2_swap();
  dd.validate(4);
  auto rrs = dd.restrict_roots(4);
  Vrd v = Vrd::instantiate(GroupTag::SL3, 2);
  Apartment ap = v.apartment();
  const DescentData::RestrictedRoot* a = nullptr;
  for (const auto& r : rrs.roots)
    if (r.form == VecR{Rat(1)}) a = &r;
  Root r1 = v.rs().root_from_coords({1, 0});
  Root r2 = v.rs().root_from_coords({0, 1});
  Root th = v.rs().root_from_coords({1, 1});
  auto [base, basis] = dd.fixed_apartment();
  (void)base;
  // points of the fixed apartment: s * (1,1) in coweight coordinates
  for (const Rat& c1 : {Rat(1), Rat(2), Rat(1, 2)})
    for (const Rat& c3 : {Rat(1), Rat(4), Rat(1, 4)}) {
      std::vector<RootLetter> u = {RootLetter{r1, c1}, RootLetter{r2, c1}, RootLetter{th, c3}};
      ExtRat phi = dd.descend_valuation(v, *a, u);
      GroupElement g = v.identity();
      for (const auto& l : u) g = v.mul(g, v.u(l.root, l.param));
      for (const Rat& s : {Rat(-2), Rat(-1), Rat(-1, 2), Rat(0), Rat(1, 2), Rat(1)}) {
        ApartmentPoint x = ap.principal_point(s * basis[0]);
        bool fixes = fixator_cert(v, ap, x, g) == Mem::In;
        // a(x) = s * form = s here; Fix(u) cap A-fixed = D(a, phi)
        bool inside = ExtRat(s) + phi >= ExtRat(Rat(0));
        REQUIRE(fixes == inside);
      }
    }
}

TEST_CASE("descent conditions") {
  auto dd = a2_swap();
  dd.validate(4);
  auto rep = dd.check_descent_conditions({"DSR", "DV2"}, 4);
  REQUIRE(rep.ok());
  DescentData triv(a2(), {});
  triv.validate(3);
  REQUIRE(triv.check_descent_conditions({"DSR", "DV2"}, 3).ok());
}

#include <catch2/catch_amalgamated.hpp>

#include "masure/tree.hpp"

using namespace masure;

TEST_CASE("ball cardinalities match the regular-tree count") {
  for (std::int64_t p : {2, 3}) {
    TreeModel tm(p);
    for (std::int64_t r = 0; r <= 4; ++r) {
      auto b = tm.ball(r);
      std::int64_t expect = 1, layer = p + 1;
      for (std::int64_t k = 1; k <= r; ++k) {
        expect += layer;
        layer *= p;
      }
      REQUIRE((std::int64_t)b.vertices.size() == expect);
      if (r > 0) REQUIRE(b.edges.size() == b.vertices.size() - 1);  // it is a tree
    }
  }
}

TEST_CASE("canonical lattice classes are invariant under basis changes") {
  TreeModel tm(2);
  std::mt19937_64 rng(4);
  const Rat vals[] = {Rat(1), Rat(2), Rat(4), Rat(1, 2), Rat(3, 4), Rat(0), Rat(6), Rat(-2)};
  const Rat units[] = {Rat(1), Rat(3), Rat(5), Rat(1, 3), Rat(7, 5), Rat(-3)};
  for (int i = 0; i < 300; ++i) {
    Mat<Rat> m(2);
    do {
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) m(r, c) = vals[rng() % 8];
    } while ((m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).is_zero());
    auto c1 = tm.classify(m);
    Mat<Rat> m2 = m;
    Rat t = Rat((std::int64_t)(rng() % 5)) * units[rng() % 6];
    m2(0, 1) += t * m2(0, 0);
    m2(1, 1) += t * m2(1, 0);
    if (rng() % 2) {
      std::swap(m2(0, 0), m2(0, 1));
      std::swap(m2(1, 0), m2(1, 1));
    }
    Rat u = units[rng() % 6];
    m2(0, 0) *= u;
    m2(1, 0) *= u;
    Rat h = rng() % 2 ? Rat(2) : Rat(1, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) m2(r, c) *= h;
    REQUIRE(tm.classify(m2) == c1);
  }
}

TEST_CASE("distances and adjacency") {
  TreeModel tm(2);
  auto b = tm.ball(3);
  for (const auto& [x, y] : b.edges) REQUIRE(tm.distance(b.vertices[x], b.vertices[y]) == 1);
  REQUIRE(tm.distance(b.vertices[0], b.vertices[0]) == 0);
  for (const auto& v : b.vertices) REQUIRE(tm.distance(b.vertices[0], v) <= 3);
}

TEST_CASE("hovel vertices map to lattice classes consistently") {
  Vrd v = Vrd::instantiate(GroupTag::SL2, 2);
  TreeModel tm(2);
  Root a = v.rs().simple_root(0);
  auto c_o = tm.class_of(v, v.identity(), 0);
  REQUIRE(tm.class_of(v, v.u(a, Rat(1)), 0) == c_o);
  REQUIRE_FALSE(tm.class_of(v, v.u(a, Rat(1, 2)), 0) == c_o);
  // apartment vertices along the line keep their distance in the tree
  for (std::int64_t k = -3; k <= 3; ++k)
    REQUIRE(tm.distance(c_o, tm.class_of(v, v.identity(), k)) == std::abs(k));
  // hovel representatives reproduce their class
  auto ball = tm.ball(2);
  for (const auto& cls : ball.vertices) {
    auto [h, m] = tm.hovel_representative(cls);
    GroupElement g = v.identity();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) g.mat(i, j) = Laurent(h(i, j));
    REQUIRE(tm.class_of(v, g, m) == cls);
  }
}

TEST_CASE("DOT export") {
  TreeModel tm(3);
  std::string dot = tm.export_tree(1);
  REQUIRE(dot.find("graph tree_p3_r1") != std::string::npos);
  REQUIRE(dot.find("v4") != std::string::npos);   // 5 vertices: v0..v4
  REQUIRE(dot.find("v5") == std::string::npos);
  REQUIRE_THROWS_AS(tm.export_tree(7), Error);    // RadiusTooLarge
}

#pragma once

// The Bruhat-Tits tree of SL2 over the p-adic numbers in the lattice-class
// model: canonical forms of homothety classes of Z_(p)-lattices in Q^2,
// adjacency, distance, the class of a hovel vertex, and DOT export of balls
// labelled by hovel-point representatives.

#include <sstream>

#include "masure/parahoric.hpp"

namespace masure {

// Homothety class of a Z_(p)-lattice, canonical form
//   [[p^a, b], [0, p^c]]  with min(a, c, v(b)) = 0 and b reduced mod p^a.
struct LatticeClass {
  std::int64_t a = 0, c = 0;
  Rat b;

  friend bool operator==(const LatticeClass& x, const LatticeClass& y) {
    return x.a == y.a && x.c == y.c && x.b == y.b;
  }
  friend bool operator<(const LatticeClass& x, const LatticeClass& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.c != y.c) return x.c < y.c;
    return x.b < y.b;
  }
  std::string str() const {
    return "L(" + std::to_string(a) + "," + std::to_string(c) + "," + b.str() + ")";
  }
};

class TreeModel {
 public:
  explicit TreeModel(std::int64_t p) : p_(p) {
    if (!Vrd::is_prime(p)) throw Error("BadPrime", "p must be prime");
  }
  std::int64_t prime() const { return p_; }

  ExtRat val(const Rat& x) const {
    if (x.is_zero()) return ExtRat::pos_inf();
    return ExtRat(Rat(padic_val(x.num(), p_) - padic_val(x.den(), p_)));
  }

  // Canonical class of the column span of a nonsingular rational matrix.
  LatticeClass classify(Mat<Rat> m) const {
    // column HNF over Z_(p): zero out m(1,0)
    auto v = [&](const Rat& x) { return val(x); };
    if (!v(m(1, 0)).is_finite() && !v(m(1, 1)).is_finite())
      throw Error("BadInput", "singular lattice basis");
    if (!(v(m(1, 0)) >= v(m(1, 1)))) {
      std::swap(m(0, 0), m(0, 1));
      std::swap(m(1, 0), m(1, 1));
    }
    if (!m(1, 0).is_zero()) {
      Rat f = m(1, 0) / m(1, 1);  // in Z_(p)
      m(0, 0) -= f * m(0, 1);
      m(1, 0) -= f * m(1, 1);
    }
    if (m(0, 0).is_zero()) throw Error("BadInput", "singular lattice basis");
    // scale columns by units: col0 = (p^a, 0), col1 = (b, p^c)
    std::int64_t a = v(m(0, 0)).value().num();
    std::int64_t c = v(m(1, 1)).value().num();
    Rat b = m(0, 1) / (m(1, 1) / pow_p(c));
    // reduce b mod p^a Z_(p)
    b = reduce_mod(b, a);
    // homothety normalization
    std::int64_t s = std::min(a, c);
    if (!b.is_zero()) s = std::min(s, v(b).value().num());
    LatticeClass out;
    out.a = a - s;
    out.c = c - s;
    out.b = b / pow_p(s);
    out.b = reduce_mod(out.b, out.a);
    return out;
  }

  Mat<Rat> basis(const LatticeClass& l) const {
    Mat<Rat> m(2);
    m(0, 0) = pow_p(l.a);
    m(0, 1) = l.b;
    m(1, 1) = pow_p(l.c);
    return m;
  }

  // Tree distance: difference of the elementary divisors of M_x^{-1} M_y.
  std::int64_t distance(const LatticeClass& x, const LatticeClass& y) const {
    Mat<Rat> bx = basis(x), by = basis(y);
    Rat det_bx = bx(0, 0) * bx(1, 1);
    Mat<Rat> inv(2);
    inv(0, 0) = bx(1, 1) / det_bx;
    inv(0, 1) = -bx(0, 1) / det_bx;
    inv(1, 0) = Rat(0);
    inv(1, 1) = bx(0, 0) / det_bx;
    Mat<Rat> n(2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Rat s(0);
        for (int k = 0; k < 2; ++k) s += inv(i, k) * by(k, j);
        n(i, j) = s;
      }
    ExtRat e1 = ExtRat::pos_inf();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        ExtRat w = val(n(i, j));
        if (w < e1) e1 = w;
      }
    Rat detv = n(0, 0) * n(1, 1) - n(0, 1) * n(1, 0);
    std::int64_t total = val(detv).value().num();
    std::int64_t low = e1.value().num();
    return (total - low) - low;
  }

  // The p+1 neighbours: index-p sublattices up to homothety.
  std::vector<LatticeClass> neighbours(const LatticeClass& l) const {
    Mat<Rat> m = basis(l);
    std::vector<LatticeClass> out;
    for (std::int64_t j = 0; j < p_; ++j) {
      Mat<Rat> s(2);
      s(0, 0) = m(0, 0) * Rat(p_);
      s(1, 0) = m(1, 0) * Rat(p_);
      s(0, 1) = m(0, 1) + Rat(j) * m(0, 0);
      s(1, 1) = m(1, 1) + Rat(j) * m(1, 0);
      out.push_back(classify(s));
    }
    Mat<Rat> s(2);
    s(0, 0) = m(0, 0);
    s(1, 0) = m(1, 0);
    s(0, 1) = m(0, 1) * Rat(p_);
    s(1, 1) = m(1, 1) * Rat(p_);
    out.push_back(classify(s));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // Class of the hovel vertex [g, x_k] where x_k is the apartment point with
  // alpha(x_k) = k: the lattice g . (p^{-k} e1, e2).
  LatticeClass class_of(const Vrd& vrd, const GroupElement& g, std::int64_t k) const {
    if (vrd.tag() != GroupTag::SL2) throw Error("BadInput", "tree model is for SL2");
    Mat<Rat> m(2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m(i, j) = g.mat(i, j).constant();
    Mat<Rat> L(2);
    L(0, 0) = pow_p(-k);
    L(1, 1) = Rat(1);
    Mat<Rat> prod(2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Rat s(0);
        for (int kk = 0; kk < 2; ++kk) s += m(i, kk) * L(kk, j);
        prod(i, j) = s;
      }
    return classify(prod);
  }

  // A hovel representative [h, x_m] of a class: h in SL2(Q), m = -(a + c).
  std::pair<Mat<Rat>, std::int64_t> hovel_representative(const LatticeClass& l) const {
    Mat<Rat> m = basis(l);
    std::int64_t mm = -(l.a + l.c);
    Mat<Rat> h(2);
    h(0, 0) = m(0, 0) * pow_p(-(l.a + l.c));
    h(1, 0) = Rat(0);
    h(0, 1) = m(0, 1);
    h(1, 1) = m(1, 1);
    return {h, mm};
  }

  struct Ball {
    std::vector<LatticeClass> vertices;
    std::vector<std::pair<int, int>> edges;
  };

  Ball ball(std::int64_t radius) const {
    Ball b;
    LatticeClass o;  // the class of Z^2
    o.b = Rat(0);
    std::map<LatticeClass, int> index;
    std::vector<std::int64_t> depth;
    b.vertices.push_back(o);
    index[o] = 0;
    depth.push_back(0);
    size_t head = 0;
    while (head < b.vertices.size()) {
      LatticeClass cur = b.vertices[head];
      std::int64_t d = depth[head];
      int ci = (int)head;
      ++head;
      if (d == radius) continue;
      for (const auto& nb : neighbours(cur)) {
        auto it = index.find(nb);
        int ni;
        if (it == index.end()) {
          ni = (int)b.vertices.size();
          index[nb] = ni;
          b.vertices.push_back(nb);
          depth.push_back(d + 1);
        } else {
          ni = it->second;
        }
        if (ci < ni) b.edges.push_back({ci, ni});
      }
    }
    std::sort(b.edges.begin(), b.edges.end());
    b.edges.erase(std::unique(b.edges.begin(), b.edges.end()), b.edges.end());
    return b;
  }

  // DOT document of the radius-r ball with hovel-point labels.
  std::string export_tree(std::int64_t radius) const {
    if (radius > 6) throw Error("RadiusTooLarge", "radius must be <= 6");
    Ball b = ball(radius);
    std::int64_t expect = 1;
    std::int64_t layer = p_ + 1;
    for (std::int64_t r = 1; r <= radius; ++r) {
      expect += layer;
      layer *= p_;
    }
    if ((std::int64_t)b.vertices.size() != expect)
      throw Error("Internal", "tree ball has the wrong cardinality");
    std::ostringstream os;
    os << "graph tree_p" << p_ << "_r" << radius << " {\n";
    for (size_t i = 0; i < b.vertices.size(); ++i) {
      auto [h, m] = hovel_representative(b.vertices[i]);
      os << "  v" << i << " [label=\"[g=" << h.str() << ", x(" << m << ")]\"];\n";
    }
    for (const auto& [x, y] : b.edges) os << "  v" << x << " -- v" << y << ";\n";
    os << "}\n";
    return os.str();
  }

 private:
  Rat pow_p(std::int64_t e) const {
    Rat r(1);
    for (std::int64_t i = 0; i < e; ++i) r *= Rat(p_);
    for (std::int64_t i = 0; i > e; --i) r /= Rat(p_);
    return r;
  }
  // Canonical representative of b modulo p^a Z_(p).
  Rat reduce_mod(const Rat& b, std::int64_t a) const {
    if (b.is_zero()) return b;
    Rat shifted = b / pow_p(a);
    std::int64_t vs = val(shifted).value().num();
    if (vs >= 0) return Rat(0);  // b in p^a Z_(p)
    std::int64_t e = -vs;        // shifted = u / (w p^e), p-free u and w
    std::int64_t pe = 1;
    for (std::int64_t i = 0; i < e; ++i) {
      if (pe > (1LL << 40)) throw OverflowError();
      pe *= p_;
    }
    std::int64_t u = shifted.num() % pe;
    if (u < 0) u += pe;
    std::int64_t w = shifted.den() / pe;  // prime to p
    std::int64_t winv = mod_inverse(w % pe, pe);
    std::int64_t r = (std::int64_t)(((__int128)u * winv) % pe);
    return Rat(r, pe) * pow_p(a);
  }
  static std::int64_t mod_inverse(std::int64_t x, std::int64_t mod) {
    std::int64_t t = 0, newt = 1, r = mod, newr = x % mod;
    if (newr < 0) newr += mod;
    while (newr != 0) {
      std::int64_t q = r / newr;
      std::swap(t, newt);
      newt -= q * t;
      std::swap(r, newr);
      newr -= q * r;
    }
    if (r != 1) throw Error("Internal", "no modular inverse");
    return ((t % mod) + mod) % mod;
  }

  std::int64_t p_;
};

}  // namespace masure

#pragma once

// Concrete groups with a valued root datum behind one interface:
//   SL2(p), SL3(p)   over Q with the p-adic valuation,
//   LoopSL2(p)       over Laurent polynomials, coefficientwise p-adic.
//
// Elements carry both a generator word and a faithful matrix image; equality
// is matrix equality.  Rationals embed into Laurent polynomials, so all three
// instantiations share one matrix type.

#include <variant>

#include "masure/apartment.hpp"
#include "masure/laurent.hpp"

namespace masure {

enum class GroupTag { SL2, SL3, LoopSL2 };

inline std::string tag_name(GroupTag t) {
  switch (t) {
    case GroupTag::SL2: return "SL2";
    case GroupTag::SL3: return "SL3";
    default: return "LoopSL2";
  }
}

struct RootLetter {
  Root root;
  Rat param;
};
struct DiagLetter {
  std::vector<Laurent> diag;
};
using Letter = std::variant<RootLetter, DiagLetter>;

struct GroupElement {
  MatL mat;
  std::vector<Letter> word;

  bool operator==(const GroupElement& o) const { return mat == o.mat; }
  bool operator!=(const GroupElement& o) const { return mat != o.mat; }
};

class Vrd {
 public:
  static Vrd instantiate(GroupTag tag, std::int64_t p, std::int64_t m = 1) {
    if (p < 2 || !is_prime(p)) throw Error("BadPrime", "p must be a prime");
    if (m < 1) throw Error("BadInput", "value group denominator must be >= 1");
    Vrd v;
    v.tag_ = tag;
    v.p_ = p;
    v.m_ = m;
    switch (tag) {
      case GroupTag::SL2:
        v.rs_ = RootSystem::build({{2}});
        v.dim_ = 2;
        break;
      case GroupTag::SL3:
        v.rs_ = RootSystem::build({{2, -1}, {-1, 2}});
        v.dim_ = 3;
        break;
      case GroupTag::LoopSL2:
        v.rs_ = RootSystem::build({{2, -2}, {-2, 2}});
        v.dim_ = 2;
        break;
    }
    return v;
  }

  GroupTag tag() const { return tag_; }
  std::int64_t prime() const { return p_; }
  std::int64_t m() const { return m_; }
  int dim() const { return dim_; }
  const RootSystem& rs() const { return rs_; }
  TitsCone cone() const { return TitsCone(rs_); }
  Apartment apartment() const { return Apartment(TitsCone(rs_)); }
  ValueSet value_set() const { return ValueSet::fraction(m_); }
  bool finite_type() const { return tag_ != GroupTag::LoopSL2; }

  // ----- scalars --------------------------------------------------------------

  // omega(p/q) = v_p(num) - v_p(den); omega(0) = infinity.
  ExtRat omega(const Rat& k) const {
    if (k.is_zero()) return ExtRat::pos_inf();
    return ExtRat(Rat(padic_val(k.num(), p_) - padic_val(k.den(), p_)));
  }

  // ----- elements ----------------------------------------------------------------

  GroupElement identity() const { return GroupElement{MatL::identity(dim_), {}}; }

  // Root-group letter u_a(k).
  GroupElement u(const Root& a, const Rat& k) const {
    if (k.is_zero()) return identity();
    auto [i, j, n] = letter_position(a);
    GroupElement g = identity();
    g.mat(i, j) = Laurent::term(k, n);
    g.word = {RootLetter{a, k}};
    return g;
  }

  // Diagonal element; lands in N.  Strict torus membership is in_torus().
  GroupElement diagonal(const std::vector<Laurent>& d) const {
    if ((int)d.size() != dim_) throw Error("BadInput", "diagonal size mismatch");
    Laurent det(Rat(1));
    GroupElement g = identity();
    for (int i = 0; i < dim_; ++i) {
      if (!d[i].is_monomial()) throw Error("NotTorus", "diagonal entries must be units");
      g.mat(i, i) = d[i];
      det *= d[i];
    }
    if (det != Laurent(Rat(1))) throw Error("BadInput", "diagonal determinant != 1");
    g.word = {DiagLetter{d}};
    return g;
  }
  GroupElement torus(const std::vector<Rat>& d) const {
    std::vector<Laurent> dl;
    for (const auto& c : d) dl.push_back(Laurent(c));
    GroupElement g = diagonal(dl);
    if (!in_torus(g)) throw Error("NotTorus", "not an element of T");
    return g;
  }

  // The cocharacter a^vee(d): conjugation scales U_a parameters by d^2.
  GroupElement cochar(const Root& a, const Rat& d) const {
    auto [i, j, n] = letter_position(a);
    std::vector<Laurent> dg(dim_, Laurent(Rat(1)));
    dg[i] = Laurent(d);
    dg[j] = Laurent(Rat(1) / d);
    return diagonal(dg);
  }

  GroupElement mul(const GroupElement& a, const GroupElement& b) const {
    GroupElement g;
    g.mat = a.mat * b.mat;
    g.word = a.word;
    g.word.insert(g.word.end(), b.word.begin(), b.word.end());
    return g;
  }
  GroupElement inv(const GroupElement& a) const {
    GroupElement g;
    g.mat = a.mat.inverse_det1();
    for (auto it = a.word.rbegin(); it != a.word.rend(); ++it) {
      if (std::holds_alternative<RootLetter>(*it)) {
        const auto& rl = std::get<RootLetter>(*it);
        g.word.push_back(RootLetter{rl.root, -rl.param});
      } else {
        const auto& dl = std::get<DiagLetter>(*it);
        std::vector<Laurent> inv;
        for (const auto& x : dl.diag) inv.push_back(x.unit_inverse());
        g.word.push_back(DiagLetter{inv});
      }
    }
    return g;
  }
  GroupElement conj(const GroupElement& g, const GroupElement& x) const {
    return mul(mul(g, x), inv(g));
  }
  bool eq(const GroupElement& a, const GroupElement& b) const { return a.mat == b.mat; }
  GroupElement from_letters(const std::vector<Letter>& ls) const {
    GroupElement g = identity();
    for (const auto& l : ls) {
      if (std::holds_alternative<RootLetter>(l)) {
        const auto& rl = std::get<RootLetter>(l);
        g = mul(g, u(rl.root, rl.param));
      } else {
        g = mul(g, diagonal(std::get<DiagLetter>(l).diag));
      }
    }
    return g;
  }

  // ----- valuations -----------------------------------------------------------------

  ExtRat phi(const Root&, const Rat& k) const { return omega(k); }
  ExtRat phi(const RootLetter& l) const { return omega(l.param); }

  // ----- recognition -----------------------------------------------------------------

  // Is the matrix a single root-group element?  Returns (root, param).
  std::optional<RootLetter> recognize_root_letter(const MatL& mat) const {
    int oi = -1, oj = -1;
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) {
        if (i == j) {
          if (mat(i, j) != Laurent(Rat(1))) return std::nullopt;
          continue;
        }
        if (mat(i, j).is_zero()) continue;
        if (oi >= 0) return std::nullopt;
        oi = i;
        oj = j;
      }
    if (oi < 0) return std::nullopt;  // identity
    const Laurent& e = mat(oi, oj);
    if (!e.is_monomial()) return std::nullopt;
    int n = e.min_deg();
    Rat k = e.coeff(n);
    auto root = root_at_position(oi, oj, n);
    if (!root) return std::nullopt;
    return RootLetter{*root, k};
  }

  bool is_monomial_matrix(const MatL& mat) const {
    for (int i = 0; i < dim_; ++i) {
      int cnt = 0;
      for (int j = 0; j < dim_; ++j)
        if (!mat(i, j).is_zero()) {
          if (!mat(i, j).is_monomial()) return false;
          ++cnt;
        }
      if (cnt != 1) return false;
    }
    for (int j = 0; j < dim_; ++j) {
      int cnt = 0;
      for (int i = 0; i < dim_; ++i)
        if (!mat(i, j).is_zero()) ++cnt;
      if (cnt != 1) return false;
    }
    return true;
  }
  bool in_N(const GroupElement& g) const { return is_monomial_matrix(g.mat); }
  bool is_diagonal(const MatL& mat) const {
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        if (i != j && !mat(i, j).is_zero()) return false;
    return true;
  }
  // T normalizes every root group individually: diagonal and t-free.
  bool in_torus(const GroupElement& g) const {
    if (!is_diagonal(g.mat)) return false;
    for (int i = 0; i < dim_; ++i)
      if (!g.mat(i, i).is_constant()) return false;
    return true;
  }

  // ----- n(u) and the apartment action -------------------------------------------------

  struct NOf {
    GroupElement n, u_prime, u_second;
  };

  // n(u) = u' u u'' with u' = u'' = u_{-a}(-1/k); monomial by construction.
  NOf n_of(const GroupElement& g) const {
    if (g.word.size() != 1 || !std::holds_alternative<RootLetter>(g.word[0]))
      throw Error("BadInput", "n_of needs a single root-group letter");
    const auto& l = std::get<RootLetter>(g.word[0]);
    if (l.param.is_zero()) throw Error("IdentityElement", "n_of of the identity");
    Root neg = rs_.root_from_coords(RootSystem::negated(l.root.coords));
    GroupElement up = u(neg, -(Rat(1) / l.param));
    NOf r{mul(mul(up, g), up), up, up};
    if (!is_monomial_matrix(r.n.mat)) throw Error("Internal", "n(u) is not monomial");
    return r;
  }

  // v_t: the translation vector of t in coweight coordinates,
  // alpha_i(v_t) = -omega(alpha_i(t)) read off by conjugating a sample letter.
  VecR torus_translation(const GroupElement& t) const {
    if (!in_torus(t)) throw Error("NotTorus", "not in the maximal torus");
    VecR v(rs_.rank());
    for (int i = 0; i < rs_.rank(); ++i) {
      GroupElement c = conj(t, u(rs_.simple_root(i), Rat(1)));
      auto rl = recognize_root_letter(c.mat);
      if (!rl || rl->root.coords != rs_.simple_root(i).coords)
        throw Error("NotTorus", "torus conjugation left the root group");
      ExtRat w = omega(rl->param);
      v[i] = -(w.value());
    }
    return v;
  }

  // The affine action of a monomial element on the apartment.
  Apartment::AffineAuto nu_of(const GroupElement& n) const {
    if (!in_N(n)) throw Error("BadInput", "nu_of needs a monomial element");
    Apartment ap = apartment();
    // Vectorial part: conjugation permutes the simple root groups.
    MatI m(rs_.rank(), VecI(rs_.rank(), 0));
    for (int i = 0; i < rs_.rank(); ++i) {
      GroupElement c = conj(n, u(rs_.simple_root(i), Rat(1)));
      auto rl = recognize_root_letter(c.mat);
      if (!rl) throw Error("Internal", "monomial conjugation not recognized");
      for (int r = 0; r < rs_.rank(); ++r) m[r][i] = rl->root.coords[r];
    }
    WeylWord w = rs_.word_from_root_matrix(m);
    // Standard lift of w: product of n(u_{simple}(1)) letters (all walls level 0).
    GroupElement nw = identity();
    Apartment::AffineAuto nu_w = ap.identity_auto();
    for (int letter : w.letters) {
      nw = mul(nw, n_of(u(rs_.simple_root(letter), Rat(1))).n);
      nu_w = ap.compose(nu_w, ap.nu_reflection(rs_.simple_root(letter), Rat(0)));
    }
    // Remainder acts by translation.
    GroupElement rest = mul(inv(nw), n);
    VecR tau(rs_.rank());
    for (int i = 0; i < rs_.rank(); ++i) {
      GroupElement c = conj(rest, u(rs_.simple_root(i), Rat(1)));
      auto rl = recognize_root_letter(c.mat);
      if (!rl || rl->root.coords != rs_.simple_root(i).coords)
        throw Error("Internal", "translation part did not fix the root groups");
      tau[i] = -(omega(rl->param).value());
    }
    return ap.compose(nu_w, ap.nu_translation(tau));
  }

  // ----- positions --------------------------------------------------------------------

  // Matrix position (i, j) and t-degree n of the root group U_a.
  std::tuple<int, int, int> letter_position(const Root& a) const {
    switch (tag_) {
      case GroupTag::SL2: {
        if (a.coords[0] == 1) return {0, 1, 0};
        if (a.coords[0] == -1) return {1, 0, 0};
        break;
      }
      case GroupTag::SL3: {
        static const std::vector<std::pair<VecI, std::pair<int, int>>> table = {
            {{1, 0}, {0, 1}},  {{0, 1}, {1, 2}},  {{1, 1}, {0, 2}},
            {{-1, 0}, {1, 0}}, {{0, -1}, {2, 1}}, {{-1, -1}, {2, 0}}};
        for (const auto& [c, pos] : table)
          if (a.coords == c) return {pos.first, pos.second, 0};
        break;
      }
      case GroupTag::LoopSL2: {
        // coords (n, n+1) = alpha + n delta -> e12(k t^n); (n, n-1) -> e21(k t^n)
        std::int64_t c0 = a.coords[0], c1 = a.coords[1];
        if (c1 == c0 + 1) return {0, 1, (int)c0};
        if (c1 == c0 - 1) return {1, 0, (int)c0};
        break;
      }
    }
    throw Error("NotReal", "no root group at these coordinates");
  }

  std::optional<Root> root_at_position(int i, int j, int n) const {
    switch (tag_) {
      case GroupTag::SL2:
        if (n != 0) return std::nullopt;
        return rs_.root_from_coords({i < j ? 1 : -1});
      case GroupTag::SL3: {
        if (n != 0) return std::nullopt;
        static const std::vector<std::pair<std::pair<int, int>, VecI>> table = {
            {{0, 1}, {1, 0}},  {{1, 2}, {0, 1}},  {{0, 2}, {1, 1}},
            {{1, 0}, {-1, 0}}, {{2, 1}, {0, -1}}, {{2, 0}, {-1, -1}}};
        for (const auto& [pos, c] : table)
          if (pos.first == i && pos.second == j) return rs_.root_from_coords(c);
        return std::nullopt;
      }
      case GroupTag::LoopSL2: {
        if (i == 0 && j == 1) return rs_.root_from_coords({n, n + 1});
        if (i == 1 && j == 0) return rs_.root_from_coords({n, n - 1});
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  static bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return true;
  }

 private:
  Vrd() : rs_(RootSystem::build({{2}})) {}

  GroupTag tag_ = GroupTag::SL2;
  std::int64_t p_ = 2, m_ = 1;
  int dim_ = 2;
  RootSystem rs_;
};

}  // namespace masure

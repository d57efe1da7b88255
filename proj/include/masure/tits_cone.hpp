#pragma once

// Facets of the doubled Tits cone, canonical naming, sphericity, stars,
// opposition, projection onto a spherical facet, and vector enclosures.
//
// A facet name is (sign, w, J): the cone sign * w(F_J) where
// F_J = { x : alpha_j(x) = 0 for j in J, alpha_i(x) > 0 for i not in J }.
// The word is the minimal-length representative of w W_J, so equal names mean
// equal facets.  Positive and negative names are kept distinct even in finite
// type, where the same point set may carry a name of each sign; all geometry
// is driven by rational interior sample points, which see only the point set.

#include <cassert>
#include <map>

#include "masure/root_system.hpp"

namespace masure {

struct Facet {
  int sign = 1;              // +1 or -1
  WeylWord word;             // minimal coset representative mod W_J
  std::vector<int> J;        // sorted vanishing simple indices

  friend bool operator==(const Facet& a, const Facet& b) {
    return a.sign == b.sign && a.word == b.word && a.J == b.J;
  }
  friend bool operator!=(const Facet& a, const Facet& b) { return !(a == b); }
  friend bool operator<(const Facet& a, const Facet& b) {
    if (a.sign != b.sign) return a.sign < b.sign;
    if (a.J != b.J) return a.J < b.J;
    return a.word.letters < b.word.letters;
  }
  std::string str() const {
    std::string s = sign > 0 ? "(+," : "(-,";
    for (size_t i = 0; i < word.letters.size(); ++i)
      s += (i ? "." : "") + std::string("r") + std::to_string(word.letters[i]);
    if (word.empty()) s += "e";
    s += ",{";
    for (size_t i = 0; i < J.size(); ++i) s += (i ? "," : "") + std::to_string(J[i]);
    return s + "})";
  }
};

class TitsCone {
 public:
  explicit TitsCone(RootSystem rs) : rs_(std::move(rs)) {}
  const RootSystem& rs() const { return rs_; }

  // ----- canonical naming ---------------------------------------------------

  Facet canonical(int sign, const WeylWord& word, std::vector<int> J) const {
    std::sort(J.begin(), J.end());
    J.erase(std::unique(J.begin(), J.end()), J.end());
    for (int j : J)
      if (j < 0 || j >= rs_.rank()) throw Error("BadFacet", "J index out of range");
    Facet f;
    f.J = J;
    if ((int)J.size() == rs_.rank()) {
      // minimal facet {0}: word and sign are immaterial
      f.sign = 1;
      f.word = WeylWord();
      return f;
    }
    f.sign = sign >= 0 ? 1 : -1;
    f.word = min_coset_rep(rs_.reduce_word(word), J);
    return f;
  }

  Facet principal_facet() const {
    std::vector<int> all(rs_.rank());
    for (int i = 0; i < rs_.rank(); ++i) all[i] = i;
    return canonical(1, WeylWord(), all);
  }
  Facet fundamental_chamber(int sign = 1) const { return canonical(sign, WeylWord(), {}); }
  bool is_principal(const Facet& f) const { return (int)f.J.size() == rs_.rank(); }

  // Minimal-length representative of w W_J: strip right descents in J.
  WeylWord min_coset_rep(WeylWord w, const std::vector<int>& J) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int j : J) {
        VecI img = rs_.apply_word_root(w, rs_.simple_root(j).coords);
        if (RootSystem::uniform_sign(img) < 0) {
          w.letters.push_back(j);
          w = rs_.reduce_word(w);
          changed = true;
          break;
        }
      }
    }
    return w;
  }

  // ----- geometry through sample points ---------------------------------------

  // Rational interior point of the named cone.
  VecR sample_point(const Facet& f) const {
    VecR v(rs_.rank());
    for (int i = 0; i < rs_.rank(); ++i)
      v[i] = std::find(f.J.begin(), f.J.end(), i) != f.J.end() ? Rat(0) : Rat(1);
    v = rs_.apply_word_vec(f.word, v);
    if (f.sign < 0)
      for (auto& x : v) x = -x;
    return v;
  }

  int sign_on_root(const Facet& f, const Root& alpha) const {
    VecR s = sample_point(f);
    Rat v(0);
    for (int i = 0; i < rs_.rank(); ++i) v += Rat(alpha.coords[i]) * s[i];
    return v.sign();
  }

  bool is_spherical(const Facet& f) const { return rs_.is_finite_type(f.J); }
  int dimension(const Facet& f) const { return rs_.rank() - (int)f.J.size(); }

  Facet opposite(const Facet& f) const { return canonical(-f.sign, f.word, f.J); }

  Facet act(const WeylWord& w, const Facet& f) const {
    return canonical(f.sign, w * f.word, f.J);
  }

  // Vect(f) membership: (w^{-1} v)_j = 0 for all j in J.
  bool span_contains(const Facet& f, const VecR& v) const {
    VecR u = rs_.apply_word_vec(f.word.inverse(), v);
    for (int j : f.J)
      if (!u[j].is_zero()) return false;
    return true;
  }
  // Vect(f) contains Vect(g)?
  bool span_contains_span(const Facet& f, const Facet& g) const {
    for (int i = 0; i < rs_.rank(); ++i) {
      if (std::find(g.J.begin(), g.J.end(), i) != g.J.end()) continue;
      VecR e(rs_.rank(), Rat(0));
      e[i] = Rat(1);
      if (!span_contains(f, rs_.apply_word_vec(g.word, e))) return false;
    }
    return true;
  }

  // Name-level: the closure of g contains f.
  bool closure_contains(const Facet& g, const Facet& f) const {
    if (is_principal(f)) return true;
    if (g.sign != f.sign) return false;
    if (!std::includes(f.J.begin(), f.J.end(), g.J.begin(), g.J.end())) return false;
    return min_coset_rep(g.word, f.J) == f.word;
  }

  // ----- stars (finite-type base required) --------------------------------------

  std::vector<WeylWord> parabolic_elements(const std::vector<int>& J) const {
    if (!rs_.is_finite_type(J)) throw Error("NotSpherical", "W_J is infinite");
    std::map<MatI, WeylWord> seen;
    std::vector<MatI> queue;
    MatI id = rs_.identity_mat();
    seen[id] = WeylWord();
    queue.push_back(id);
    size_t head = 0;
    while (head < queue.size()) {
      MatI m = queue[head++];
      WeylWord w = seen[m];
      for (int j : J) {
        WeylWord w2 = w;
        w2.letters.push_back(j);
        MatI m2 = rs_.word_matrix_root(w2);
        if (!seen.count(m2)) {
          seen[m2] = rs_.reduce_word(w2);
          queue.push_back(m2);
        }
      }
    }
    std::vector<WeylWord> out;
    for (auto& [m, w] : seen) out.push_back(w);
    return out;
  }

  // All facets whose closure contains f; f must be spherical.
  std::vector<Facet> star(const Facet& f) const {
    if (!is_spherical(f)) throw Error("NotSpherical", "star of a non-spherical facet");
    std::vector<Facet> out;
    std::set<Facet> seen;
    auto wj = parabolic_elements(f.J);
    std::vector<std::vector<int>> subsets = all_subsets(f.J);
    for (const auto& u : wj)
      for (const auto& Jp : subsets) {
        Facet h = canonical(f.sign, f.word * u, Jp);
        if (!closure_contains(h, f)) continue;
        if (seen.insert(h).second) out.push_back(h);
      }
    return out;
  }

  std::vector<Facet> star_chambers(const Facet& f) const {
    std::vector<Facet> out;
    for (const auto& h : star(f))
      if (h.J.empty()) out.push_back(h);
    return out;
  }

  // Finite set phi^m(f) = roots vanishing on f (f spherical).
  std::vector<Root> phi_m(const Facet& f) const {
    if (!is_spherical(f)) throw Error("NotSpherical", "phi^m infinite");
    // roots of the finite subsystem supported on J
    std::set<VecI> seen;
    std::vector<VecI> queue;
    for (int j : f.J) {
      VecI c(rs_.rank(), 0);
      c[j] = 1;
      queue.push_back(c);
      seen.insert(c);
      queue.push_back(RootSystem::negated(c));
      seen.insert(queue.back());
    }
    size_t head = 0;
    while (head < queue.size()) {
      VecI c = queue[head++];
      for (int j : f.J) {
        VecI c2 = rs_.reflect_root_coords(j, c);
        if (!seen.count(c2)) {
          seen.insert(c2);
          queue.push_back(c2);
        }
      }
    }
    std::vector<Root> out;
    for (const auto& c : seen) {
      VecI img = rs_.apply_word_root(f.word, c);
      out.push_back(rs_.root_from_coords(img));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // ----- projection (Prop: largest facet of star(f) inside Cl(f u g)) ----------

  Facet project(const Facet& f, const Facet& g, std::int64_t root_bound = 6) const {
    if (!is_spherical(f)) throw Error("NotSpherical", "projection needs f spherical");
    VecR sf = sample_point(f), sg = sample_point(g);
    std::vector<Root> roots = rs_.enumerate_real_roots(root_bound);
    std::vector<VecI> pos_on_both;
    for (const auto& a : roots) {
      if (eval_sign(a, sf) >= 0 && eval_sign(a, sg) >= 0) pos_on_both.push_back(a.coords);
    }
    std::vector<Facet> pass;
    for (const auto& h : star(f)) {
      VecR sh = sample_point(h);
      bool ok = true;
      for (const auto& c : pos_on_both) {
        Rat v(0);
        for (int i = 0; i < rs_.rank(); ++i) v += Rat(c[i]) * sh[i];
        if (v.sign() < 0) {
          ok = false;
          break;
        }
      }
      if (ok) pass.push_back(h);
    }
    if (pass.empty()) throw Error("ProjectionFailed", "no facet of the star qualifies");
    int best = -1;
    for (const auto& h : pass) best = std::max(best, dimension(h));
    std::vector<Facet> top;
    for (const auto& h : pass)
      if (dimension(h) == best) top.push_back(h);
    if (top.size() != 1)
      throw Error("ProjectionFailed", "projection not unique at this root bound");
    return top[0];
  }

  // ----- enclosures --------------------------------------------------------------

  struct VectorEnclosure {
    std::vector<Root> constraints;  // roots >= 0 on every input facet
    std::vector<Facet> facets;      // facets within bounds satisfying all constraints
  };

  std::vector<WeylWord> weyl_ball(std::int64_t word_bound) const {
    std::map<MatI, WeylWord> seen;
    std::vector<std::pair<MatI, int>> queue;
    seen[rs_.identity_mat()] = WeylWord();
    queue.push_back({rs_.identity_mat(), 0});
    size_t head = 0;
    while (head < queue.size()) {
      auto [m, d] = queue[head++];
      if (d >= word_bound) continue;
      WeylWord w = seen[m];
      for (int i = 0; i < rs_.rank(); ++i) {
        WeylWord w2 = w;
        w2.letters.push_back(i);
        MatI m2 = rs_.word_matrix_root(w2);
        if (!seen.count(m2)) {
          seen[m2] = rs_.reduce_word(w2);
          queue.push_back({m2, d + 1});
        }
      }
    }
    std::vector<WeylWord> out;
    for (auto& [m, w] : seen) out.push_back(w);
    return out;
  }

  std::vector<Facet> enumerate_facets(std::int64_t word_bound) const {
    std::set<Facet> seen;
    auto words = weyl_ball(word_bound);
    std::vector<int> all(rs_.rank());
    for (int i = 0; i < rs_.rank(); ++i) all[i] = i;
    for (const auto& w : words)
      for (const auto& J : all_subsets(all))
        for (int sg : {1, -1}) seen.insert(canonical(sg, w, J));
    return std::vector<Facet>(seen.begin(), seen.end());
  }

  VectorEnclosure vector_enclosure(const std::vector<Facet>& facets, std::int64_t root_bound,
                                   std::int64_t word_bound = 4) const {
    if (facets.empty()) throw Error("BadInput", "enclosure of an empty facet set");
    VectorEnclosure out;
    std::vector<VecR> samples;
    for (const auto& f : facets) samples.push_back(sample_point(f));
    for (const auto& a : rs_.enumerate_real_roots(root_bound)) {
      bool ok = true;
      for (const auto& s : samples)
        if (eval_sign(a, s) < 0) {
          ok = false;
          break;
        }
      if (ok) out.constraints.push_back(a);
    }
    for (const auto& h : enumerate_facets(word_bound)) {
      VecR sh = sample_point(h);
      bool ok = true;
      for (const auto& a : out.constraints)
        if (eval_sign(a, sh) < 0) {
          ok = false;
          break;
        }
      if (ok) out.facets.push_back(h);
    }
    return out;
  }

  // Gallery distance between same-sign chambers, Weyl codistance otherwise.
  std::int64_t chamber_distance(const Facet& c, const Facet& d) const {
    if (!c.J.empty() || !d.J.empty()) throw Error("BadInput", "chamber distance needs chambers");
    WeylWord u = c.word.inverse() * d.word;
    return (std::int64_t)rs_.length(u);
  }

  int eval_sign(const Root& a, const VecR& v) const {
    Rat s(0);
    for (int i = 0; i < rs_.rank(); ++i) s += Rat(a.coords[i]) * v[i];
    return s.sign();
  }

  static std::vector<std::vector<int>> all_subsets(const std::vector<int>& J) {
    std::vector<std::vector<int>> out;
    size_t n = J.size();
    for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
      std::vector<int> s;
      for (size_t b = 0; b < n; ++b)
        if (mask & (size_t(1) << b)) s.push_back(J[b]);
      out.push_back(s);
    }
    return out;
  }

 private:
  RootSystem rs_;
};

}  // namespace masure

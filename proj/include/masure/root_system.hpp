#pragma once

// Generalized Cartan matrices, real roots with certified Weyl witnesses,
// reflections, root intervals and prenilpotence, finite-type tests.
//
// Conventions.  Roots are integer vectors in the simple-root basis.  Vectors
// of the ambient space carry fundamental-coweight coordinates, so the i-th
// coordinate of a vector v is alpha_i(v) and evaluation of a root on a vector
// is a plain dot product.  <a,b> = b(a^vee) = 2(a,b)/(a,a) with ( , ) the
// symmetrized bilinear form.

#include <algorithm>
#include <functional>
#include <optional>
#include <set>

#include "masure/rational.hpp"

namespace masure {

struct WeylWord {
  std::vector<int> letters;  // w = r_{l0} r_{l1} ... , leftmost applied last to vectors

  WeylWord() = default;
  explicit WeylWord(std::vector<int> ls) : letters(std::move(ls)) {}
  bool empty() const { return letters.empty(); }
  size_t size() const { return letters.size(); }
  friend WeylWord operator*(const WeylWord& a, const WeylWord& b) {
    WeylWord w = a;
    w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
    return w;
  }
  WeylWord inverse() const {
    WeylWord w;
    w.letters.assign(letters.rbegin(), letters.rend());
    return w;
  }
  friend bool operator==(const WeylWord& a, const WeylWord& b) { return a.letters == b.letters; }
};

struct Root {
  VecI coords;        // simple-root basis, uniform sign, nonzero
  WeylWord witness;   // witness(simple_root(simple)) == coords
  int simple = 0;

  std::int64_t height() const {
    std::int64_t h = 0;
    for (auto c : coords) h += c;
    return h;
  }
  bool is_positive() const {
    for (auto c : coords)
      if (c > 0) return true;
    return false;
  }
  friend bool operator==(const Root& a, const Root& b) { return a.coords == b.coords; }
  friend bool operator!=(const Root& a, const Root& b) { return a.coords != b.coords; }
  friend bool operator<(const Root& a, const Root& b) {
    if (a.height() != b.height()) return a.height() < b.height();
    return a.coords < b.coords;
  }
  std::string str() const {
    std::string s = "(";
    for (size_t i = 0; i < coords.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(coords[i]);
    }
    return s + ")";
  }
};

enum class Finiteness { Finite, Infinite, Unknown };
enum class Cert { Yes, No, Unknown };

using MatI = std::vector<VecI>;  // row-major small integer matrix

class RootSystem {
 public:
  // Validates a generalized Cartan matrix and computes a rational symmetrizer.
  static RootSystem build(const std::vector<VecI>& cartan) {
    RootSystem rs;
    rs.n_ = (int)cartan.size();
    if (rs.n_ == 0) throw Error("NotGCM", "empty matrix");
    for (const auto& row : cartan)
      if ((int)row.size() != rs.n_) throw Error("NotGCM", "matrix not square");
    for (int i = 0; i < rs.n_; ++i) {
      if (cartan[i][i] != 2) throw Error("NotGCM", "diagonal entry != 2");
      for (int j = 0; j < rs.n_; ++j) {
        if (i == j) continue;
        if (cartan[i][j] > 0) throw Error("NotGCM", "positive off-diagonal entry");
        if ((cartan[i][j] == 0) != (cartan[j][i] == 0))
          throw Error("NotGCM", "asymmetric zero pattern");
      }
    }
    rs.a_ = cartan;
    rs.compute_symmetrizer();
    return rs;
  }

  int rank() const { return n_; }
  const std::vector<VecI>& cartan() const { return a_; }
  std::int64_t cartan_entry(int i, int j) const { return a_[i][j]; }
  const VecR& symmetrizer() const { return eps_; }

  Root simple_root(int i) const {
    Root r;
    r.coords.assign(n_, 0);
    r.coords[i] = 1;
    r.simple = i;
    return r;
  }

  // ----- pairings -------------------------------------------------------

  // Symmetrized bilinear form (a,b) on root coordinates.
  Rat bilinear(const VecI& a, const VecI& b) const {
    Rat s(0);
    for (int i = 0; i < n_; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < n_; ++j) {
        if (b[j] == 0) continue;
        s += Rat(a[i]) * eps_[i] * Rat(a_[i][j]) * Rat(b[j]);
      }
    }
    return s;
  }

  // <a,b> = b(a^vee) = 2(a,b)/(a,a); an integer for real a.
  std::int64_t pairing(const Root& a, const Root& b) const {
    Rat v = Rat(2) * bilinear(a.coords, b.coords) / bilinear(a.coords, a.coords);
    if (!v.is_integer()) throw Error("NotReal", "pairing is not integral");
    return v.num();
  }

  // ----- simple reflections on coordinates ------------------------------

  VecI reflect_root_coords(int i, const VecI& c) const {
    VecI r = c;
    std::int64_t pair = 0;
    for (int j = 0; j < n_; ++j) pair += a_[i][j] * c[j];
    r[i] -= pair;
    return r;
  }
  // Coweight coordinates: r_i(v)_j = v_j - v_i * A_ij.
  VecR reflect_vec(int i, const VecR& v) const {
    VecR r = v;
    for (int j = 0; j < n_; ++j) r[j] -= v[i] * Rat(a_[i][j]);
    return r;
  }
  VecI reflect_vec_i(int i, const VecI& v) const {
    VecI r = v;
    for (int j = 0; j < n_; ++j) r[j] -= v[i] * a_[i][j];
    return r;
  }

  VecI apply_word_root(const WeylWord& w, VecI c) const {
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
      c = reflect_root_coords(*it, c);
    return c;
  }
  VecR apply_word_vec(const WeylWord& w, VecR v) const {
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) v = reflect_vec(*it, v);
    return v;
  }

  // Root-coordinate matrix of w (column vector convention).
  MatI word_matrix_root(const WeylWord& w) const {
    MatI m = identity_mat();
    for (int j = 0; j < n_; ++j) {
      VecI e(n_, 0);
      e[j] = 1;
      e = apply_word_root(w, e);
      for (int i = 0; i < n_; ++i) m[i][j] = e[i];
    }
    return m;
  }

  MatI identity_mat() const {
    MatI m(n_, VecI(n_, 0));
    for (int i = 0; i < n_; ++i) m[i][i] = 1;
    return m;
  }

  static VecI mat_apply(const MatI& m, const VecI& c) {
    int n = (int)m.size();
    VecI r(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r[i] += m[i][j] * c[j];
    return r;
  }
  static MatI mat_mul(const MatI& a, const MatI& b) {
    int n = (int)a.size();
    MatI r(n, VecI(n, 0));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        if (a[i][k] == 0) continue;
        for (int j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
      }
    return r;
  }

  // Recover the canonical reduced word of a Weyl element given by its
  // root-coordinate matrix.  Greedy right-descent extraction; smallest index
  // first for determinism.
  WeylWord word_from_root_matrix(MatI m, size_t budget = 4096) const {
    std::vector<int> rev;
    while (m != identity_mat()) {
      if (rev.size() > budget) throw Error("NonterminatingRewrite", "word extraction budget");
      int found = -1;
      for (int i = 0; i < n_ && found < 0; ++i) {
        VecI img(n_);
        for (int r = 0; r < n_; ++r) img[r] = m[r][i];  // m * e_i
        if (uniform_sign(img) < 0) found = i;
      }
      if (found < 0) throw Error("NotWeyl", "matrix is not a Weyl group element");
      // multiply by R_found on the right
      MatI ri = word_matrix_root(WeylWord({found}));
      m = mat_mul(m, ri);
      rev.push_back(found);
    }
    WeylWord w;
    w.letters.assign(rev.rbegin(), rev.rend());
    return w;
  }

  WeylWord reduce_word(const WeylWord& w) const {
    return word_from_root_matrix(word_matrix_root(w));
  }
  size_t length(const WeylWord& w) const { return reduce_word(w).size(); }

  // ----- real root construction ------------------------------------------

  // Certify coords as a real root by greedy height descent to a simple root.
  std::optional<Root> try_root(const VecI& coords, size_t budget = 4096) const {
    int s = uniform_sign(coords);
    if (s == 0) return std::nullopt;
    if (s < 0) {
      VecI neg(coords.size());
      for (size_t i = 0; i < coords.size(); ++i) neg[i] = -coords[i];
      auto pos = try_root(neg, budget);
      if (!pos) return std::nullopt;
      Root r;
      r.coords = coords;
      r.simple = pos->simple;
      r.witness = pos->witness;
      r.witness.letters.push_back(pos->simple);
      return r;
    }
    VecI c = coords;
    std::vector<int> applied;
    while (true) {
      if (applied.size() > budget) throw Error("NotReal", "witness search budget exceeded");
      int simple_at = simple_index(c);
      if (simple_at >= 0) {
        Root r;
        r.coords = coords;
        r.simple = simple_at;
        r.witness.letters = applied;  // applied in order: first applied is leftmost
        return r;
      }
      int pick = -1;
      for (int i = 0; i < n_; ++i) {
        std::int64_t pair = 0;
        for (int j = 0; j < n_; ++j) pair += a_[i][j] * c[j];
        if (pair > 0) {
          pick = i;
          break;
        }
      }
      if (pick < 0) return std::nullopt;  // dominant: imaginary or not a root
      c = reflect_root_coords(pick, c);
      if (uniform_sign(c) <= 0) return std::nullopt;
      applied.push_back(pick);
    }
  }

  Root root_from_coords(const VecI& coords) const {
    auto r = try_root(coords);
    if (!r) throw Error("NotReal", "coordinates are not a real root");
    return *r;
  }

  Root negate(const Root& r) const { return root_from_coords(negated(r.coords)); }
  static VecI negated(const VecI& c) {
    VecI n(c.size());
    for (size_t i = 0; i < c.size(); ++i) n[i] = -c[i];
    return n;
  }

  // r_a(b) = b - <a,b> a.
  Root reflect(const Root& a, const Root& b) const {
    VecI c = b.coords;
    std::int64_t k = pairing(a, b);
    for (int i = 0; i < n_; ++i) c[i] -= k * a.coords[i];
    return root_from_coords(c);
  }

  // Coroot in coweight coordinates: alpha_j(a^vee) entries.
  VecR coroot_vec(const Root& a) const {
    VecR v(n_);
    for (int j = 0; j < n_; ++j) v[j] = Rat(a_[a.simple][j]);
    return apply_word_vec(a.witness, v);
  }

  // r_a(v) = v - a(v) a^vee on coweight coordinates.
  VecR reflect(const Root& a, const VecR& v) const {
    Rat av(0);
    for (int i = 0; i < n_; ++i) av += Rat(a.coords[i]) * v[i];
    VecR cr = coroot_vec(a);
    VecR r(n_);
    for (int i = 0; i < n_; ++i) r[i] = v[i] - av * cr[i];
    return r;
  }

  // Word of the reflection r_a as an element of W.
  WeylWord reflection_word(const Root& a) const {
    WeylWord w = a.witness;
    w.letters.push_back(a.simple);
    auto inv = a.witness.inverse();
    w.letters.insert(w.letters.end(), inv.letters.begin(), inv.letters.end());
    return w;
  }

  // ----- enumeration ------------------------------------------------------

  // All real roots with |height| <= bound, ordered by (height, lex).
  std::vector<Root> enumerate_real_roots(std::int64_t bound) const {
    if (bound < 1) throw Error("BadBound", "height bound must be >= 1");
    std::set<VecI> seen;
    std::vector<Root> out;
    std::vector<Root> queue;
    for (int i = 0; i < n_; ++i) {
      queue.push_back(simple_root(i));
      seen.insert(queue.back().coords);
    }
    size_t head = 0;
    while (head < queue.size()) {
      Root r = queue[head++];
      out.push_back(r);
      for (int i = 0; i < n_; ++i) {
        VecI c = reflect_root_coords(i, r.coords);
        if (uniform_sign(c) <= 0) continue;
        std::int64_t h = 0;
        for (auto x : c) h += x;
        if (h > bound) continue;
        if (seen.count(c)) continue;
        seen.insert(c);
        Root nr;
        nr.coords = c;
        nr.simple = r.simple;
        nr.witness.letters.push_back(i);
        nr.witness.letters.insert(nr.witness.letters.end(), r.witness.letters.begin(),
                                  r.witness.letters.end());
        queue.push_back(nr);
      }
    }
    size_t npos = out.size();
    for (size_t k = 0; k < npos; ++k) {
      const Root& r = out[k];
      Root neg;
      neg.coords = negated(r.coords);
      neg.simple = r.simple;
      neg.witness = r.witness;
      neg.witness.letters.push_back(r.simple);
      out.push_back(neg);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // ----- intervals and prenilpotence ---------------------------------------

  struct Interval {
    std::vector<Root> roots;
    Finiteness flag;
  };

  Interval interval(const Root& a, const Root& b, std::int64_t search_bound) const {
    Interval out;
    if (b.coords == a.coords) {
      out.roots = {a};
      out.flag = Finiteness::Finite;
      return out;
    }
    if (b.coords == negated(a.coords)) {
      out.roots = {a, b};
      std::sort(out.roots.begin(), out.roots.end());
      out.flag = Finiteness::Finite;
      return out;
    }
    Rat na = bilinear(a.coords, a.coords), nb = bilinear(b.coords, b.coords);
    Rat m = bilinear(a.coords, b.coords);

    // Minimum of Q(t,1-t) = t^2 na + 2t(1-t) m + (1-t)^2 nb on [0,1]; positive
    // iff no isotropic/negative direction meets the closed (p,q) >= 0 cone.
    Rat A = na - Rat(2) * m + nb, B = Rat(2) * m - Rat(2) * nb, C = nb;
    Rat conemin = na < nb ? na : nb;  // endpoints t=1, t=0
    if (A.sign() > 0) {
      Rat tstar = -B / (Rat(2) * A);
      if (tstar > Rat(0) && tstar < Rat(1)) {
        Rat q = A * tstar * tstar + B * tstar + C;
        if (q < conemin) conemin = q;
      }
    }
    std::int64_t limit = search_bound;
    bool certified_finite = false;
    if (conemin.sign() > 0) {
      Rat maxnorm(0);
      for (int i = 0; i < n_; ++i) {
        Rat ni = Rat(2) * eps_[i];  // (alpha_i, alpha_i) = eps_i * A_ii
        if (ni > maxnorm) maxnorm = ni;
      }
      std::int64_t bstar = 1;
      while (Rat(bstar) * Rat(bstar) * conemin < maxnorm) ++bstar;
      limit = std::max(search_bound, bstar);
      certified_finite = true;
    }
    std::set<std::pair<std::int64_t, std::int64_t>> members;
    for (std::int64_t p = 0; p <= limit; ++p)
      for (std::int64_t q = 0; p + q <= limit; ++q) {
        if (p == 0 && q == 0) continue;
        VecI c(n_);
        for (int i = 0; i < n_; ++i) c[i] = p * a.coords[i] + q * b.coords[i];
        if (try_root(c)) members.insert({p, q});
      }
    for (auto [p, q] : members) {
      if (p + q > search_bound) continue;
      VecI c(n_);
      for (int i = 0; i < n_; ++i) c[i] = p * a.coords[i] + q * b.coords[i];
      out.roots.push_back(root_from_coords(c));
    }
    std::sort(out.roots.begin(), out.roots.end());
    out.roots.erase(std::unique(out.roots.begin(), out.roots.end()), out.roots.end());

    if (certified_finite) {
      out.flag = Finiteness::Finite;
      return out;
    }
    // Try to certify infinitude: an isotropic direction d >= 0 in the (p,q)
    // lattice, orthogonal to a member gamma with gamma + d also a member,
    // yields the real roots gamma + 2kd for all k (reflection translation).
    for (const auto& d : isotropic_cone_dirs(na, m, nb)) {
      for (auto [p, q] : members) {
        auto it = members.find({p + d.first, q + d.second});
        if (it == members.end()) continue;
        VecI g(n_), dv(n_);
        for (int i = 0; i < n_; ++i) {
          g[i] = p * a.coords[i] + q * b.coords[i];
          dv[i] = d.first * a.coords[i] + d.second * b.coords[i];
        }
        if (bilinear(g, dv).is_zero()) {
          out.flag = Finiteness::Infinite;
          return out;
        }
      }
    }
    out.flag = Finiteness::Unknown;
    return out;
  }

  Cert is_prenilpotent(const Root& a, const Root& b, std::int64_t search_bound) const {
    if (b.coords == negated(a.coords)) return Cert::No;
    auto iv = interval(a, b, search_bound);
    if (iv.flag == Finiteness::Finite) return Cert::Yes;
    if (iv.flag == Finiteness::Infinite) return Cert::No;
    return Cert::Unknown;
  }

  // ----- finite type -------------------------------------------------------

  // Positive definiteness of the symmetrized principal submatrix (Sylvester).
  bool is_finite_type(const std::vector<int>& J) const {
    int k = (int)J.size();
    std::vector<VecR> B(k, VecR(k));
    for (int s = 0; s < k; ++s)
      for (int t = 0; t < k; ++t) B[s][t] = eps_[J[s]] * Rat(a_[J[s]][J[t]]);
    return sym_positive_definite(B);
  }
  bool is_finite_type_whole() const {
    std::vector<int> all(n_);
    for (int i = 0; i < n_; ++i) all[i] = i;
    return is_finite_type(all);
  }

  static bool sym_positive_definite(std::vector<VecR> B) {
    int k = (int)B.size();
    // Gaussian pivoting; PD iff all pivots positive.
    for (int i = 0; i < k; ++i) {
      if (!(B[i][i] > Rat(0))) return false;
      for (int r = i + 1; r < k; ++r) {
        Rat f = B[r][i] / B[i][i];
        for (int cidx = i; cidx < k; ++cidx) B[r][cidx] -= f * B[i][cidx];
      }
    }
    return true;
  }

  // ----- sign splits ---------------------------------------------------------

  struct SplitRoots {
    std::vector<Root> positive, vanishing, negative;
    bool vanishing_finite_type = true;
  };

  SplitRoots split_roots_by_sign(const std::function<int(const Root&)>& sign_fn,
                                 const std::vector<Root>& roots) const {
    SplitRoots out;
    for (const auto& r : roots) {
      int s = sign_fn(r);
      if (s > 0)
        out.positive.push_back(r);
      else if (s == 0)
        out.vanishing.push_back(r);
      else
        out.negative.push_back(r);
    }
    out.vanishing_finite_type = span_positive_definite(out.vanishing);
    return out;
  }

  // Gram positive definiteness on the span of a root set.
  bool span_positive_definite(const std::vector<Root>& roots) const {
    std::vector<VecR> basis;
    for (const auto& r : roots) {
      VecR v(n_);
      for (int i = 0; i < n_; ++i) v[i] = Rat(r.coords[i]);
      // reduce against current basis
      for (const auto& b : basis) {
        int piv = -1;
        for (int i = 0; i < n_; ++i)
          if (!b[i].is_zero()) {
            piv = i;
            break;
          }
        if (piv >= 0 && !v[piv].is_zero()) {
          Rat f = v[piv] / b[piv];
          for (int i = 0; i < n_; ++i) v[i] -= f * b[i];
        }
      }
      if (!is_zero(v)) basis.push_back(v);
    }
    int k = (int)basis.size();
    if (k == 0) return true;
    std::vector<VecR> G(k, VecR(k));
    for (int s = 0; s < k; ++s)
      for (int t = 0; t < k; ++t) {
        Rat g(0);
        for (int i = 0; i < n_; ++i)
          for (int j = 0; j < n_; ++j)
            g += basis[s][i] * eps_[i] * Rat(a_[i][j]) * basis[t][j];
        G[s][t] = g;
      }
    return sym_positive_definite(G);
  }

  static int uniform_sign(const VecI& c) {
    bool pos = false, neg = false;
    for (auto x : c) {
      if (x > 0) pos = true;
      if (x < 0) neg = true;
    }
    if (pos && neg) return 0;
    if (pos) return 1;
    if (neg) return -1;
    return 0;  // zero vector
  }

 private:
  void compute_symmetrizer() {
    eps_.assign(n_, Rat(0));
    for (int start = 0; start < n_; ++start) {
      if (!eps_[start].is_zero()) continue;
      eps_[start] = Rat(1);
      std::vector<int> stack{start};
      while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        for (int j = 0; j < n_; ++j) {
          if (i == j || a_[i][j] == 0) continue;
          Rat want = eps_[i] * Rat(a_[i][j]) / Rat(a_[j][i]);
          if (eps_[j].is_zero()) {
            eps_[j] = want;
            stack.push_back(j);
          } else if (eps_[j] != want) {
            throw Error("NotSymmetrizable", "no positive diagonal symmetrizer");
          }
        }
      }
    }
    // verify symmetry of D*A
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (eps_[i] * Rat(a_[i][j]) != eps_[j] * Rat(a_[j][i]))
          throw Error("NotSymmetrizable", "symmetrizer check failed");
  }

  int simple_index(const VecI& c) const {
    int idx = -1;
    for (int i = 0; i < n_; ++i) {
      if (c[i] == 1) {
        if (idx >= 0) return -1;
        idx = i;
      } else if (c[i] != 0) {
        return -1;
      }
    }
    return idx;
  }

  // Primitive isotropic directions (d1,d2) >= 0 of the binary form.
  std::vector<std::pair<std::int64_t, std::int64_t>> isotropic_cone_dirs(const Rat& na,
                                                                         const Rat& m,
                                                                         const Rat& nb) const {
    std::vector<std::pair<std::int64_t, std::int64_t>> dirs;
    // na r^2 + 2 m r + nb = 0 with r = d1/d2 >= 0; na > 0 for real roots.
    Rat disc = m * m - na * nb;
    if (disc.sign() < 0) return dirs;
    auto sq = rat_sqrt(disc);
    if (!sq) return dirs;
    for (int s = -1; s <= 1; s += 2) {
      Rat r = (-m + Rat(s) * *sq) / na;
      if (r < Rat(0)) continue;
      std::int64_t d1 = r.num(), d2 = r.den();
      if (d1 == 0 && d2 == 0) continue;
      dirs.push_back({d1, d2});
    }
    std::sort(dirs.begin(), dirs.end());
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
    return dirs;
  }

  static std::optional<Rat> rat_sqrt(const Rat& x) {
    if (x.sign() < 0) return std::nullopt;
    auto isqrt = [](std::int64_t v) -> std::optional<std::int64_t> {
      std::int64_t r = 0;
      while (r * r < v) ++r;
      if (r * r == v) return r;
      return std::nullopt;
    };
    auto n = isqrt(x.num()), d = isqrt(x.den());
    if (!n || !d) return std::nullopt;
    return Rat(*n, *d);
  }

  int n_ = 0;
  std::vector<VecI> a_;
  VecR eps_;
};

}  // namespace masure

#pragma once

// Combinatorial Galois descent: diagram automorphisms with valuation
// cocycles, the affine Galois action on the apartment, fixed apartments,
// restricted (possibly non-reduced) root systems, and descended valuations.
//
// The cocycle table omega_alpha^sigma on simple roots extends linearly: it is
// evaluation against the vector with those simple values, which is exactly
// the reflection recurrence of the extension lemma.

#include "masure/fixator.hpp"
#include "masure/parahoric.hpp"

namespace masure {

struct DescentGenerator {
  std::vector<int> perm;  // image of each simple index
  VecR omega;             // omega_{alpha_i}^sigma per simple index
};

class DescentData {
 public:
  struct Elt {
    std::vector<int> perm;
    VecR omega;  // vector v with omega^sigma_alpha = alpha(v)
    std::string name;
  };

  DescentData(RootSystem rs, std::vector<DescentGenerator> gens)
      : rs_(std::move(rs)), gens_(std::move(gens)) {}

  const RootSystem& rs() const { return rs_; }
  const std::vector<Elt>& group() const { return elts_; }

  // Builds the group closure; throws on inconsistent data.
  Report validate(std::int64_t root_bound = 4) {
    Report rep;
    rep.suite = "descent-validate";
    int n = rs_.rank();
    {
      auto& it = rep.item("diagram-automorphism");
      for (const auto& g : gens_) {
        ++it.samples;
        if ((int)g.perm.size() != n || (int)g.omega.size() != n) {
          it.failures.push_back("generator tables have the wrong size");
          continue;
        }
        std::vector<bool> seen(n, false);
        bool ok = true;
        for (int i = 0; i < n; ++i) {
          if (g.perm[i] < 0 || g.perm[i] >= n || seen[g.perm[i]]) ok = false;
          else seen[g.perm[i]] = true;
        }
        if (ok)
          for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n; ++j)
              if (rs_.cartan_entry(g.perm[i], g.perm[j]) != rs_.cartan_entry(i, j)) {
                ok = false;
                break;
              }
        if (!ok) {
          it.failures.push_back("generator is not a diagram automorphism");
          throw_after_ = "NotDiagramAutomorphism";
        }
      }
    }
    {
      auto& it = rep.item("cocycle-closure");
      ++it.samples;
      elts_.clear();
      Elt id;
      id.perm.resize(n);
      for (int i = 0; i < n; ++i) id.perm[i] = i;
      id.omega.assign(n, Rat(0));
      id.name = "e";
      elts_.push_back(id);
      std::map<std::vector<int>, size_t> index;
      index[id.perm] = 0;
      size_t head = 0;
      bool bad = false;
      while (head < elts_.size() && !bad) {
        Elt cur = elts_[head++];
        for (size_t gi = 0; gi < gens_.size(); ++gi) {
          const auto& g = gens_[gi];
          // composite gamma sigma with sigma = cur, gamma = g:
          // omega^{g.cur}_alpha = omega^{cur}_alpha + omega^{g}_{cur(alpha)}
          Elt nxt;
          nxt.perm.resize(n);
          nxt.omega.resize(n);
          for (int i = 0; i < n; ++i) nxt.perm[i] = g.perm[cur.perm[i]];
          for (int i = 0; i < n; ++i) nxt.omega[i] = cur.omega[i] + g.omega[cur.perm[i]];
          nxt.name = "g" + std::to_string(gi) + "." + cur.name;
          auto f = index.find(nxt.perm);
          if (f == index.end()) {
            if (elts_.size() > 256) {
              it.failures.push_back("group closure exceeded the size bound");
              bad = true;
              break;
            }
            index[nxt.perm] = elts_.size();
            elts_.push_back(nxt);
          } else if (elts_[f->second].omega != nxt.omega) {
            it.failures.push_back("cocycle identity fails at " + nxt.name);
            throw_after_ = "InconsistentCocycle";
            bad = true;
            break;
          }
        }
      }
    }
    {
      // Extension consistency: omega_{r_s b} = omega_b - <a_s, b> omega_{a_s}
      // over enumerated real roots.
      auto& it = rep.item("extension-consistency");
      for (const auto& e : elts_) {
        for (const auto& beta : rs_.enumerate_real_roots(root_bound)) {
          for (int s = 0; s < rs_.rank(); ++s) {
            ++it.samples;
            Root rb = rs_.reflect(rs_.simple_root(s), beta);
            Rat lhs = omega_of(e, rb);
            Rat rhs = omega_of(e, beta) -
                      Rat(rs_.pairing(rs_.simple_root(s), beta)) * e.omega[s];
            if (lhs != rhs) it.failures.push_back("extension mismatch at " + beta.str());
          }
        }
      }
    }
    if (!rep.ok() && !throw_after_.empty()) {
      validated_ = false;
      return rep;
    }
    validated_ = rep.ok();
    return rep;
  }
  bool validated() const { return validated_; }

  // omega^sigma_alpha = alpha(v^sigma): linear extension to all real roots.
  Rat omega_of(const Elt& e, const Root& alpha) const {
    Rat s(0);
    for (int i = 0; i < rs_.rank(); ++i) s += Rat(alpha.coords[i]) * e.omega[i];
    return s;
  }

  Root act_root(const Elt& e, const Root& alpha) const {
    VecI c(rs_.rank());
    for (int i = 0; i < rs_.rank(); ++i) c[e.perm[i]] = alpha.coords[i];
    return rs_.root_from_coords(c);
  }

  const Elt& inverse(const Elt& e) const {
    for (const auto& f : elts_) {
      bool id = true;
      for (int i = 0; i < rs_.rank() && id; ++i)
        if (f.perm[e.perm[i]] != i) id = false;
      if (id) return f;
    }
    throw Error("Internal", "group closure misses an inverse");
  }

  // The affine Galois action on the apartment:
  //   sigma(o + u) = o + v_sigma + sigma(u),  alpha_s(v_sigma) = omega^{sigma^{-1}}_{alpha_s}.
  ApartmentPoint act_point(const Elt& e, const ApartmentPoint& x) const {
    TitsCone tc(rs_);
    const Elt& einv = inverse(e);
    // coweight coordinates permute: (sigma u)_{perm(i)} = u_i
    VecR rep(rs_.rank());
    for (int i = 0; i < rs_.rank(); ++i) rep[e.perm[i]] = x.rep[i];
    for (int i = 0; i < rs_.rank(); ++i) rep[i] += einv.omega[i];
    // the direction facet transports by relabelling
    WeylWord w;
    for (int l : x.direction.word.letters) w.letters.push_back(e.perm[l]);
    std::vector<int> J;
    for (int j : x.direction.J) J.push_back(e.perm[j]);
    return ApartmentPoint{tc.canonical(x.direction.sign, w, J), rep};
  }

  HalfApartment act_half(const Elt& e, const HalfApartment& d) const {
    Root r2 = act_root(e, d.root);
    if (d.level.is_pos_inf()) return HalfApartment{r2, d.level};
    return HalfApartment{r2, ExtRat(d.level.value() + omega_of(e, d.root))};
  }

  // Gamma-fixed base point (orbit average of o) and a basis of the fixed
  // direction space.
  std::pair<ApartmentPoint, std::vector<VecR>> fixed_apartment() const {
    TitsCone tc(rs_);
    Apartment ap{TitsCone(rs_)};
    int n = rs_.rank();
    VecR acc(n, Rat(0));
    for (const auto& e : elts_) {
      ApartmentPoint img = act_point(e, ap.origin());
      acc = acc + img.rep;
    }
    Rat inv = Rat(1, (std::int64_t)elts_.size());
    VecR base = inv * acc;
    // fixed subspace of the permutation action: orbit sums
    std::vector<VecR> basis;
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n; ++i) {
      if (seen[i]) continue;
      VecR v(n, Rat(0));
      // orbit of i under all perms (closure)
      std::vector<int> orbit{i};
      seen[i] = true;
      for (size_t h = 0; h < orbit.size(); ++h)
        for (const auto& e : elts_) {
          int im = e.perm[orbit[h]];
          if (!seen[im]) {
            seen[im] = true;
            orbit.push_back(im);
          }
        }
      for (int o : orbit) v[o] = Rat(1);
      basis.push_back(v);
    }
    return {ApartmentPoint{tc.principal_facet(), base}, basis};
  }

  // ----- restriction -------------------------------------------------------------

  struct RestrictedRoot {
    VecR form;                                  // evaluations on the fixed-space basis
    std::vector<std::pair<Root, Rat>> sources;  // ambient roots with ratio r: rho(alpha) = r * form
    bool doubled = false;                       // 2 * form is also a restricted root
    bool provisional = false;                   // wall-meets-spherical-locus not certified
  };

  struct RestrictedRootSystem {
    std::vector<VecR> fixed_basis;
    std::vector<RestrictedRoot> roots;
    bool non_reduced = false;
  };

  RestrictedRootSystem restrict_roots(std::int64_t root_bound = 4) const {
    RestrictedRootSystem out;
    auto [fixed_base_point, basis] = fixed_apartment();
    (void)fixed_base_point;
    out.fixed_basis = basis;
    size_t k = basis.size();
    auto restriction = [&](const Root& a) {
      VecR v(k);
      for (size_t b = 0; b < k; ++b) {
        Rat s(0);
        for (int i = 0; i < rs_.rank(); ++i) s += Rat(a.coords[i]) * basis[b][i];
        v[b] = s;
      }
      return v;
    };
    std::vector<std::pair<VecR, Root>> nonzero;
    for (const auto& a : rs_.enumerate_real_roots(root_bound)) {
      VecR v = restriction(a);
      if (!is_zero(v)) nonzero.push_back({v, a});
    }
    // group equal forms first (distinct elements of phi^natural)
    std::vector<std::pair<VecR, std::vector<Root>>> base;
    for (const auto& [v, a] : nonzero) {
      bool found = false;
      for (auto& [f, srcs] : base)
        if (f == v) {
          srcs.push_back(a);
          found = true;
          break;
        }
      if (!found) base.push_back({v, {a}});
    }
    // every form carries the whole positive ray as its source set
    std::vector<RestrictedRoot> forms;
    for (const auto& [f, own] : base) {
      RestrictedRoot rr;
      rr.form = f;
      for (const auto& [g, srcs] : base) {
        auto ratio = proportion(g, f);
        if (!ratio || ratio->sign() <= 0) continue;
        for (const auto& a : srcs) rr.sources.push_back({a, *ratio});
      }
      VecR twice = Rat(2) * f;
      for (const auto& [g, srcs] : base) {
        (void)srcs;
        if (g == twice) {
          rr.doubled = true;
          out.non_reduced = true;
        }
      }
      rr.provisional = !rs_.is_finite_type_whole();
      forms.push_back(rr);
    }
    out.roots = forms;
    return out;
  }

  // phi_a^natural(u) for u given as an ordered product of letters in the root
  // groups of the ray of a: min phi(u_i) / r_i.
  ExtRat descend_valuation(const Vrd& vrd, const RestrictedRoot& a,
                           const std::vector<RootLetter>& letters) const {
    std::vector<RootLetter> nontrivial;
    for (const auto& l : letters)
      if (!l.param.is_zero()) nontrivial.push_back(l);
    // grignotant pre-check within the ray
    if (!nontrivial.empty()) fixed_set_of_unipotent(vrd, nontrivial);
    ExtRat best = ExtRat::pos_inf();
    for (const auto& l : nontrivial) {
      Rat r(0);
      bool ok = false;
      for (const auto& [src, ratio] : a.sources)
        if (src.coords == l.root.coords) {
          r = ratio;
          ok = true;
          break;
        }
      if (!ok) throw Error("NotInUa", "letter root does not restrict into the ray of a");
      ExtRat v = vrd.phi(l);
      if (v.is_pos_inf()) continue;
      ExtRat scaled(v.value() / r);
      if (scaled < best) best = scaled;
    }
    return best;
  }

  // Combinatorial mode: the descended value set as a step lattice.
  ValueSet descended_value_set(const RestrictedRoot& a, const ValueSet& ambient) const {
    if (ambient.dense) return ambient;
    Rat step = ambient.step;
    bool first = true;
    for (const auto& [src, ratio] : a.sources) {
      (void)src;
      Rat s = ambient.step / ratio;
      step = first ? s : rat_gcd(step, s);
      first = false;
    }
    return ValueSet{false, step};
  }

  Report check_descent_conditions(const std::vector<std::string>& which,
                                  std::int64_t root_bound = 4) const {
    Report rep;
    rep.suite = "descent-conditions";
    auto wanted = [&](const std::string& s) {
      return std::find(which.begin(), which.end(), s) != which.end();
    };
    auto rrs = restrict_roots(root_bound);
    if (wanted("DSR")) {
      auto& it = rep.item("DSR");
      ++it.samples;
      // restricted simple roots are linearly independent
      std::vector<VecR> rows;
      for (int i = 0; i < rs_.rank(); ++i) {
        VecR v(rrs.fixed_basis.size());
        for (size_t b = 0; b < rrs.fixed_basis.size(); ++b) {
          Rat s(0);
          for (int c = 0; c < rs_.rank(); ++c)
            s += Rat(rs_.simple_root(i).coords[c]) * rrs.fixed_basis[b][c];
          v[b] = s;
        }
        if (!is_zero(v)) rows.push_back(v);
      }
      // distinct nonzero restrictions must be independent
      std::vector<VecR> distinct;
      for (const auto& r : rows) {
        bool dup = false;
        for (const auto& d : distinct)
          if (d == r) dup = true;
        if (!dup) distinct.push_back(r);
      }
      if (rank_of(distinct) != distinct.size())
        it.failures.push_back("restricted simple roots are dependent");
      if (!rs_.is_finite_type_whole()) ++it.skipped;  // facet-meets check provisional
    }
    if (wanted("DV2")) {
      auto& it = rep.item("DV2");
      for (const auto& a : rrs.roots) {
        ++it.samples;
        ValueSet vs = descended_value_set(a, ValueSet::integers());
        if (vs.dense) continue;
        if (!(vs.step > Rat(0))) it.failures.push_back("degenerate descended value set");
      }
    }
    return rep;
  }

  static Rat rat_gcd(const Rat& a, const Rat& b) {
    // gcd(p1/q1, p2/q2) = gcd(p1 q2, p2 q1) / (q1 q2)
    std::int64_t n = std::gcd(std::abs(a.num() * b.den()), std::abs(b.num() * a.den()));
    return Rat(n, a.den() * b.den());
  }

 private:
  static std::optional<Rat> proportion(const VecR& x, const VecR& y) {
    // x = r * y
    std::optional<Rat> r;
    for (size_t i = 0; i < x.size(); ++i) {
      if (y[i].is_zero()) {
        if (!x[i].is_zero()) return std::nullopt;
        continue;
      }
      Rat q = x[i] / y[i];
      if (r && *r != q) return std::nullopt;
      r = q;
    }
    return r;
  }
  static size_t rank_of(std::vector<VecR> rows) {
    size_t rank = 0;
    size_t cols = rows.empty() ? 0 : rows[0].size();
    for (size_t c = 0; c < cols; ++c) {
      size_t piv = rank;
      while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
      if (piv == rows.size()) continue;
      std::swap(rows[piv], rows[rank]);
      for (size_t r = 0; r < rows.size(); ++r) {
        if (r == rank || rows[r][c].is_zero()) continue;
        Rat f = rows[r][c] / rows[rank][c];
        for (size_t cc = 0; cc < cols; ++cc) rows[r][cc] -= f * rows[rank][cc];
      }
      ++rank;
    }
    return rank;
  }

  RootSystem rs_;
  std::vector<DescentGenerator> gens_;
  std::vector<Elt> elts_;
  bool validated_ = false;
  std::string throw_after_;
};

}  // namespace masure

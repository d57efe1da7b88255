#pragma once

// Sampled checkers for the valuation axioms (V0)-(V5) and the root-datum
// axioms (DR1)-(DR5) on the concrete instantiations.  Reports carry seeds and
// witness words so failures can be replayed.

#include <random>
#include <sstream>

#include "masure/valued_group.hpp"

namespace masure {

struct CheckItem {
  std::string condition;
  int samples = 0;
  int skipped = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckItem> items;

  bool ok() const {
    for (const auto& it : items)
      if (!it.ok()) return false;
    return true;
  }
  int total_failures() const {
    int n = 0;
    for (const auto& it : items) n += (int)it.failures.size();
    return n;
  }
  CheckItem& item(const std::string& name) {
    for (auto& it : items)
      if (it.condition == name) return it;
    items.push_back(CheckItem{name, 0, 0, {}});
    return items.back();
  }
};

class Sampler {
 public:
  Sampler(std::uint64_t seed, const Vrd& vrd) : rng_(seed), vrd_(vrd) {
    std::int64_t p = vrd.prime();
    params_ = {Rat(1),    Rat(-1),    Rat(2),        Rat(-2),    Rat(3),
               Rat(1, 2), Rat(-1, 3), Rat(3, 4),     Rat(p),     Rat(-p),
               Rat(1, p), Rat(p * p), Rat(1, p * p), Rat(2 * p), Rat(3, p),
               Rat(p, _3butnot(p))};
    roots_ = vrd.rs().enumerate_real_roots(vrd.tag() == GroupTag::LoopSL2 ? 7 : 2);
    levels_ = {-2, -1, 0, 1, 2};
  }

  std::uint64_t u64() { return rng_(); }
  std::int64_t index(std::int64_t n) { return (std::int64_t)(rng_() % (std::uint64_t)n); }
  const Rat& param() { return params_[index((std::int64_t)params_.size())]; }
  Rat nonzero_param() {
    while (true) {
      const Rat& r = param();
      if (!r.is_zero()) return r;
    }
  }
  // A parameter with omega >= lambda.
  Rat param_at_least(std::int64_t lambda) {
    for (int tries = 0; tries < 64; ++tries) {
      Rat r = nonzero_param();
      ExtRat w = vrd_.omega(r);
      if (w.value() >= Rat(lambda)) return r;
    }
    // deterministic fallback: p^max(lambda,0)
    Rat r(1);
    for (std::int64_t i = 0; i < std::max<std::int64_t>(lambda, 0); ++i) r *= Rat(vrd_.prime());
    return r;
  }
  const Root& root() { return roots_[index((std::int64_t)roots_.size())]; }
  std::int64_t level() { return levels_[index((std::int64_t)levels_.size())]; }
  const std::vector<Root>& roots() const { return roots_; }

  GroupElement torus_element() {
    std::int64_t p = vrd_.prime();
    std::vector<Rat> pool = {Rat(p), Rat(1, p), Rat(2), Rat(p * p), Rat(3)};
    if (vrd_.dim() == 2) {
      Rat c = pool[index((std::int64_t)pool.size())];
      return vrd_.torus({c, Rat(1) / c});
    }
    Rat c1 = pool[index((std::int64_t)pool.size())];
    Rat c2 = pool[index((std::int64_t)pool.size())];
    return vrd_.torus({c1, c2, Rat(1) / (c1 * c2)});
  }

  // Random word over root letters and torus letters.
  GroupElement word(int len, bool torus_letters = true) {
    GroupElement g = vrd_.identity();
    for (int i = 0; i < len; ++i) {
      if (torus_letters && index(4) == 0)
        g = vrd_.mul(g, torus_element());
      else
        g = vrd_.mul(g, vrd_.u(root(), param()));
    }
    return g;
  }

 private:
  static std::int64_t _3butnot(std::int64_t p) { return p == 3 ? 2 : 3; }
  std::mt19937_64 rng_;
  const Vrd& vrd_;
  std::vector<Rat> params_;
  std::vector<Root> roots_;
  std::vector<std::int64_t> levels_;
};

namespace detail {

inline std::string wit(std::initializer_list<std::string> parts) {
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : " ") + p;
  return s;
}

// Decompose gamma = p a + q b with p, q >= 1 (small search).
inline std::optional<std::pair<std::int64_t, std::int64_t>> pq_of(const VecI& a, const VecI& b,
                                                                  const VecI& g) {
  for (std::int64_t p = 1; p <= 6; ++p)
    for (std::int64_t q = 1; q <= 6; ++q) {
      bool ok = true;
      for (size_t i = 0; i < g.size(); ++i)
        if (p * a[i] + q * b[i] != g[i]) {
          ok = false;
          break;
        }
      if (ok) return std::make_pair(p, q);
    }
  return std::nullopt;
}

}  // namespace detail

// ----- (V0)-(V5) ------------------------------------------------------------------

inline Report check_valuation_axioms(const Vrd& vrd, int budget = 200, std::uint64_t seed = 0) {
  Report rep;
  rep.suite = "valuation(" + tag_name(vrd.tag()) + ")";
  rep.seed = seed;
  Sampler smp(seed ^ 0x9e3779b97f4a7c15ULL, vrd);
  const RootSystem& rs = vrd.rs();

  // (V0): each value set has at least three elements.
  {
    auto& it = rep.item("V0");
    for (const auto& a : smp.roots()) {
      ++it.samples;
      std::set<std::string> vals;
      for (const Rat& k : {Rat(1), Rat(vrd.prime()), Rat(1, vrd.prime())})
        vals.insert(vrd.phi(a, k).str());
      if (vals.size() < 3) it.failures.push_back("value set too small at " + a.str());
    }
  }
  // (V1): U_{a,l} is a subgroup; U_{a,inf} = {e}.
  {
    auto& it = rep.item("V1");
    for (int s = 0; s < budget; ++s) {
      ++it.samples;
      Root a = smp.root();
      std::int64_t l = smp.level();
      Rat x = smp.param_at_least(l), y = smp.param_at_least(l);
      GroupElement g = vrd.mul(vrd.u(a, x), vrd.u(a, y));
      auto rl = vrd.recognize_root_letter(g.mat);
      bool ok = true;
      if (vrd.eq(g, vrd.identity())) {
        // product is the identity, fine
      } else if (!rl || rl->root != a || !(vrd.phi(*rl).value() >= Rat(l))) {
        ok = false;
      }
      GroupElement gi = vrd.inv(vrd.u(a, x));
      auto rli = vrd.recognize_root_letter(gi.mat);
      if (!rli || !(vrd.phi(*rli) == vrd.phi(a, x))) ok = false;  // also phi(u) = phi(u^-1)
      if (!ok)
        it.failures.push_back(detail::wit({"V1", a.str(), x.str(), y.str()}));
    }
    auto& it2 = rep.item("V1.inf");
    ++it2.samples;
    if (!vrd.eq(vrd.u(smp.roots()[0], Rat(0)), vrd.identity()))
      it2.failures.push_back("u_a(0) != e");
  }
  // (V2.1): phi_{r_a b}(n(u) v n(u)^-1) = phi_b(v) - <a,b> phi_a(u), exactly.
  {
    auto& it = rep.item("V2.1");
    for (int s = 0; s < budget; ++s) {
      ++it.samples;
      Root a = smp.root(), b = smp.root();
      Rat x = smp.nonzero_param(), y = smp.nonzero_param();
      GroupElement n = vrd.n_of(vrd.u(a, x)).n;
      GroupElement c = vrd.conj(n, vrd.u(b, y));
      auto rl = vrd.recognize_root_letter(c.mat);
      Root rab = rs.reflect(a, b);
      if (!rl || rl->root != rab) {
        it.failures.push_back(detail::wit({"conj not in U_{r_a b}", a.str(), b.str()}));
        continue;
      }
      ExtRat lhs = vrd.phi(*rl);
      ExtRat rhs = vrd.phi(b, y) - ExtRat(Rat(rs.pairing(a, b)) * vrd.phi(a, x).value());
      if (lhs != rhs)
        it.failures.push_back(detail::wit(
            {"V2.1", a.str(), b.str(), x.str(), y.str(), lhs.str(), "!=", rhs.str()}));
    }
  }
  // (V2.2): v -> phi_a(v) - phi_a(t v t^-1) is constant.
  {
    auto& it = rep.item("V2.2");
    for (int s = 0; s < budget; ++s) {
      ++it.samples;
      Root a = smp.root();
      GroupElement t = smp.torus_element();
      std::optional<Rat> delta;
      bool ok = true;
      for (int j = 0; j < 4; ++j) {
        Rat x = smp.nonzero_param();
        auto rl = vrd.recognize_root_letter(vrd.conj(t, vrd.u(a, x)).mat);
        if (!rl || rl->root != a) {
          ok = false;
          break;
        }
        Rat d = vrd.phi(a, x).value() - vrd.phi(*rl).value();
        if (!delta)
          delta = d;
        else if (*delta != d)
          ok = false;
      }
      if (!ok) it.failures.push_back(detail::wit({"V2.2", a.str()}));
    }
  }
  // (V3): [U_{a,l}, U_{b,m}] inside the groups of the open interval at level pl+qm.
  {
    auto& it = rep.item("V3");
    for (int s = 0; s < budget; ++s) {
      Root a = smp.root(), b = smp.root();
      if (rs.is_prenilpotent(a, b, 6) != Cert::Yes) {
        ++it.skipped;
        continue;
      }
      ++it.samples;
      std::int64_t l = smp.level(), m = smp.level();
      Rat x = smp.param_at_least(l), y = smp.param_at_least(m);
      GroupElement u = vrd.u(a, x), v = vrd.u(b, y);
      GroupElement comm = vrd.mul(vrd.mul(u, v), vrd.mul(vrd.inv(u), vrd.inv(v)));
      if (vrd.eq(comm, vrd.identity())) continue;
      auto rl = vrd.recognize_root_letter(comm.mat);
      if (!rl) {
        it.failures.push_back(detail::wit({"V3 unfactorable", a.str(), b.str()}));
        continue;
      }
      auto pq = detail::pq_of(a.coords, b.coords, rl->root.coords);
      bool ok = pq.has_value();
      if (ok) {
        Rat bound = Rat(pq->first) * Rat(l) + Rat(pq->second) * Rat(m);
        ok = vrd.phi(*rl).is_pos_inf() || vrd.phi(*rl).value() >= bound;
      }
      if (!ok)
        it.failures.push_back(
            detail::wit({"V3", a.str(), b.str(), x.str(), y.str(), rl->root.str()}));
    }
  }
  // (V4): vacuous for the reduced split systems here.
  {
    auto& it = rep.item("V4");
    it.skipped = 1;  // 2a is never a root in a reduced system
  }
  // (V5): n(u) = u' u u'' with phi_{-a}(u') = phi_{-a}(u'') = -phi_a(u).
  {
    auto& it = rep.item("V5");
    for (int s = 0; s < budget; ++s) {
      ++it.samples;
      Root a = smp.root();
      Rat x = smp.nonzero_param();
      auto nf = vrd.n_of(vrd.u(a, x));
      auto p1 = vrd.recognize_root_letter(nf.u_prime.mat);
      auto p2 = vrd.recognize_root_letter(nf.u_second.mat);
      ExtRat target = -vrd.phi(a, x);
      if (!p1 || !p2 || vrd.phi(*p1) != target || vrd.phi(*p2) != target)
        it.failures.push_back(detail::wit({"V5", a.str(), x.str()}));
    }
  }
  // Remark after the definition: phi_{-a}(n(u) u n(u)^-1) = -phi_a(u).
  {
    auto& it = rep.item("conj-negation");
    for (int s = 0; s < budget / 4; ++s) {
      ++it.samples;
      Root a = smp.root();
      Rat x = smp.nonzero_param();
      GroupElement u = vrd.u(a, x);
      GroupElement n = vrd.n_of(u).n;
      auto rl = vrd.recognize_root_letter(vrd.conj(n, u).mat);
      if (!rl || rl->root.coords != RootSystem::negated(a.coords) ||
          vrd.phi(*rl) != -vrd.phi(a, x))
        it.failures.push_back(detail::wit({"conj-negation", a.str(), x.str()}));
    }
  }
  // n(u)^2 acts trivially on the apartment: phi_b(n^2 v n^-2) = phi_b(v).
  {
    auto& it = rep.item("n(u)^2-trivial");
    for (int s = 0; s < budget / 4; ++s) {
      ++it.samples;
      Root a = smp.root(), b = smp.root();
      Rat x = smp.nonzero_param(), y = smp.nonzero_param();
      GroupElement n = vrd.n_of(vrd.u(a, x)).n;
      GroupElement n2 = vrd.mul(n, n);
      auto rl = vrd.recognize_root_letter(vrd.conj(n2, vrd.u(b, y)).mat);
      if (!rl || rl->root != b || vrd.phi(*rl) != vrd.phi(b, y))
        it.failures.push_back(detail::wit({"n^2", a.str(), b.str()}));
    }
  }
  // CENT witness: t = n(u) n(v) gives phi_a(t^-1 u t) = 2 phi_a(v) - phi_a(u).
  {
    auto& it = rep.item("CENT");
    for (int s = 0; s < budget / 4; ++s) {
      Root a = smp.root();
      Rat x = smp.nonzero_param(), y = smp.nonzero_param();
      if (vrd.omega(x) == vrd.omega(y)) {
        ++it.skipped;
        continue;
      }
      ++it.samples;
      GroupElement u = vrd.u(a, x), v = vrd.u(a, y);
      GroupElement t = vrd.mul(vrd.n_of(u).n, vrd.n_of(v).n);
      auto rl = vrd.recognize_root_letter(vrd.conj(vrd.inv(t), u).mat);
      ExtRat want = ExtRat(Rat(2) * vrd.phi(a, y).value() - vrd.phi(a, x).value());
      if (!rl || rl->root != a || vrd.phi(*rl) != want)
        it.failures.push_back(detail::wit({"CENT", a.str(), x.str(), y.str()}));
    }
  }
  return rep;
}

// ----- (DR1)-(DR5) -------------------------------------------------------------------

inline Report check_root_datum_axioms(const Vrd& vrd, int budget = 200, std::uint64_t seed = 0) {
  Report rep;
  rep.suite = "root-datum(" + tag_name(vrd.tag()) + ")";
  rep.seed = seed;
  Sampler smp(seed ^ 0xda3e39cb94b95bdbULL, vrd);
  const RootSystem& rs = vrd.rs();

  {
    auto& it = rep.item("DR1");
    for (const auto& a : smp.roots()) {
      ++it.samples;
      if (vrd.eq(vrd.u(a, Rat(1)), vrd.identity()))
        it.failures.push_back("trivial root group at " + a.str());
    }
  }
  {
    auto& it = rep.item("DR2");
    for (int s = 0; s < budget; ++s) {
      Root a = smp.root(), b = smp.root();
      if (rs.is_prenilpotent(a, b, 6) != Cert::Yes) {
        ++it.skipped;
        continue;
      }
      ++it.samples;
      GroupElement u = vrd.u(a, smp.nonzero_param()), v = vrd.u(b, smp.nonzero_param());
      GroupElement comm = vrd.mul(vrd.mul(u, v), vrd.mul(vrd.inv(u), vrd.inv(v)));
      if (vrd.eq(comm, vrd.identity())) continue;
      auto rl = vrd.recognize_root_letter(comm.mat);
      bool ok = rl.has_value();
      if (ok) {
        // the factor root must be in the open interval ]a,b[
        auto pq = detail::pq_of(a.coords, b.coords, rl->root.coords);
        ok = pq.has_value();
      }
      if (!ok) it.failures.push_back(detail::wit({"DR2", a.str(), b.str()}));
    }
  }
  {
    auto& it = rep.item("DR4");
    for (int s = 0; s < budget; ++s) {
      ++it.samples;
      Root a = smp.root(), b = smp.root();
      Rat x = smp.nonzero_param(), y = smp.nonzero_param();
      GroupElement n = vrd.n_of(vrd.u(a, x)).n;
      auto rl = vrd.recognize_root_letter(vrd.conj(n, vrd.u(b, y)).mat);
      if (!rl || rl->root != rs.reflect(a, b)) {
        it.failures.push_back(detail::wit({"DR4 conj", a.str(), b.str()}));
        continue;
      }
      // class constancy: n(u) T = n(v) T
      Rat x2 = smp.nonzero_param();
      GroupElement n2 = vrd.n_of(vrd.u(a, x2)).n;
      GroupElement q = vrd.mul(n, vrd.inv(n2));
      if (!vrd.in_torus(q)) it.failures.push_back(detail::wit({"DR4 class", a.str()}));
    }
  }
  {
    auto& it = rep.item("DR5");
    auto lower_unipotent_shape = [&](const MatL& m) {
      // U^- elements: entries have no positive t-degree and the t-degree-0
      // part is lower unipotent.
      for (int i = 0; i < vrd.dim(); ++i)
        for (int j = 0; j < vrd.dim(); ++j) {
          if (!m(i, j).is_zero() && m(i, j).max_deg() > 0) return false;
          Rat c0 = m(i, j).coeff(0);
          if (i == j && c0 != Rat(1)) return false;
          if (i < j && !c0.is_zero()) return false;
        }
      return true;
    };
    for (int s = 0; s < budget; ++s) {
      ++it.samples;
      GroupElement g = smp.torus_element();
      for (int k = 0; k < 4; ++k) {
        Root a = smp.root();
        if (!a.is_positive()) a = rs.root_from_coords(RootSystem::negated(a.coords));
        g = vrd.mul(g, vrd.u(a, smp.param()));
      }
      if (lower_unipotent_shape(g.mat) && !vrd.eq(g, vrd.identity()))
        it.failures.push_back("DR5 witness in T.U+ with U- shape");
    }
  }
  return rep;
}

// Value-group rescaling embeds: every level of (1/m)Z is a level of (1/m')Z.
inline bool value_group_embeds(std::int64_t m, std::int64_t mprime) {
  return mprime % m == 0;
}

}  // namespace masure

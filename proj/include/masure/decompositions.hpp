#pragma once

// Constructive Iwasawa decomposition G = U(C) N G(F), rank-1 closed forms,
// Birkhoff-type decomposition q1 n q2 relative to two apartment points, and
// the uniqueness-modulo-N(F) checker.  Every identity is matrix-verified at
// runtime; a sign slip throws instead of propagating.

#include "masure/axioms.hpp"
#include "masure/fixator.hpp"

namespace masure {

// The affine facet F of the decomposition: a point or a facet germ.
using FixedMark = std::variant<ApartmentPoint, Apartment::FacetGerm>;

inline bool mark_in_half(const Apartment& ap, const FixedMark& f, const HalfApartment& d) {
  if (std::holds_alternative<ApartmentPoint>(f))
    return ap.contains(d, std::get<ApartmentPoint>(f));
  return ap.germ_member(std::get<Apartment::FacetGerm>(f), {d});
}
inline FixedMark mark_transform(const Apartment& ap, const Apartment::AffineAuto& m,
                                const FixedMark& f) {
  if (std::holds_alternative<ApartmentPoint>(f))
    return ap.apply(m, std::get<ApartmentPoint>(f));
  const auto& g = std::get<Apartment::FacetGerm>(f);
  return Apartment::FacetGerm{ap.apply(m, g.base), ap.cone().act(m.linear, g.direction)};
}

struct Rank1Triple {
  GroupElement u, n, q;
  bool trivial = false;  // the letter was already in G(F)
};

// Closed-form rank-1 step: a single root letter u_g(c) written as u n q with
// u in U_{-g}, n monomial, q fixing F.  If the letter already fixes F the
// trivial triple (e, e, letter) is returned.
inline Rank1Triple rank1_decompose(const Vrd& vrd, const Apartment& ap, const RootLetter& letter,
                                   const FixedMark& F) {
  if (letter.param.is_zero()) throw Error("ZeroParameter", "rank-1 step on the identity");
  GroupElement v = vrd.u(letter.root, letter.param);
  Rank1Triple out;
  if (mark_in_half(ap, F, HalfApartment{letter.root, vrd.phi(letter)})) {
    out.u = vrd.identity();
    out.n = vrd.identity();
    out.q = v;
    out.trivial = true;
    return out;
  }
  Root neg = vrd.rs().root_from_coords(RootSystem::negated(letter.root.coords));
  Rat cinv = Rat(1) / letter.param;
  out.u = vrd.u(neg, cinv);
  out.n = vrd.n_of(vrd.u(neg, -cinv)).n;
  out.q = vrd.u(neg, cinv);
  if (vrd.mul(vrd.mul(out.u, out.n), out.q).mat != v.mat)
    throw Error("Internal", "rank-1 identity failed the matrix check");
  if (!mark_in_half(ap, F, HalfApartment{neg, vrd.phi(neg, cinv)}))
    throw Error("Internal", "rank-1 q-factor does not fix F");
  return out;
}

struct IwasawaTriple {
  GroupElement u, n, q;
  Apartment::AffineAuto nu_n;              // the apartment action of the N factor
  std::vector<std::string> trace;          // per-letter certificate
};

namespace detail {

// Split an element of U(C) off its simple factor: mat = m * u(eps*alpha_j, x)
// with m in U(m_j).  Instantiation-specific closed forms.
inline std::pair<MatL, Rat> split_unipotent(const Vrd& vrd, const MatL& mat, int j, int eps) {
  auto take = [&](int r, int c) {
    const Laurent& e = mat(r, c);
    return e.coeff(0);
  };
  Rat x;
  switch (vrd.tag()) {
    case GroupTag::SL2:
      x = eps > 0 ? take(0, 1) : take(1, 0);
      break;
    case GroupTag::SL3: {
      if (eps > 0)
        x = j == 0 ? take(0, 1) : take(1, 2);
      else
        x = j == 0 ? take(1, 0) : take(2, 1);
      break;
    }
    case GroupTag::LoopSL2: {
      // simple alpha_1 = (0,1): e12 t^0; simple alpha_0 = (1,0): e21 t^1 for
      // the positive chamber, and mirrored degrees for the negative one.
      if (j == 1)
        x = eps > 0 ? mat(0, 1).coeff(0) : mat(1, 0).coeff(0);
      else
        x = eps > 0 ? mat(1, 0).coeff(1) : mat(0, 1).coeff(-1);
      break;
    }
  }
  Root sr = vrd.rs().simple_root(j);
  if (eps < 0) sr = vrd.rs().root_from_coords(RootSystem::negated(sr.coords));
  MatL rest = mat * vrd.u(sr, -x).mat;
  return {rest, x};
}

// Factor an eps-unipotent matrix into root letters of the eps chamber.
inline std::vector<RootLetter> factor_unipotent(const Vrd& vrd, MatL m, int eps,
                                                std::size_t budget) {
  std::vector<RootLetter> out;
  auto push = [&](const Root& r, const Rat& k) {
    if (!k.is_zero()) out.push_back(RootLetter{r, k});
  };
  const RootSystem& rs = vrd.rs();
  switch (vrd.tag()) {
    case GroupTag::SL2: {
      Root a = rs.simple_root(0);
      if (eps < 0) a = rs.root_from_coords({-1});
      push(a, eps > 0 ? m(0, 1).constant() : m(1, 0).constant());
      break;
    }
    case GroupTag::SL3: {
      if (eps > 0) {
        Rat a = m(0, 1).constant(), y = m(1, 2).constant();
        Rat z = m(0, 2).constant() - a * y;
        push(rs.root_from_coords({1, 0}), a);
        push(rs.root_from_coords({0, 1}), y);
        push(rs.root_from_coords({1, 1}), z);
      } else {
        push(rs.root_from_coords({-1, 0}), m(1, 0).constant());
        push(rs.root_from_coords({0, -1}), m(2, 1).constant());
        push(rs.root_from_coords({-1, -1}), m(2, 0).constant());
      }
      break;
    }
    case GroupTag::LoopSL2: {
      // Strip the alpha-component, then eliminate the slow corner by a
      // degree-reducing Euclid; all operation parameters stay inside the
      // chamber's root groups.  Letters are peeled from the left, so the
      // product of the pushed letters reconstructs the input.
      int a12 = eps > 0 ? 0 : 1;  // row of the "upper" corner for this sign
      auto deg = [&](const Laurent& l) { return eps > 0 ? l.max_deg() : -l.min_deg(); };
      auto lead = [&](const Laurent& l) { return l.coeff(eps > 0 ? l.max_deg() : l.min_deg()); };
      auto root_of = [&](int i, int j, int d) {
        auto r = vrd.root_at_position(i, j, eps > 0 ? d : -d);
        if (!r) throw Error("Internal", "loop letter out of range");
        return *r;
      };
      Rat x0 = m(a12, 1 - a12).coeff(0);
      Root alpha = eps > 0 ? rs.root_from_coords({0, 1}) : rs.root_from_coords({0, -1});
      push(alpha, x0);
      m = vrd.u(alpha, -x0).mat * m;
      // now m == I at t-degree 0 (in the eps-orientation)
      std::size_t steps = 0;
      while (true) {
        if (++steps > budget) throw Error("NonterminatingRewrite", "loop factorization budget");
        Laurent A = m(a12, a12), C = m(1 - a12, a12);
        if (C.is_zero()) break;
        if (deg(C) > deg(A)) {
          int d = deg(C) - deg(A);  // >= 1: a legal lower-corner letter
          Rat s = lead(C) / lead(A);
          Root r = root_of(1 - a12, a12, d);
          push(r, s);
          m = vrd.u(r, -s).mat * m;
        } else {
          int d = deg(A) - deg(C);
          Rat s = lead(A) / lead(C);
          Root r = root_of(a12, 1 - a12, d);
          push(r, s);
          m = vrd.u(r, -s).mat * m;
        }
      }
      // m = I + B in the upper corner
      Laurent B = m(a12, 1 - a12);
      for (const auto& [n, c] : B.coeffs()) {
        auto r = vrd.root_at_position(a12, 1 - a12, n);
        if (!r) throw Error("Internal", "residual letter out of range");
        push(*r, c);
      }
      break;
    }
  }
  return out;
}

}  // namespace detail

struct IwasawaOptions {
  std::size_t budget = 10000;
};

// Iwasawa decomposition g = u n q with u in U(C), n in N, q in G(F).
inline IwasawaTriple iwasawa(const Vrd& vrd, const GroupElement& g, const Facet& C,
                             const FixedMark& F, const IwasawaOptions& opt = IwasawaOptions()) {
  Apartment ap = vrd.apartment();
  const RootSystem& rs = vrd.rs();
  if (!C.J.empty()) throw Error("BadInput", "C must be a chamber");

  // Reduce a general chamber to the fundamental one of its sign by
  // conjugating with the standard lift of its word.
  if (!C.word.empty()) {
    GroupElement nw = vrd.identity();
    for (int l : C.word.letters) nw = vrd.mul(nw, vrd.n_of(vrd.u(rs.simple_root(l), Rat(1))).n);
    Apartment::AffineAuto nu_w = vrd.nu_of(nw);
    Facet C0 = ap.cone().canonical(C.sign, WeylWord(), {});
    FixedMark F0 = mark_transform(ap, ap.inverse(nu_w), F);
    IwasawaTriple inner = iwasawa(vrd, vrd.conj(vrd.inv(nw), g), C0, F0, opt);
    IwasawaTriple out;
    // Conjugate factor by factor, letter by letter, so the membership
    // certificates carry over to the transported root groups.
    auto conj_letterwise = [&](const GroupElement& e, bool check_fix) {
      GroupElement r = vrd.identity();
      for (const auto& l : e.word) {
        const auto& rl = std::get<RootLetter>(l);
        auto cl = vrd.recognize_root_letter(vrd.conj(nw, vrd.u(rl.root, rl.param)).mat);
        if (!cl) throw Error("Internal", "chamber conjugation left the root groups");
        if (check_fix && !mark_in_half(ap, F, HalfApartment{cl->root, vrd.phi(*cl)}))
          throw Error("Internal", "conjugated q letter does not fix F");
        r = vrd.mul(r, vrd.u(cl->root, cl->param));
      }
      if (r.mat != vrd.conj(nw, e).mat) throw Error("Internal", "letterwise conjugation drifted");
      return r;
    };
    out.u = conj_letterwise(inner.u, false);
    out.n = vrd.conj(nw, inner.n);
    out.q = conj_letterwise(inner.q, true);
    out.nu_n = vrd.nu_of(out.n);
    out.trace = inner.trace;
    out.trace.push_back("conjugated by the chamber word");
    if (vrd.mul(vrd.mul(out.u, out.n), out.q).mat != g.mat)
      throw Error("Internal", "iwasawa reassembly failed after conjugation");
    return out;
  }

  int eps = C.sign;
  auto positive_for_C = [&](const Root& r) { return eps > 0 ? r.is_positive() : !r.is_positive(); };

  // Pre-pass: rewrite non-simple root letters through their witness words.
  std::vector<Letter> letters;
  std::size_t steps = 0;
  std::function<void(const Letter&)> expand = [&](const Letter& l) {
    if (++steps > opt.budget) throw Error("NonterminatingRewrite", "pre-pass budget");
    if (std::holds_alternative<DiagLetter>(l)) {
      GroupElement d = vrd.diagonal(std::get<DiagLetter>(l).diag);
      if (!vrd.in_torus(d))
        throw Error("UnsupportedLetter", "diagonal letter outside T; pre-rewrite it");
      letters.push_back(l);
      return;
    }
    const auto& rl = std::get<RootLetter>(l);
    if (rl.param.is_zero()) return;
    bool simple = false;
    for (int i = 0; i < rs.rank(); ++i) {
      if (rl.root.coords == rs.simple_root(i).coords ||
          rl.root.coords == RootSystem::negated(rs.simple_root(i).coords))
        simple = true;
    }
    if (simple) {
      letters.push_back(l);
      return;
    }
    // u_b(k) = n_w u_{a_j}(k') n_w^{-1} for b = w(a_j)
    GroupElement nw = vrd.identity();
    for (int wl : rl.root.witness.letters)
      nw = vrd.mul(nw, vrd.n_of(vrd.u(rs.simple_root(wl), Rat(1))).n);
    GroupElement core = vrd.conj(vrd.inv(nw), vrd.u(rl.root, rl.param));
    auto crl = vrd.recognize_root_letter(core.mat);
    if (!crl) throw Error("Internal", "witness conjugation did not land in a root group");
    for (const auto& wl : nw.word) expand(wl);
    letters.push_back(RootLetter{crl->root, crl->param});
    for (const auto& wl : vrd.inv(nw).word) expand(wl);
  };
  for (const auto& l : g.word) expand(l);

  // Main right-to-left sweep keeping the invariant  processed = uMat . n . q.
  IwasawaTriple out;
  MatL uMat = MatL::identity(vrd.dim());
  out.n = vrd.identity();
  out.nu_n = ap.identity_auto();
  out.q = vrd.identity();
  std::vector<RootLetter> qletters;

  auto prepend_q_letter = [&](const RootLetter& l) {
    if (l.param.is_zero()) return;
    if (!mark_in_half(ap, F, HalfApartment{l.root, vrd.phi(l)}))
      throw Error("Internal", "q letter does not fix F");
    qletters.insert(qletters.begin(), l);
    out.q = vrd.mul(vrd.u(l.root, l.param), out.q);
  };
  auto set_n_left = [&](const GroupElement& nl) {
    out.n = vrd.mul(nl, out.n);
    out.nu_n = ap.compose(vrd.nu_of(nl), out.nu_n);
  };
  auto snapshot = [&]() {
    return "  u=" + uMat.str() + " n=" + out.n.mat.str() + " q=" + out.q.mat.str();
  };

  // Processes u_{-eps simple}(c) against the current n.q tail.
  auto dance = [&](const Root& delta, const Rat& b) {
    if (b.is_zero()) return;
    GroupElement w = vrd.u(delta, b);
    GroupElement core = vrd.conj(vrd.inv(out.n), w);
    auto brl = vrd.recognize_root_letter(core.mat);
    if (!brl) throw Error("Internal", "dance conjugation not a root letter");
    Rank1Triple r1 = rank1_decompose(vrd, ap, *brl, F);
    if (r1.trivial) {
      prepend_q_letter(*brl);
      return;
    }
    // n u_{b'}(c') n^{-1} lands back in U_{eps simple}
    GroupElement front = vrd.conj(out.n, r1.u);
    auto frl = vrd.recognize_root_letter(front.mat);
    if (!frl || !positive_for_C(frl->root))
      throw Error("Internal", "dance front factor is not positive");
    auto qrl = vrd.recognize_root_letter(r1.q.mat);
    if (!qrl) throw Error("Internal", "dance q factor is not a root letter");
    uMat = uMat * front.mat;
    prepend_q_letter(*qrl);
    // insert the new monomial between the old n and q: n <- n * n1
    out.n = vrd.mul(out.n, r1.n);
    out.nu_n = ap.compose(out.nu_n, vrd.nu_of(r1.n));
  };

  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    if (++steps > opt.budget) throw Error("NonterminatingRewrite", "iwasawa budget");
    if (std::holds_alternative<DiagLetter>(*it)) {
      GroupElement t = vrd.diagonal(std::get<DiagLetter>(*it).diag);
      uMat = t.mat * uMat * vrd.inv(t).mat;
      set_n_left(t);
      out.trace.push_back("torus letter absorbed into N" + snapshot());
      continue;
    }
    const auto& rl = std::get<RootLetter>(*it);
    if (positive_for_C(rl.root)) {
      uMat = vrd.u(rl.root, rl.param).mat * uMat;
      out.trace.push_back("positive letter " + rl.root.str() + " joined U(C)" + snapshot());
      continue;
    }
    // negative simple letter
    int j = -1;
    for (int i = 0; i < rs.rank(); ++i)
      if (rl.root.coords == RootSystem::negated(rs.simple_root(i).coords) ||
          rl.root.coords == rs.simple_root(i).coords)
        j = i;
    if (j < 0) throw Error("UnsupportedLetter", "letter is not simple after the pre-pass");
    Root pos = rs.simple_root(j);
    if (eps < 0) pos = rs.root_from_coords(RootSystem::negated(pos.coords));
    auto [mM, x] = detail::split_unipotent(vrd, uMat, j, eps);
    GroupElement ell = vrd.u(rl.root, rl.param);
    MatL mPrime = ell.mat * mM * vrd.inv(ell).mat;
    Rat c = rl.param;
    Rat D0 = Rat(1) + c * x;
    if (!D0.is_zero()) {
      Rat a = x / D0, b = c / D0;
      GroupElement tor = vrd.cochar(pos, Rat(1) / D0);
      // sigma = u_pos(a) . tor . u_neg(b); matrix-verify
      GroupElement sigma = vrd.mul(vrd.u(rl.root, c), vrd.u(pos, x));
      GroupElement rebuilt =
          vrd.mul(vrd.mul(vrd.u(pos, a), tor), vrd.u(rl.root, b));
      if (sigma.mat != rebuilt.mat) throw Error("Internal", "rank-1 Bruhat cell mismatch");
      uMat = mPrime * vrd.u(pos, a).mat;
      // push tor through u_neg(b): tor u_neg(b) = u_neg(b~) tor
      GroupElement bt = vrd.conj(tor, vrd.u(rl.root, b));
      auto btl = vrd.recognize_root_letter(bt.mat);
      if (!btl) throw Error("Internal", "torus conjugate is not a root letter");
      set_n_left(tor);
      // now handle u_neg(b~) against n.q; note n currently includes tor
      dance(btl->root, btl->param);
      out.trace.push_back("negative letter " + rl.root.str() + " via Iwasawa branch" + snapshot());
    } else {
      // sigma = u_pos(1/c) . n2
      GroupElement n2 = vrd.n_of(vrd.u(pos, -(Rat(1) / c))).n;
      GroupElement sigma = vrd.mul(vrd.u(rl.root, c), vrd.u(pos, x));
      GroupElement rebuilt = vrd.mul(vrd.u(pos, Rat(1) / c), n2);
      if (sigma.mat != rebuilt.mat) throw Error("Internal", "rank-1 monomial cell mismatch");
      uMat = mPrime * vrd.u(pos, Rat(1) / c).mat;
      set_n_left(n2);
      out.trace.push_back("negative letter " + rl.root.str() + " via Bruhat branch" + snapshot());
    }
  }

  out.u.word.clear();
  out.u.mat = uMat;
  for (const auto& l : detail::factor_unipotent(vrd, uMat, eps, opt.budget))
    out.u.word.push_back(l);
  {
    GroupElement check = vrd.identity();
    for (const auto& l : out.u.word)
      check = vrd.mul(check, vrd.u(std::get<RootLetter>(l).root, std::get<RootLetter>(l).param));
    if (check.mat != uMat) throw Error("Internal", "U(C) factorization mismatch");
  }
  if (vrd.mul(vrd.mul(out.u, out.n), out.q).mat != g.mat)
    throw Error("Internal", "iwasawa reassembly failed");
  return out;
}

// Retraction onto the apartment along (C, F): the image of a under the N
// factor of the decomposition of g.
inline ApartmentPoint retract(const Vrd& vrd, const GroupElement& g, const ApartmentPoint& a,
                              const Facet& C) {
  Apartment ap = vrd.apartment();
  IwasawaTriple t = iwasawa(vrd, g, C, FixedMark(a));
  return ap.apply(t.nu_n, a);
}

// ----- Birkhoff/Bruhat relative to two points -----------------------------------

struct BirkhoffTriple {
  GroupElement q1, n, q2;
};

// g = q1 n q2 with q1 fixing x, q2 fixing y, n monomial.  Exact for the
// finite-type instantiations via valuation-weighted elimination.
inline BirkhoffTriple bruhat_birkhoff(const Vrd& vrd, const GroupElement& g,
                                      const ApartmentPoint& x, const ApartmentPoint& y) {
  Apartment ap = vrd.apartment();
  const TitsCone tc = vrd.cone();
  bool s1 = tc.is_spherical(x.direction), s2 = tc.is_spherical(y.direction);
  if (!s1 && !s2) throw Error("NeitherSpherical", "no spherical point given");
  if (!vrd.finite_type())
    throw Error("Unsupported", "Birkhoff elimination implemented for finite type only");
  if (!tc.is_principal(x.direction) || !tc.is_principal(y.direction))
    throw Error("Unsupported", "points must lie in the principal facade");

  int n = vrd.dim();
  // diagonal coordinates of the two points
  auto diag_coords = [&](const VecR& rep) {
    VecR xs(n);
    if (n == 2) {
      xs[0] = rep[0] / Rat(2);
      xs[1] = -xs[0];
    } else {
      xs[0] = (Rat(2) * rep[0] + rep[1]) / Rat(3);
      xs[1] = xs[0] - rep[0];
      xs[2] = xs[1] - rep[1];
    }
    return xs;
  };
  VecR xv = diag_coords(x.rep), yv = diag_coords(y.rep);

  auto val = [&](const Laurent& l) -> ExtRat {
    if (l.is_zero()) return ExtRat::pos_inf();
    return vrd.omega(l.constant());
  };

  MatL work = g.mat;
  GroupElement q1 = vrd.identity(), q2 = vrd.identity();
  std::vector<bool> rowdone(n, false), coldone(n, false);
  for (int step = 0; step < n; ++step) {
    // pivot minimizing omega(g_ij) + x_i - y_j
    int pi = -1, pj = -1;
    ExtRat best = ExtRat::pos_inf();
    for (int i = 0; i < n; ++i) {
      if (rowdone[i]) continue;
      for (int j = 0; j < n; ++j) {
        if (coldone[j]) continue;
        ExtRat c = val(work(i, j));
        if (!c.is_finite()) continue;
        c = c + ExtRat(xv[i] - yv[j]);
        if (c < best) {
          best = c;
          pi = i;
          pj = j;
        }
      }
    }
    if (pi < 0) throw Error("Internal", "no pivot: matrix is singular");
    // clear column pj with row operations in P(x)
    for (int i = 0; i < n; ++i) {
      if (i == pi || rowdone[i] || work(i, pj).is_zero()) continue;
      Rat lam = -(work(i, pj).constant() / work(pi, pj).constant());
      auto r = vrd.root_at_position(i, pi, 0);
      GroupElement op = vrd.u(*r, lam);
      // legality: omega(lam) >= x_pi - x_i
      if (!(vrd.omega(lam) + ExtRat(xv[i] - xv[pi]) >= ExtRat(Rat(0))))
        throw Error("Internal", "illegal row operation");
      work = op.mat * work;
      q1 = vrd.mul(q1, vrd.u(*r, -lam));  // q1 accumulates the inverses
    }
    // clear row pi with column operations in P(y)
    for (int j = 0; j < n; ++j) {
      if (j == pj || coldone[j] || work(pi, j).is_zero()) continue;
      Rat mu = -(work(pi, j).constant() / work(pi, pj).constant());
      auto r = vrd.root_at_position(pj, j, 0);
      GroupElement op = vrd.u(*r, mu);
      if (!(vrd.omega(mu) + ExtRat(yv[pj] - yv[j]) >= ExtRat(Rat(0))))
        throw Error("Internal", "illegal column operation");
      work = work * op.mat;
      q2 = vrd.mul(vrd.u(*r, -mu), q2);
    }
    rowdone[pi] = true;
    coldone[pj] = true;
  }
  BirkhoffTriple out;
  out.q1 = q1;
  out.q2 = q2;
  out.n = GroupElement{work, {}};
  if (!vrd.is_monomial_matrix(work)) throw Error("Internal", "residue is not monomial");
  if (vrd.mul(vrd.mul(out.q1, out.n), out.q2).mat != g.mat)
    throw Error("Internal", "birkhoff reassembly failed");
  if (fixator_cert_matrix(vrd, ap, x, out.q1.mat) != Mem::In)
    throw Error("Internal", "q1 does not fix the first point");
  if (fixator_cert_matrix(vrd, ap, y, out.q2.mat) != Mem::In)
    throw Error("Internal", "q2 does not fix the second point");
  return out;
}

// ----- uniqueness of the N factor ---------------------------------------------------

// Random word rewrites preserving the element; all resulting N factors must
// lie in one coset n0 N(F).
inline Report verify_n_uniqueness(const Vrd& vrd, const GroupElement& g, const Facet& C,
                                  const ApartmentPoint& F, int trials, std::uint64_t seed = 0) {
  Report rep;
  rep.suite = "n-uniqueness(" + tag_name(vrd.tag()) + ")";
  rep.seed = seed;
  Apartment ap = vrd.apartment();
  Sampler smp(seed ^ 0xabcdef1234567890ULL, vrd);
  auto& it = rep.item("unique-mod-N(F)");

  IwasawaTriple base = iwasawa(vrd, g, C, FixedMark(F));
  for (int s = 0; s < trials; ++s) {
    ++it.samples;
    // rewrite: insert a cancelling pair at a random position, or merge noise
    GroupElement h = vrd.identity();
    std::size_t pos = g.word.empty() ? 0 : smp.u64() % (g.word.size() + 1);
    std::size_t at = 0;
    auto insert_noise = [&]() {
      if (smp.u64() % 2 == 0) {
        Root a = smp.root();
        Rat k = smp.nonzero_param();
        h = vrd.mul(vrd.mul(h, vrd.u(a, k)), vrd.u(a, -k));
      } else {
        GroupElement t = smp.torus_element();
        h = vrd.mul(vrd.mul(h, t), vrd.inv(t));
      }
    };
    for (const auto& l : g.word) {
      if (at++ == pos) insert_noise();
      h = vrd.mul(h, vrd.from_letters({l}));
    }
    if (at <= pos) insert_noise();
    if (h.mat != g.mat) {
      it.failures.push_back("rewrite changed the element");
      continue;
    }
    IwasawaTriple t2 = iwasawa(vrd, h, C, FixedMark(F));
    GroupElement d = vrd.mul(vrd.inv(base.n), t2.n);
    if (!vrd.in_N(d)) {
      it.failures.push_back("n-quotient not monomial");
      continue;
    }
    ApartmentPoint moved = ap.apply(vrd.nu_of(d), F);
    if (!ap.equal(moved, F)) it.failures.push_back("n factors differ by more than N(F)");
  }
  return rep;
}

}  // namespace masure

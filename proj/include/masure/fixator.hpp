#pragma once

// Point-fixator oracles.  For the finite-type instantiations (SL2, SL3) the
// fixator of any apartment point is decided exactly by valuation conditions on
// matrix entries, the classical lattice description; blocks along the facade
// direction carry a determinant shift so facade points work uniformly.  For
// LoopSL2 the oracle is one-sided: certified In/Out where possible, Unknown
// otherwise.

#include "masure/valued_group.hpp"

namespace masure {

namespace detail {

// Root alpha_{ij} = x_i - x_j of SL_n as a Root of the instantiation.
inline std::optional<Root> slroot(const Vrd& vrd, int i, int j) {
  if (vrd.tag() == GroupTag::LoopSL2) return std::nullopt;
  return vrd.root_at_position(i, j, 0);
}

}  // namespace detail

enum class Mem { In, Out, Unknown };

inline std::string mem_name(Mem m) {
  switch (m) {
    case Mem::In: return "In";
    case Mem::Out: return "Out";
    default: return "Unknown";
  }
}

// Exact fixator membership for finite type; Mem::Unknown never returned there.
inline Mem fixator_cert_matrix(const Vrd& vrd, const Apartment& ap, const ApartmentPoint& x,
                                const MatL& mat) {
  if (!vrd.finite_type()) return Mem::Unknown;
  int n = vrd.dim();
  // evaluation of alpha_{ij} at x
  std::vector<std::vector<ExtRat>> e(n, std::vector<ExtRat>(n, ExtRat(Rat(0))));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      e[i][j] = ap.eval_root(*detail::slroot(vrd, i, j), x);
    }
  // block structure: i ~ j iff alpha_{ij}(x) finite
  std::vector<int> block(n, -1);
  int nb = 0;
  for (int i = 0; i < n; ++i) {
    if (block[i] >= 0) continue;
    block[i] = nb;
    for (int j = i + 1; j < n; ++j)
      if (e[i][j].is_finite()) block[j] = nb;
    ++nb;
  }
  // cross-block zeros where the root evaluates to -infinity
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || block[i] == block[j]) continue;
      if (e[i][j].is_neg_inf() && !mat(i, j).is_zero()) return Mem::Out;
    }
  // within each block: omega(g_ij) + alpha_{ij}(x) >= omega(det block)/|block|
  for (int b = 0; b < nb; ++b) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (block[i] == b) idx.push_back(i);
    int k = (int)idx.size();
    Mat<Laurent> sub(k);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) sub(r, c) = mat(idx[r], idx[c]);
    Laurent det = sub.det();
    if (det.is_zero()) return Mem::Out;
    if (!det.is_constant()) return Mem::Out;
    Rat shift = vrd.omega(det.constant()).value() / Rat(k);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) {
        const Laurent& entry = mat(idx[r], idx[c]);
        if (entry.is_zero()) continue;
        if (!entry.is_constant()) return Mem::Out;
        ExtRat w = vrd.omega(entry.constant());
        ExtRat shiftneed = r == c ? ExtRat(Rat(0)) : e[idx[r]][idx[c]];
        if (!(w + shiftneed >= ExtRat(shift))) return Mem::Out;
      }
  }
  return Mem::In;
}

// Fixator membership.  Uses word information when available; for LoopSL2 this
// is where the one-sided answers come from.
inline Mem fixator_cert(const Vrd& vrd, const Apartment& ap, const ApartmentPoint& x,
                         const GroupElement& g) {
  if (vrd.finite_type()) return fixator_cert_matrix(vrd, ap, x, g.mat);
  // LoopSL2.
  if (g.mat == MatL::identity(vrd.dim())) return Mem::In;
  if (vrd.in_N(g)) {
    // N cap Q(x) = N(x): decidable through the apartment action.
    ApartmentPoint y = ap.apply(vrd.nu_of(g), x);
    return ap.equal(x, y) ? Mem::In : Mem::Out;
  }
  if (auto rl = vrd.recognize_root_letter(g.mat)) {
    HalfApartment d{rl->root, vrd.phi(*rl)};
    return ap.contains(d, x) ? Mem::In : Mem::Out;
  }
  // all letters of the word individually fix x
  bool all = !g.word.empty();
  for (const auto& l : g.word) {
    if (std::holds_alternative<RootLetter>(l)) {
      const auto& rl = std::get<RootLetter>(l);
      if (rl.param.is_zero()) continue;
      HalfApartment d{rl.root, vrd.phi(rl)};
      if (!ap.contains(d, x)) {
        all = false;
        break;
      }
    } else {
      GroupElement t = vrd.diagonal(std::get<DiagLetter>(l).diag);
      ApartmentPoint y = ap.apply(vrd.nu_of(t), x);
      if (!ap.equal(x, y)) {
        all = false;
        break;
      }
    }
  }
  if (all) return Mem::In;
  return Mem::Unknown;
}

}  // namespace masure

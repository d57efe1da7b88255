#pragma once

// The bordered apartment A(T): points of all facades, root evaluation with
// values in Q u {+-inf}, half-apartments, facet germs, the affine N-action,
// opposition, and the enclosure-trace saturation of finite point sets.

#include "masure/polyhedra.hpp"
#include "masure/tits_cone.hpp"

namespace masure {

// A point [rep + direction] of the facade with the given direction facet.
// rep holds fundamental-coweight coordinates relative to the base point o.
struct ApartmentPoint {
  Facet direction;
  VecR rep;

  std::string str() const {
    std::string s = "[(";
    for (size_t i = 0; i < rep.size(); ++i) s += (i ? "," : "") + rep[i].str();
    return s + ")+" + direction.str() + "]";
  }
};

struct HalfApartment {
  Root root;
  ExtRat level;  // finite, or +inf meaning all of A

  std::string str() const { return "D(" + root.str() + "," + level.str() + ")"; }
};

// Discrete value set s*Z (s > 0 rational) or all of R.
struct ValueSet {
  bool dense = false;
  Rat step = Rat(1);

  static ValueSet integers() { return ValueSet{false, Rat(1)}; }
  static ValueSet fraction(std::int64_t m) { return ValueSet{false, Rat(1, m)}; }
  static ValueSet reals() { return ValueSet{true, Rat(0)}; }

  // min { lambda in set : lambda >= x }
  Rat min_geq(const Rat& x) const {
    if (dense) return x;
    Rat q = x / step;
    return Rat(q.ceil()) * step;
  }
  bool contains(const Rat& x) const {
    if (dense) return true;
    return (x / step).is_integer();
  }
};

class Apartment {
 public:
  explicit Apartment(TitsCone tc) : tc_(std::move(tc)) {}
  const TitsCone& cone() const { return tc_; }
  const RootSystem& rs() const { return tc_.rs(); }

  ApartmentPoint principal_point(const VecR& rep) const {
    return ApartmentPoint{tc_.principal_facet(), rep};
  }
  ApartmentPoint origin() const { return principal_point(VecR(rs().rank(), Rat(0))); }

  // ----- evaluation -----------------------------------------------------------

  ExtRat eval_root(const Root& a, const ApartmentPoint& x) const {
    int s = tc_.sign_on_root(x.direction, a);
    if (s > 0) return ExtRat::pos_inf();
    if (s < 0) return ExtRat::neg_inf();
    Rat v(0);
    for (int i = 0; i < rs().rank(); ++i) v += Rat(a.coords[i]) * x.rep[i];
    return ExtRat(v);
  }

  bool contains(const HalfApartment& d, const ApartmentPoint& x) const {
    if (d.level.is_pos_inf()) return true;  // D(a, inf) = A
    ExtRat e = eval_root(d.root, x);
    if (e.is_pos_inf()) return true;
    if (e.is_neg_inf()) return false;
    return e.value() + d.level.value() >= Rat(0);
  }

  // ----- point equality and projection ------------------------------------------

  bool equal(const ApartmentPoint& x, const ApartmentPoint& y) const {
    if (x.direction != y.direction) return false;
    return tc_.span_contains(x.direction, x.rep - y.rep);
  }

  ApartmentPoint project(const ApartmentPoint& x, const Facet& g) const {
    if (!tc_.span_contains_span(g, x.direction))
      throw Error("NotProjectable", "facade direction is not inside Vect(target)");
    return ApartmentPoint{g, x.rep};
  }

  ApartmentPoint opposition(const ApartmentPoint& x) const {
    return ApartmentPoint{tc_.opposite(x.direction), x.rep};
  }

  // ----- the affine action of N --------------------------------------------------

  struct AffineAuto {
    WeylWord linear;   // canonical reduced word of the vectorial part
    VecR translation;  // coweight coordinates

    std::string str() const {
      std::string s = "(w=";
      for (size_t i = 0; i < linear.letters.size(); ++i)
        s += (i ? "." : "") + std::string("r") + std::to_string(linear.letters[i]);
      if (linear.empty()) s += "e";
      s += ", t=(";
      for (size_t i = 0; i < translation.size(); ++i) s += (i ? "," : "") + translation[i].str();
      return s + "))";
    }
  };

  AffineAuto identity_auto() const { return AffineAuto{WeylWord(), VecR(rs().rank(), Rat(0))}; }

  // Reflection through the wall M(a, lambda).
  AffineAuto nu_reflection(const Root& a, const Rat& lambda) const {
    AffineAuto m;
    m.linear = rs().reduce_word(rs().reflection_word(a));
    m.translation = (-lambda) * rs().coroot_vec(a);
    return m;
  }
  AffineAuto nu_translation(const VecR& v) const { return AffineAuto{WeylWord(), v}; }

  AffineAuto compose(const AffineAuto& a, const AffineAuto& b) const {
    AffineAuto m;
    m.linear = rs().reduce_word(a.linear * b.linear);
    m.translation = a.translation + rs().apply_word_vec(a.linear, b.translation);
    return m;
  }
  AffineAuto inverse(const AffineAuto& a) const {
    AffineAuto m;
    m.linear = rs().reduce_word(a.linear.inverse());
    m.translation = (Rat(-1)) * rs().apply_word_vec(m.linear, a.translation);
    return m;
  }
  bool auto_equal(const AffineAuto& a, const AffineAuto& b) const {
    return rs().word_matrix_root(a.linear) == rs().word_matrix_root(b.linear) &&
           a.translation == b.translation;
  }

  ApartmentPoint apply(const AffineAuto& m, const ApartmentPoint& x) const {
    ApartmentPoint y;
    y.direction = tc_.act(m.linear, x.direction);
    y.rep = rs().apply_word_vec(m.linear, x.rep) + m.translation;
    return y;
  }

  // Image of D(a, lambda): D(w a, lambda - (w a)(t)).
  HalfApartment transport(const AffineAuto& m, const HalfApartment& d) const {
    Root a2 = rs().root_from_coords(rs().apply_word_root(m.linear, d.root.coords));
    if (d.level.is_pos_inf()) return HalfApartment{a2, d.level};
    Rat shift(0);
    for (int i = 0; i < rs().rank(); ++i) shift += Rat(a2.coords[i]) * m.translation[i];
    return HalfApartment{a2, ExtRat(d.level.value() - shift)};
  }

  // ----- facet germs ---------------------------------------------------------------

  struct FacetGerm {
    ApartmentPoint base;
    Facet direction;  // facet of the tangent complex at base
  };

  FacetGerm germ(const ApartmentPoint& x, const Facet& dir) const {
    if (!tc_.closure_contains(dir, x.direction))
      throw Error("NotTangentFacet", "direction is not a facet of the tangent complex");
    return FacetGerm{x, dir};
  }

  // Does the closed set cut out by the constraints contain a neighborhood of
  // base inside base + direction?
  bool germ_member(const FacetGerm& g, const std::vector<HalfApartment>& constraints) const {
    for (const auto& d : constraints) {
      if (d.level.is_pos_inf()) continue;
      ExtRat e = eval_root(d.root, g.base);
      if (e.is_pos_inf()) continue;
      if (e.is_neg_inf()) return false;
      Rat s = e.value() + d.level.value();
      if (s > Rat(0)) continue;
      if (s < Rat(0)) return false;
      if (tc_.sign_on_root(g.direction, d.root) < 0) return false;
    }
    return true;
  }

  // ----- enclosure trace (saturation of Prop-style operations) ----------------------

  struct EnclosureOptions {
    std::int64_t root_bound = 4;
    std::int64_t word_bound = 3;
    // Displacement grid for non-canonical preimage choices (operation 2);
    // the canonical choice is the zero displacement.
    std::vector<VecR> preimage_offsets;
  };

  struct EnclosureResult {
    std::vector<HalfApartment> constraints;
    bool exact = false;
  };

  EnclosureResult enclosure_trace(const std::vector<ApartmentPoint>& omega, const Facet& target,
                                  const ValueSet& lambda) const {
    return enclosure_trace(omega, target, lambda, EnclosureOptions());
  }

  EnclosureResult enclosure_trace(const std::vector<ApartmentPoint>& omega, const Facet& target,
                                  const ValueSet& lambda, const EnclosureOptions& opt) const {
    if (omega.empty()) throw Error("BadInput", "enclosure of an empty point set");

    bool all_principal = true;
    for (const auto& a : omega)
      if (!tc_.is_principal(a.direction)) all_principal = false;

    auto directions_of = [&](std::int64_t rb) {
      std::vector<Facet> dirs;
      std::set<Facet> seen;
      for (const auto& a : omega)
        if (seen.insert(a.direction).second) dirs.push_back(a.direction);
      return tc_.vector_enclosure(dirs, rb, opt.word_bound).facets;
    };
    std::vector<Facet> D;
    if (all_principal) {
      // Cl({0}) = {0}: the saturation operations are trivial.
      D = {tc_.principal_facet()};
    } else {
      D = directions_of(opt.root_bound);
      std::vector<Facet> D2 = directions_of(opt.root_bound + 1);
      if (std::set<Facet>(D.begin(), D.end()) != std::set<Facet>(D2.begin(), D2.end()))
        throw Error("RootBoundTooSmall", "directional enclosure not closed within bound");
    }

    struct ConeObj {
      ApartmentPoint apex;
      Facet dir;
    };
    std::vector<ApartmentPoint> pts = omega;
    std::vector<ConeObj> cones;

    // Operation 1: saturate points under projection onto facets of D.
    bool grew = true;
    while (grew) {
      grew = false;
      size_t npts = pts.size();
      for (size_t k = 0; k < npts; ++k)
        for (const auto& g : D) {
          if (!tc_.span_contains_span(g, pts[k].direction)) continue;
          ApartmentPoint pr = project(pts[k], g);
          bool known = false;
          for (const auto& q : pts)
            if (equal(q, pr)) {
              known = true;
              break;
            }
          if (!known) {
            pts.push_back(pr);
            grew = true;
          }
        }
    }
    // Operation 2: for each point b in facade g and each facet f of D with
    // f inside Vect(g), choose a preimage in the f-facade (canonically the one
    // with the same representative) and add the cone preimage + g.
    std::vector<VecR> offsets = opt.preimage_offsets;
    offsets.insert(offsets.begin(), VecR(rs().rank(), Rat(0)));
    for (const auto& b : pts)
      for (const auto& f : D) {
        if (f == b.direction) continue;
        if (!tc_.span_contains_span(b.direction, f)) continue;
        for (const auto& off : offsets) {
          ApartmentPoint apex{f, b.rep + off};
          cones.push_back(ConeObj{apex, b.direction});
        }
      }

    // Minimal levels per root over all accumulated objects.
    EnclosureResult out;
    out.exact = true;
    for (const auto& f : D)
      if (!tc_.is_spherical(f)) out.exact = false;
    for (const auto& a : rs().enumerate_real_roots(opt.root_bound)) {
      bool kill = false, have = false;
      Rat need(0);
      auto fold = [&](const ExtRat& e) {
        if (kill) return;
        if (e.is_pos_inf()) return;  // no constraint from this object
        if (e.is_neg_inf()) {
          kill = true;
          return;
        }
        Rat v = -e.value();
        if (!have || v > need) need = v;
        have = true;
      };
      for (const auto& x : pts) fold(eval_root(a, x));
      for (const auto& c : cones) {
        if (tc_.sign_on_root(c.dir, a) < 0) {
          kill = true;
          break;
        }
        fold(eval_root(a, c.apex));
      }
      if (kill || !have) continue;  // level infinity: drop D(a, inf)
      // Keep only constraints meaningful on the target facade: a finite there,
      // or a = -inf there with a finite level (the trace misses the facade).
      if (tc_.sign_on_root(target, a) > 0) continue;
      out.constraints.push_back(HalfApartment{a, ExtRat(lambda.min_geq(need))});
    }
    return out;
  }

  // Trace membership helper: is x inside every constraint?
  bool satisfies(const std::vector<HalfApartment>& cs, const ApartmentPoint& x) const {
    for (const auto& d : cs)
      if (!contains(d, x)) return false;
    return true;
  }

 private:
  TitsCone tc_;
};

}  // namespace masure

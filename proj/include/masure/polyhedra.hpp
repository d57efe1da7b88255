#pragma once

// Tiny exact linear programming over the rationals via Fourier-Motzkin
// elimination.  Dimensions here are the apartment rank (at most 3), so the
// quadratic blowup of elimination is irrelevant.

#include <algorithm>
#include <optional>

#include "masure/rational.hpp"

namespace masure {

// a . x + b >= 0, or > 0 when strict.
struct LinIneq {
  VecR a;
  Rat b;
  bool strict = false;
};

enum class LpStatus { Infeasible, Unbounded, Bounded };

struct LpResult {
  LpStatus status;
  Rat value;  // meaningful for Bounded: sup (or inf) of the objective
};

namespace fm {

inline Rat dot(const VecR& a, const VecR& x) {
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
  return s;
}

// Eliminate variable j.
inline std::vector<LinIneq> eliminate(const std::vector<LinIneq>& cs, size_t j) {
  std::vector<LinIneq> zero, pos, neg;
  for (const auto& c : cs) {
    if (c.a[j].is_zero())
      zero.push_back(c);
    else if (c.a[j].sign() > 0)
      pos.push_back(c);
    else
      neg.push_back(c);
  }
  std::vector<LinIneq> out = zero;
  for (const auto& p : pos)
    for (const auto& n : neg) {
      // p.a[j] > 0, n.a[j] < 0; combine to cancel x_j.
      Rat cp = -n.a[j], cn = p.a[j];
      LinIneq c;
      c.a.resize(p.a.size());
      for (size_t i = 0; i < p.a.size(); ++i) c.a[i] = cp * p.a[i] + cn * n.a[i];
      c.b = cp * p.b + cn * n.b;
      c.strict = p.strict || n.strict;
      out.push_back(c);
    }
  return out;
}

}  // namespace fm

inline bool lp_feasible(std::vector<LinIneq> cs, size_t dim) {
  for (size_t j = 0; j < dim; ++j) cs = fm::eliminate(cs, j);
  for (const auto& c : cs) {
    if (c.strict ? !(c.b > Rat(0)) : !(c.b >= Rat(0))) return false;
  }
  return true;
}

// sup (maximize = true) or inf of obj . x over the polyhedron.
inline LpResult lp_extremum(const std::vector<LinIneq>& cs0, size_t dim, const VecR& obj,
                            bool maximize) {
  // Substitute y = obj . x as an extra first variable, then eliminate x.
  std::vector<LinIneq> cs;
  cs.reserve(cs0.size() + 2);
  for (const auto& c : cs0) {
    LinIneq d;
    d.a.resize(dim + 1);
    d.a[0] = Rat(0);
    for (size_t i = 0; i < dim; ++i) d.a[i + 1] = c.a[i];
    d.b = c.b;
    d.strict = c.strict;
    cs.push_back(d);
  }
  // y - obj.x >= 0 and obj.x - y >= 0 force y = obj.x.
  LinIneq e1, e2;
  e1.a.resize(dim + 1);
  e2.a.resize(dim + 1);
  e1.a[0] = Rat(1);
  e2.a[0] = Rat(-1);
  for (size_t i = 0; i < dim; ++i) {
    e1.a[i + 1] = -obj[i];
    e2.a[i + 1] = obj[i];
  }
  cs.push_back(e1);
  cs.push_back(e2);
  for (size_t j = 1; j <= dim; ++j) cs = fm::eliminate(cs, j);

  // One-variable system in y.
  bool has_upper = false, has_lower = false;
  Rat upper(0), lower(0);
  bool upper_strict = false, lower_strict = false;
  for (const auto& c : cs) {
    if (c.a[0].is_zero()) {
      if (c.strict ? !(c.b > Rat(0)) : !(c.b >= Rat(0))) return {LpStatus::Infeasible, Rat(0)};
      continue;
    }
    Rat bound = -c.b / c.a[0];
    if (c.a[0].sign() > 0) {  // y >= bound
      if (!has_lower || bound > lower || (bound == lower && c.strict)) {
        lower = bound;
        lower_strict = c.strict;
      }
      has_lower = true;
    } else {  // y <= bound
      if (!has_upper || bound < upper || (bound == upper && c.strict)) {
        upper = bound;
        upper_strict = c.strict;
      }
      has_upper = true;
    }
  }
  if (has_lower && has_upper) {
    if (lower > upper || (lower == upper && (lower_strict || upper_strict)))
      return {LpStatus::Infeasible, Rat(0)};
  }
  if (maximize) {
    if (!has_upper) return {LpStatus::Unbounded, Rat(0)};
    return {LpStatus::Bounded, upper};
  }
  if (!has_lower) return {LpStatus::Unbounded, Rat(0)};
  return {LpStatus::Bounded, lower};
}

}  // namespace masure

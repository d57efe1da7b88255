#pragma once

// JSON document formats: root-system descriptors, facets, apartment points,
// half-apartment constraints, group-element words, descent data, and checker
// reports.  All numbers travel as exact "p/q" strings; key order is fixed so
// identical inputs produce byte-identical documents.

#include <json.hpp>

#include "masure/descent.hpp"
#include "masure/tree.hpp"

namespace masure {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rat& r) { return Json(r.str()); }
inline Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  if (j.is_string()) return Rat::parse(j.get<std::string>());
  throw Error("BadInput", "expected an exact rational");
}
inline Json to_json(const ExtRat& e) { return Json(e.str()); }
inline ExtRat extrat_from_json(const Json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "inf") return ExtRat::pos_inf();
    if (s == "-inf") return ExtRat::neg_inf();
  }
  return ExtRat(rat_from_json(j));
}

inline Json to_json(const Root& r) {
  Json a = Json::array();
  for (auto c : r.coords) a.push_back(c);
  return a;
}
inline Root root_from_json(const RootSystem& rs, const Json& j) {
  VecI c;
  for (const auto& x : j) c.push_back(x.get<std::int64_t>());
  return rs.root_from_coords(c);
}

inline Json to_json(const Facet& f) {
  Json j;
  j["sign"] = f.sign > 0 ? "+" : "-";
  j["word"] = f.word.letters;
  j["J"] = f.J;
  return j;
}
inline Facet facet_from_json(const TitsCone& tc, const Json& j) {
  int sign = 1;
  if (j.contains("sign")) sign = j["sign"].get<std::string>() == "-" ? -1 : 1;
  WeylWord w;
  if (j.contains("word"))
    for (const auto& l : j["word"]) w.letters.push_back(l.get<int>());
  std::vector<int> J;
  if (j.contains("J"))
    for (const auto& x : j["J"]) J.push_back(x.get<int>());
  return tc.canonical(sign, w, J);
}

inline Json to_json(const ApartmentPoint& p) {
  Json j;
  j["direction"] = to_json(p.direction);
  Json rep = Json::array();
  for (const auto& x : p.rep) rep.push_back(x.str());
  j["rep"] = rep;
  return j;
}
inline ApartmentPoint point_from_json(const TitsCone& tc, const Json& j) {
  ApartmentPoint p;
  p.direction = j.contains("direction") ? facet_from_json(tc, j["direction"])
                                        : tc.principal_facet();
  if (!j.contains("rep")) throw Error("BadInput", "point needs a rep");
  for (const auto& x : j["rep"]) p.rep.push_back(rat_from_json(x));
  if ((int)p.rep.size() != tc.rs().rank()) throw Error("BadInput", "rep length != rank");
  return p;
}

inline Json to_json(const HalfApartment& d) {
  Json j;
  j["root"] = to_json(d.root);
  j["level"] = d.level.str();
  return j;
}
inline Json to_json(const std::vector<HalfApartment>& cs) {
  Json a = Json::array();
  for (const auto& c : cs) a.push_back(to_json(c));
  return a;
}

inline Json to_json(const Laurent& l) {
  if (l.is_constant()) return Json(l.constant().str());
  Json c;
  for (const auto& [n, x] : l.coeffs()) c[std::to_string(n)] = x.str();
  Json j;
  j["coeffs"] = c;
  return j;
}
inline Laurent laurent_from_json(const Json& j) {
  if (j.is_string() || j.is_number_integer()) return Laurent(rat_from_json(j));
  if (j.is_object() && j.contains("coeffs")) {
    Laurent l;
    for (const auto& [k, v] : j["coeffs"].items())
      l += Laurent::term(rat_from_json(v), std::stoi(k));
    return l;
  }
  throw Error("BadInput", "expected a scalar or Laurent coefficient map");
}

inline Json to_json(const GroupElement& g) {
  Json w = Json::array();
  for (const auto& l : g.word) {
    Json e;
    if (std::holds_alternative<RootLetter>(l)) {
      const auto& rl = std::get<RootLetter>(l);
      e["u"] = Json{{"root", to_json(rl.root)}, {"param", rl.param.str()}};
    } else {
      Json d = Json::array();
      for (const auto& x : std::get<DiagLetter>(l).diag) d.push_back(to_json(x));
      e["t"] = Json{{"diag", d}};
    }
    w.push_back(e);
  }
  Json j;
  j["word"] = w;
  j["matrix"] = g.mat.str();
  return j;
}
inline GroupElement element_from_json(const Vrd& vrd, const Json& j) {
  const Json& letters = j.is_array() ? j : j.at("word");
  GroupElement g = vrd.identity();
  for (const auto& e : letters) {
    if (e.contains("u")) {
      Root r = root_from_json(vrd.rs(), e["u"].at("root"));
      g = vrd.mul(g, vrd.u(r, rat_from_json(e["u"].at("param"))));
    } else if (e.contains("t")) {
      std::vector<Laurent> d;
      for (const auto& x : e["t"].at("diag")) d.push_back(laurent_from_json(x));
      g = vrd.mul(g, vrd.diagonal(d));
    } else {
      throw Error("BadInput", "letter must be {\"u\": ...} or {\"t\": ...}");
    }
  }
  return g;
}

inline Json to_json(const Report& r) {
  Json items = Json::array();
  for (const auto& it : r.items) {
    Json i;
    i["condition"] = it.condition;
    i["samples"] = it.samples;
    i["skipped"] = it.skipped;
    i["failures"] = it.failures;
    items.push_back(i);
  }
  Json j;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["ok"] = r.ok();
  j["items"] = items;
  return j;
}

inline RootSystem root_system_from_json(const Json& j) {
  if (!j.contains("cartan")) throw Error("BadInput", "document needs a cartan matrix");
  std::vector<VecI> rows;
  for (const auto& row : j["cartan"]) {
    VecI r;
    for (const auto& x : row) r.push_back(x.get<std::int64_t>());
    rows.push_back(r);
  }
  return RootSystem::build(rows);
}

inline GroupTag tag_from_string(const std::string& s) {
  if (s == "sl2" || s == "SL2") return GroupTag::SL2;
  if (s == "sl3" || s == "SL3") return GroupTag::SL3;
  if (s == "loop-sl2" || s == "LoopSL2") return GroupTag::LoopSL2;
  throw Error("BadInput", "unknown group tag " + s);
}

inline DescentData descent_from_json(const Json& j) {
  RootSystem rs = root_system_from_json(j);
  std::vector<DescentGenerator> gens;
  if (j.contains("generators"))
    for (const auto& g : j["generators"]) {
      DescentGenerator dg;
      for (const auto& x : g.at("perm")) dg.perm.push_back(x.get<int>());
      dg.omega.assign(rs.rank(), Rat(0));
      if (g.contains("omega"))
        for (const auto& [k, v] : g["omega"].items()) dg.omega[std::stoi(k)] = rat_from_json(v);
      gens.push_back(dg);
    }
  return DescentData(rs, gens);
}

}  // namespace masure

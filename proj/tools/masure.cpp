// Batch command-line surface over the library: root enumeration, facet
// calculus, enclosures, decompositions, axiom suites, hovel point equality,
// combinatorial descent, and tree export.  All numeric I/O is exact; runs are
// reproducible from (inputs, seed, bounds).

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "masure/io.hpp"

using namespace masure;

namespace {

constexpr const char* kVersion = "masure 0.1.0";

int exit_pass() { return 0; }
int exit_fail() { return 1; }
int exit_input() { return 2; }
int exit_unknown() { return 3; }

Json load_doc(const std::string& inline_doc, const std::string& path) {
  if (!inline_doc.empty()) return Json::parse(inline_doc);
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw Error("BadInput", "cannot open " + path);
    Json j;
    in >> j;
    return j;
  }
  throw Error("BadInput", "no input document given");
}

void emit(const Json& doc, const std::string& out) {
  if (out.empty()) {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream os(out);
  os << doc.dump(2) << "\n";
}

Json header(const std::string& command, std::uint64_t seed, Json config = Json::object()) {
  Json j;
  j["tool"] = kVersion;
  j["command"] = command;
  j["seed"] = seed;
  j["config"] = std::move(config);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hovel computations for groups with valued root data"};
  app.set_version_flag("--version", kVersion);
  app.fallthrough();

  std::string doc_inline, doc_path, out_path;
  std::uint64_t seed = 0;
  app.add_option("--out", out_path, "write the report to this file");
  app.add_option("--seed", seed, "seed for sampled checks");

  // ---- roots -------------------------------------------------------------
  auto* roots = app.add_subcommand("roots", "enumerate real roots, intervals, prenilpotence");
  std::int64_t height_bound = 3, search_bound = 6;
  std::string interval_arg;
  roots->add_option("--doc", doc_inline, "inline JSON {\"cartan\": [[...]]}");
  roots->add_option("--input", doc_path, "path to the descriptor document");
  roots->add_option("--height-bound", height_bound, "height bound for enumeration");
  roots->add_option("--search-bound", search_bound, "p+q bound for intervals");
  roots->add_option("--interval", interval_arg,
                    "two roots as JSON, e.g. [[1,0],[0,1]]; adds interval data");

  // ---- facet -------------------------------------------------------------
  auto* facet = app.add_subcommand("facet", "canonicalize, star, project facets");
  std::string facet_arg, facet2_arg;
  std::int64_t root_bound = 4;
  bool want_star = false;
  facet->add_option("--doc", doc_inline, "inline JSON {\"cartan\": [[...]]}");
  facet->add_option("--input", doc_path, "path to the descriptor document");
  facet->add_option("--facet", facet_arg, "facet JSON {\"sign\",\"word\",\"J\"}");
  facet->add_option("--project-onto", facet2_arg, "spherical facet to project --facet onto");
  facet->add_option("--root-bound", root_bound, "root height bound");
  facet->add_flag("--star", want_star, "list the star of the facet");

  // ---- enclose -----------------------------------------------------------
  auto* enclose = app.add_subcommand("enclose", "enclosure trace of a finite point set");
  enclose->add_option("--doc", doc_inline, "inline document");
  enclose->add_option("--input", doc_path, "document path");

  // ---- decompose -----------------------------------------------------------
  auto* dec = app.add_subcommand("decompose", "Iwasawa / Birkhoff decompositions");
  std::string group_arg = "sl2", mode = "iwasawa", elem_arg, chamber_arg, point_arg, point2_arg;
  std::int64_t prime = 2;
  dec->add_option("--group", group_arg, "sl2 | sl3 | loop-sl2");
  dec->add_option("-p,--prime", prime, "residue prime");
  dec->add_option("--mode", mode, "iwasawa | bruhat");
  dec->add_option("--element", elem_arg, "group element letters (JSON array)")->required();
  dec->add_option("--chamber", chamber_arg, "chamber facet JSON (default fundamental)");
  dec->add_option("--point", point_arg, "apartment point JSON (default o)");
  dec->add_option("--point2", point2_arg, "second point for bruhat");

  // ---- check-axioms -----------------------------------------------------------
  auto* chk = app.add_subcommand("check-axioms", "run sampled axiom suites");
  std::string suite = "valuation", family_arg = "minimal", which_arg = "inj,sph,2.1,dec";
  int samples = 200;
  chk->add_option("--group", group_arg, "sl2 | sl3 | loop-sl2");
  chk->add_option("-p,--prime", prime, "residue prime");
  chk->add_option("--suite", suite, "valuation | root-datum | para");
  chk->add_option("--family", family_arg, "minimal | maximal (para suite)");
  chk->add_option("--which", which_arg, "para conditions, comma separated");
  chk->add_option("--samples", samples, "samples per axiom");

  // ---- hovel-eq -----------------------------------------------------------
  auto* heq = app.add_subcommand("hovel-eq", "decide equality of two hovel points");
  std::string g1_arg, a1_arg, g2_arg, a2_arg;
  heq->add_option("--group", group_arg, "sl2 | sl3 | loop-sl2");
  heq->add_option("-p,--prime", prime, "residue prime");
  heq->add_option("--g1", g1_arg, "first group element letters")->required();
  heq->add_option("--a1", a1_arg, "first apartment point");
  heq->add_option("--g2", g2_arg, "second group element letters")->required();
  heq->add_option("--a2", a2_arg, "second apartment point");

  // ---- descend -----------------------------------------------------------
  auto* des = app.add_subcommand("descend", "validate descent data and restrict roots");
  des->add_option("--doc", doc_inline, "inline descent document");
  des->add_option("--input", doc_path, "descent document path");
  des->add_option("--root-bound", root_bound, "root height bound");

  // ---- export-tree -----------------------------------------------------------
  auto* tree = app.add_subcommand("export-tree", "DOT graph of a ball in the SL2 tree");
  std::int64_t radius = 2;
  tree->add_option("-p,--prime", prime, "residue prime");
  tree->add_option("--radius", radius, "ball radius (<= 6)");

  app.require_subcommand(1);
  CLI11_PARSE(app, argc, argv);

  try {
    if (*roots) {
      RootSystem rs = root_system_from_json(load_doc(doc_inline, doc_path));
      Json out = header("roots", seed,
                          Json{{"height_bound", height_bound}, {"search_bound", search_bound}});
      out["rank"] = rs.rank();
      Json symm = Json::array();
      for (const auto& e : rs.symmetrizer()) symm.push_back(e.str());
      out["symmetrizer"] = symm;
      Json list = Json::array();
      for (const auto& r : rs.enumerate_real_roots(height_bound)) list.push_back(to_json(r));
      out["roots"] = list;
      if (!interval_arg.empty()) {
        Json iv = Json::parse(interval_arg);
        Root a = root_from_json(rs, iv.at(0)), b = root_from_json(rs, iv.at(1));
        auto res = rs.interval(a, b, search_bound);
        Json ivj;
        Json mem = Json::array();
        for (const auto& r : res.roots) mem.push_back(to_json(r));
        ivj["members"] = mem;
        ivj["flag"] = res.flag == Finiteness::Finite
                          ? "Finite"
                          : (res.flag == Finiteness::Infinite ? "Infinite" : "Unknown");
        Cert pre = rs.is_prenilpotent(a, b, search_bound);
        ivj["prenilpotent"] = pre == Cert::Yes ? "Yes" : (pre == Cert::No ? "No" : "Unknown");
        out["interval"] = ivj;
        emit(out, out_path);
        return pre == Cert::Unknown ? exit_unknown() : exit_pass();
      }
      emit(out, out_path);
      return exit_pass();
    }

    if (*facet) {
      RootSystem rs = root_system_from_json(load_doc(doc_inline, doc_path));
      TitsCone tc(rs);
      Json out = header("facet", seed, Json{{"root_bound", root_bound}});
      Facet f = facet_arg.empty() ? tc.fundamental_chamber()
                                  : facet_from_json(tc, Json::parse(facet_arg));
      out["canonical"] = to_json(f);
      out["spherical"] = tc.is_spherical(f);
      out["opposite"] = to_json(tc.opposite(f));
      if (want_star) {
        Json st = Json::array();
        for (const auto& h : tc.star(f)) st.push_back(to_json(h));
        out["star"] = st;
      }
      if (!facet2_arg.empty()) {
        Facet g = facet_from_json(tc, Json::parse(facet2_arg));
        out["projection"] = to_json(tc.project(f, g, root_bound));
      }
      emit(out, out_path);
      return exit_pass();
    }

    if (*enclose) {
      Json docj = load_doc(doc_inline, doc_path);
      RootSystem rs = root_system_from_json(docj);
      TitsCone tc(rs);
      Apartment ap{TitsCone(rs)};
      std::vector<ApartmentPoint> pts;
      for (const auto& pj : docj.at("points")) pts.push_back(point_from_json(tc, pj));
      Facet target = docj.contains("target") ? facet_from_json(tc, docj["target"])
                                             : tc.principal_facet();
      ValueSet vs = ValueSet::integers();
      if (docj.contains("lambda_step")) vs = ValueSet{false, rat_from_json(docj["lambda_step"])};
      Apartment::EnclosureOptions opt;
      if (docj.contains("root_bound")) opt.root_bound = docj["root_bound"].get<std::int64_t>();
      auto res = ap.enclosure_trace(pts, target, vs, opt);
      Json out = header("enclose", seed, Json{{"root_bound", opt.root_bound}});
      out["constraints"] = to_json(res.constraints);
      out["exact"] = res.exact;
      emit(out, out_path);
      return exit_pass();
    }

    if (*dec) {
      Vrd vrd = Vrd::instantiate(tag_from_string(group_arg), prime);
      TitsCone tc = vrd.cone();
      Apartment ap = vrd.apartment();
      GroupElement g = element_from_json(vrd, Json::parse(elem_arg));
      ApartmentPoint F = point_arg.empty() ? ap.origin()
                                           : point_from_json(tc, Json::parse(point_arg));
      Json out = header("decompose", seed,
                          Json{{"group", group_arg}, {"prime", prime}});
      out["mode"] = mode;
      if (mode == "iwasawa") {
        Facet C = chamber_arg.empty() ? tc.fundamental_chamber()
                                      : facet_from_json(tc, Json::parse(chamber_arg));
        IwasawaTriple t = iwasawa(vrd, g, C, FixedMark(F));
        out["u"] = to_json(t.u);
        out["n"] = to_json(t.n);
        out["q"] = to_json(t.q);
        out["certificate"] = t.trace;
        emit(out, out_path);
        return exit_pass();
      }
      if (mode == "bruhat") {
        ApartmentPoint F2 = point2_arg.empty() ? ap.origin()
                                               : point_from_json(tc, Json::parse(point2_arg));
        BirkhoffTriple t = bruhat_birkhoff(vrd, g, F, F2);
        out["q1"] = to_json(t.q1);
        out["n"] = to_json(t.n);
        out["q2"] = to_json(t.q2);
        emit(out, out_path);
        return exit_pass();
      }
      throw Error("BadInput", "unknown mode " + mode);
    }

    if (*chk) {
      Vrd vrd = Vrd::instantiate(tag_from_string(group_arg), prime);
      Report rep;
      if (suite == "valuation") {
        rep = check_valuation_axioms(vrd, samples, seed);
      } else if (suite == "root-datum") {
        rep = check_root_datum_axioms(vrd, samples, seed);
      } else if (suite == "para") {
        std::vector<std::string> which;
        std::string cur;
        for (char c : which_arg + ",") {
          if (c == ',') {
            if (!cur.empty()) which.push_back(cur);
            cur.clear();
          } else {
            cur += c;
          }
        }
        ParahoricFamily fam = family_arg == "maximal" ? ParahoricFamily::maximal()
                                                      : ParahoricFamily::minimal();
        ParaOptions opt;
        opt.samples = samples;
        opt.seed = seed;
        rep = check_para_axioms(vrd, fam, which, opt);
      } else {
        throw Error("BadInput", "unknown suite " + suite);
      }
      Json out = header("check-axioms", seed,
                          Json{{"group", group_arg}, {"prime", prime}, {"suite", suite},
                               {"family", family_arg}, {"which", which_arg},
                               {"samples", samples}});
      out["report"] = to_json(rep);
      emit(out, out_path);
      if (!rep.ok()) return exit_fail();
      int total = 0, skipped = 0;
      for (const auto& it : rep.items) {
        total += it.samples;
        skipped += it.skipped;
      }
      if (skipped > total) return exit_unknown();  // budgets dominated by Unknowns
      return exit_pass();
    }

    if (*heq) {
      Vrd vrd = Vrd::instantiate(tag_from_string(group_arg), prime);
      TitsCone tc = vrd.cone();
      Apartment ap = vrd.apartment();
      HovelPoint x{element_from_json(vrd, Json::parse(g1_arg)),
                   a1_arg.empty() ? ap.origin() : point_from_json(tc, Json::parse(a1_arg))};
      HovelPoint y{element_from_json(vrd, Json::parse(g2_arg)),
                   a2_arg.empty() ? ap.origin() : point_from_json(tc, Json::parse(a2_arg))};
      Eq e = hovel_equal(vrd, ParahoricFamily::minimal(), x, y);
      Json out = header("hovel-eq", seed, Json{{"group", group_arg}, {"prime", prime}});
      out["result"] = e == Eq::Equal ? "Equal" : (e == Eq::NotEqual ? "NotEqual" : "Unknown");
      emit(out, out_path);
      return e == Eq::Unknown ? exit_unknown() : exit_pass();
    }

    if (*des) {
      DescentData dd = descent_from_json(load_doc(doc_inline, doc_path));
      Report rep = dd.validate(root_bound);
      Json out = header("descend", seed, Json{{"root_bound", root_bound}});
      out["validation"] = to_json(rep);
      if (rep.ok()) {
        auto rrs = dd.restrict_roots(root_bound);
        Json roots_j = Json::array();
        for (const auto& r : rrs.roots) {
          Json rj;
          Json form = Json::array();
          for (const auto& v : r.form) form.push_back(v.str());
          rj["form"] = form;
          rj["multiplicity"] = (int)r.sources.size();
          rj["doubled"] = r.doubled;
          roots_j.push_back(rj);
        }
        out["restricted_roots"] = roots_j;
        out["non_reduced"] = rrs.non_reduced;
        out["conditions"] = to_json(dd.check_descent_conditions({"DSR", "DV2"}, root_bound));
      }
      emit(out, out_path);
      return rep.ok() ? exit_pass() : exit_fail();
    }

    if (*tree) {
      TreeModel tm(prime);
      std::string dot = tm.export_tree(radius);
      if (out_path.empty()) {
        std::cout << dot;
      } else {
        std::ofstream os(out_path);
        os << dot;
      }
      return exit_pass();
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.code == "RadiusTooLarge" || e.code == "BadInput" || e.code == "BadPrime" ||
        e.code == "NotGCM" || e.code == "NotSymmetrizable" || e.code == "BadRational")
      return exit_input();
    if (e.code == "NonterminatingRewrite" || e.code == "Unsupported") return exit_unknown();
    return exit_fail();
  } catch (const Json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return exit_input();
  }
  return exit_input();
}

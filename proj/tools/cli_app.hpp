#pragma once

// Command-line front end. One subcommand per run; every report is a pure
// function of the inputs and the seed, so identical invocations print
// identical bytes.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "subord/correspondence.hpp"
#include "subord/json_io.hpp"
#include "subord/logic.hpp"

namespace subord::cli {

struct RunConfig {
  int max_atoms = kMaxAtoms;
  int max_points = 8;
  int k = 6;                  // exception bound for symbolic sweeps
  std::uint64_t seed = 1;
  std::string format = "text";  // text | json
};

/// Which subcommand exercises which library operation; the test suite keeps
/// this table total over the public operation set.
inline std::vector<std::pair<std::string, std::string>> operation_coverage() {
  return {
      {"powerset_algebra", "check"},
      {"filter_ideal_check", "check"},
      {"generated_boolean_subalgebra", "check"},
      {"check_boolean_morphism", "check"},
      {"check_axioms", "check"},
      {"from_operator", "check"},
      {"to_multi_operator", "check"},
      {"check_morphism", "check"},
      {"is_congruence", "check"},
      {"is_subalgebra", "check"},
      {"tense_check", "check"},
      {"congruence_lattice", "quotient"},
      {"quotient", "quotient"},
      {"isomorphism_theorems", "quotient"},
      {"product", "product"},
      {"canonical_product_map", "product"},
      {"ult", "dualize"},
      {"of", "dualize"},
      {"discrete_duals", "dualize"},
      {"dual_morphism", "dualize"},
      {"canonical_extension", "dualize"},
      {"factor_through_delta", "dualize"},
      {"sigma_pi_extension", "dualize"},
      {"modalize", "modalize"},
      {"parse", "validate"},
      {"eval", "validate"},
      {"validity", "validate"},
      {"scheme_validity", "validate"},
      {"classify", "validate"},
      {"set_ops", "validate"},
      {"rel_images", "validate"},
      {"eval_formula", "validate"},
      {"subordination_holds", "examples"},
      {"nonprincipal_witness", "examples"},
      {"congruence_check", "examples"},
      {"sigma_pi_symbolic", "examples"},
      {"eval_frame_condition", "correspond"},
      {"eval_sub_condition", "correspond"},
      {"builtin_library", "correspond"},
      {"correspondent_klmn", "correspond"},
      {"translate_leq", "correspond"},
      {"translate_geq", "correspond"},
      {"translate_g_closed", "correspond"},
      {"check_equivalence", "correspond"},
  };
}

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  Json j;
  in >> j;
  return j;
}

inline std::string elem_str(const Algebra& a, Elem e) { return elem_to_json(a, e).dump(); }

inline std::string witness_str(const Algebra& a, const std::vector<Elem>& w) {
  std::string out = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ", ";
    out += elem_str(a, w[i]);
  }
  return out + ")";
}

inline MorphismKind kind_from_string(const std::string& s) {
  if (s == "weak") return MorphismKind::weak;
  if (s == "white") return MorphismKind::white;
  if (s == "black") return MorphismKind::black;
  if (s == "strong") return MorphismKind::strong;
  throw std::invalid_argument("unknown kind: " + s);
}

inline CongruenceKind congruence_kind_from_string(const std::string& s) {
  if (s == "white") return CongruenceKind::white;
  if (s == "black") return CongruenceKind::black;
  if (s == "strong") return CongruenceKind::strong;
  throw std::invalid_argument("unknown congruence kind: " + s);
}

inline BooleanMorphism morphism_from_json(const Json& j, const Algebra& src, const Algebra& dst) {
  BooleanMorphism f{src, dst, std::vector<Elem>(src.size(), 0)};
  const Json& m = j.at("map");
  if (m.size() != src.size()) throw std::invalid_argument("map: must list every source element");
  std::vector<bool> seen(src.size(), false);
  for (const Json& pair : m) {
    Elem from = elem_from_json(src, pair.at(0));
    if (seen[from]) throw std::invalid_argument("map: source element repeated");
    seen[from] = true;
    f.map[from] = elem_from_json(dst, pair.at(1));
  }
  return f;
}

struct Reporter {
  std::ostream& out;
  bool json;
  Json doc = Json::object();

  void line(const std::string& key, const std::string& text) {
    if (json)
      doc[key] = text;
    else
      out << key << ": " << text << "\n";
  }
  void item(const std::string& key, const Json& value) {
    if (json)
      doc[key] = value;
    else
      out << key << ": " << value.dump() << "\n";
  }
  void flush(bool pass) {
    if (json) {
      doc["result"] = pass ? "pass" : "fail";
      out << doc.dump(2) << "\n";
    } else {
      out << "result: " << (pass ? "pass" : "fail") << "\n";
    }
  }
};

// ---------------------------------------------------------------------------
// check

inline int cmd_check(const RunConfig& cfg, const std::string& input,
                     const std::string& axioms_list, const std::string& kind_str, bool multi,
                     std::ostream& out) {
  Json j = load_json(input);
  Reporter rep{out, cfg.format == "json"};
  bool pass = true;

  if (j.contains("algebra") && j.at("algebra").is_object() &&
      j.at("algebra").value("atoms", 0) > cfg.max_atoms)
    throw std::invalid_argument("input exceeds --max-atoms");

  if (j.contains("relation") && j.contains("equivalence")) {
    RelationSpec rel = relation_from_json(j.at("relation"));
    EquivSpec eq = equiv_from_json(j.at("equivalence"));
    EquivCongruenceReport r = congruence_check(rel, eq);
    if (!r.well_formed) {
      rep.line("partition", "ill-formed (" + r.problem + ")");
      rep.flush(false);
      return 1;
    }
    rep.line("classes closed", r.classes_closed ? "ok" : "FAIL");
    rep.line("separation", r.separation ? "ok" : "FAIL");
    if (r.zigzag) {
      rep.line("transfer condition", "ok up to " + std::to_string(r.bound) + " plus the limit point");
    } else {
      rep.line("transfer condition",
               "FAIL at (" + to_string(r.violation[0]) + ", " + to_string(r.violation[1]) + ", " +
                   to_string(r.violation[2]) + ")");
    }
    pass = r.classes_closed && r.separation && r.zigzag;
    rep.flush(pass);
    return pass ? 0 : 1;
  }

  if (j.contains("frame") && j.contains("backward_frame")) {
    KripkeFrame fwd = frame_from_json(j.at("frame"));
    KripkeFrame bwd = frame_from_json(j.at("backward_frame"));
    TenseReport t = tense_check(fwd, bwd);
    rep.line("tense K_dia", t.k_dia ? "ok" : "FAIL");
    rep.line("tense K_bdia", t.k_bdia ? "ok" : "FAIL");
    rep.line("tense T1", t.t1 ? "ok" : "FAIL");
    rep.line("tense T2", t.t2 ? "ok" : "FAIL");
    pass = t.tense();
    rep.flush(pass);
    return pass ? 0 : 1;
  }

  if (j.contains("dia") && j.contains("bdia")) {
    Algebra a = algebra_from_json(j.at("algebra"));
    std::vector<Elem> dia, bdia;
    for (const Json& v : j.at("dia")) dia.push_back(elem_from_json(a, v));
    for (const Json& v : j.at("bdia")) bdia.push_back(elem_from_json(a, v));
    TenseReport t = tense_check(a, dia, bdia);
    rep.line("tense axioms", t.tense() ? "ok" : "FAIL");
    rep.flush(t.tense());
    return t.tense() ? 0 : 1;
  }

  if (j.contains("set") && j.contains("tag")) {
    Algebra a = algebra_from_json(j.at("algebra"));
    std::vector<Elem> members;
    for (const Json& v : j.at("set")) members.push_back(elem_from_json(a, v));
    SetTag tag = j.at("tag").get<std::string>() == "filter" ? SetTag::filter : SetTag::ideal;
    FilterIdealReport r = filter_ideal_check(a, ElementSet{a, tag, members}, tag);
    rep.line("closure", r.ok ? "ok" : "FAIL (" + r.reason + ")");
    if (r.ok) {
      rep.item("generator", elem_to_json(a, r.generator));
      rep.line("principal", r.principal ? "yes" : "no");
    }
    rep.flush(r.ok);
    return r.ok ? 0 : 1;
  }

  if (j.contains("map")) {
    SubordinationAlgebra src = subordination_from_json(j.at("source"));
    SubordinationAlgebra dst = subordination_from_json(j.at("target"));
    BooleanMorphism f = morphism_from_json(j, src.algebra, dst.algebra);
    MorphismKind kind = kind_from_string(kind_str);
    SubMorphismReport r = check_morphism(f, src, dst);
    rep.line("boolean laws", r.boolean_laws.ok ? "ok" : "FAIL (" + r.boolean_laws.violated_law + ")");
    rep.line("axiom w", r.w.holds ? "ok" : "FAIL witness=" + witness_str(src.algebra, r.w.witness));
    rep.line("axiom dia", r.dia.holds ? "ok" : "FAIL witness=" + witness_str(src.algebra, r.dia.witness));
    rep.line("axiom bdia",
             r.bdia.holds ? "ok" : "FAIL witness=" + witness_str(src.algebra, r.bdia.witness));
    pass = r.satisfies(kind);
    rep.line("kind " + std::string(kind_name(kind)), pass ? "ok" : "FAIL");
    rep.flush(pass);
    return pass ? 0 : 1;
  }

  if (j.contains("partition")) {
    SubordinationAlgebra s = subordination_from_json(j.at("structure"));
    ElemPartition p = partition_from_json(s.algebra, j.at("partition"));
    CongruenceKind kind = congruence_kind_from_string(kind_str == "weak" ? "white" : kind_str);
    CongruenceReport r = is_congruence(s, p);
    if (!r.boolean_ok) {
      rep.line("boolean congruence", "FAIL (" + r.boolean_reason + ")");
      rep.flush(false);
      return 1;
    }
    rep.line("boolean congruence", "ok");
    auto colour_line = [&](const char* name, const ColourConditions& c) {
      rep.line(std::string(name) + " kernel", c.kernel.holds ? "ok" : "FAIL");
      rep.line(std::string(name) + " zigzag", c.zigzag.holds ? "ok" : "FAIL");
      rep.line(std::string(name) + " round ideal", c.round_ideal.holds ? "ok" : "FAIL");
      rep.line(std::string(name) + " filter side", c.filter_side.holds ? "ok" : "FAIL");
    };
    colour_line("white", r.white);
    colour_line("black", r.black);
    pass = r.holds(kind);
    rep.line("congruence " + std::string(kind_name(kind)), pass ? "ok" : "FAIL");
    rep.flush(pass);
    return pass ? 0 : 1;
  }

  if (j.contains("subset") || j.contains("generators")) {
    SubordinationAlgebra s = subordination_from_json(j.at("structure"));
    std::vector<Elem> subset;
    if (j.contains("generators")) {
      std::vector<Elem> gens;
      for (const Json& v : j.at("generators")) gens.push_back(elem_from_json(s.algebra, v));
      subset = generated_boolean_subalgebra(s.algebra, gens);
      Json js = Json::array();
      for (Elem e : subset) js.push_back(elem_to_json(s.algebra, e));
      rep.item("generated subalgebra", js);
    } else {
      for (const Json& v : j.at("subset")) subset.push_back(elem_from_json(s.algebra, v));
    }
    MorphismKind kind = kind_from_string(kind_str);
    SubalgebraReport r = is_subalgebra(s, subset);
    if (!r.boolean_ok) {
      rep.line("boolean subalgebra", "FAIL (" + r.boolean_reason + ")");
      rep.flush(false);
      return 1;
    }
    rep.line("boolean subalgebra", "ok");
    rep.line("forward interpolation",
             r.white.holds ? "ok" : "FAIL witness=" + witness_str(s.algebra, r.white.witness));
    rep.line("backward interpolation",
             r.black.holds ? "ok" : "FAIL witness=" + witness_str(s.algebra, r.black.witness));
    rep.line("inclusion cross-check",
             (r.white.holds == r.inclusion_white && r.black.holds == r.inclusion_black) ? "agrees"
                                                                                        : "DISAGREES");
    pass = r.holds(kind);
    rep.line("subalgebra " + std::string(kind_name(kind)), pass ? "ok" : "FAIL");
    rep.flush(pass);
    return pass ? 0 : 1;
  }

  // plain structure: operator induction and axiom check
  SubordinationAlgebra s = j.contains("operator")
                               ? [&] {
                                   Algebra a = algebra_from_json(j.at("algebra"));
                                   std::vector<Elem> op;
                                   for (const Json& v : j.at("operator")) op.push_back(elem_from_json(a, v));
                                   OperatorColour colour = j.value("colour", "white") == std::string("black")
                                                               ? OperatorColour::black
                                                               : OperatorColour::white;
                                   return from_operator(a, op, colour);
                                 }()
                               : subordination_from_json(j);
  std::vector<Axiom> which = all_axioms();
  if (!axioms_list.empty()) {
    which.clear();
    std::string item;
    std::istringstream in(axioms_list);
    while (std::getline(in, item, ',')) {
      auto ax = axiom_from_name(item);
      if (!ax) throw std::invalid_argument("unknown axiom: " + item);
      which.push_back(*ax);
    }
  }
  AxiomReport r = check_axioms(s, which);
  for (auto& v : r.verdicts) {
    std::string text = v.holds ? "ok" : "FAIL witness=" + witness_str(s.algebra, v.witness);
    if (!v.note.empty()) text += " (" + v.note + ")";
    rep.line(std::string("axiom ") + axiom_name(v.axiom), text);
  }
  pass = r.all_hold();
  if (multi) {
    MultiOperatorReport m = verify_multi_operator(s);
    rep.line("multi-operator zero row", m.zero_is_everything ? "ok" : "FAIL");
    rep.line("multi-operator meet law",
             m.meet_law ? "ok" : "FAIL witness=" + witness_str(s.algebra, m.witness));
    for (Elem a = 0; a < s.algebra.size() && a < 4; ++a) {
      ElementSet row = to_multi_operator(s, a);
      Json jrow = Json::array();
      for (Elem e : row.members) jrow.push_back(elem_to_json(s.algebra, e));
      rep.item("row " + elem_str(s.algebra, a), jrow);
    }
    pass = pass && m.ok();
  }
  rep.flush(pass);
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// dualize

inline int cmd_dualize(const RunConfig& cfg, const std::string& input, std::string op,
                       const std::string& set_json, std::ostream& out) {
  Json j = load_json(input);
  Reporter rep{out, cfg.format == "json"};

  bool is_frame = j.contains("points");
  if (op.empty()) op = is_frame ? "of" : "ult";

  if (op == "morphism") {
    if (j.contains("points") || j.at("source").contains("points")) {
      KripkeFrame src = frame_from_json(j.at("source"));
      KripkeFrame dst = frame_from_json(j.at("target"));
      std::vector<int> h;
      for (const Json& v : j.at("map")) h.push_back(dst.point_index(v.get<std::string>()));
      MorphismKind kind = kind_from_string(j.value("kind", "weak"));
      BooleanMorphism dual = dual_morphism(src, dst, h, kind);
      rep.line("dual", "clopen-algebra morphism with " + std::to_string(dual.map.size()) + " entries");
      rep.line("kind preserved", "ok");
      rep.flush(true);
      return 0;
    }
    SubordinationAlgebra src = subordination_from_json(j.at("source"));
    SubordinationAlgebra dst = subordination_from_json(j.at("target"));
    BooleanMorphism f = morphism_from_json(j, src.algebra, dst.algebra);
    MorphismKind kind = kind_from_string(j.value("kind", "weak"));
    DualFrameMorphism d = dual_morphism(f, src, dst, kind);
    Json map = Json::array();
    for (std::size_t i = 0; i < d.map.size(); ++i)
      map.push_back(Json::array({d.source.points[i], d.target.points[d.map[i]]}));
    rep.item("dual point map", map);
    rep.line("kind preserved", "ok");
    rep.flush(true);
    return 0;
  }

  if (op == "factor") {
    SubordinationAlgebra src = subordination_from_json(j.at("source"));
    SubordinationAlgebra dst = subordination_from_json(j.at("target"));
    BooleanMorphism f = morphism_from_json(j, src.algebra, dst.algebra);
    FactorResult r = factor_through_delta(f, src, dst);
    rep.line("commutes", r.commutes ? "ok" : "FAIL");
    rep.line("weak", r.weak ? "ok" : "FAIL");
    rep.line("unique", r.unique() ? "ok" : "FAIL (" + std::to_string(r.candidates) + " candidates)");
    bool pass = r.commutes && r.weak && r.unique();
    rep.flush(pass);
    return pass ? 0 : 1;
  }

  if (op == "sigmapi") {
    SubordinationAlgebra s = subordination_from_json(j);
    Json set = Json::parse(set_json.empty() ? "[]" : set_json);
    PointMask e = 0;
    for (const Json& v : set) e |= PointMask{1} << v.get<int>();
    SigmaPiReport r = sigma_pi_extension(s, e);
    rep.item("sigma", Json(r.sigma));
    rep.item("pi", Json(r.pi));
    rep.item("direct", Json(r.direct));
    rep.line("smooth", r.smooth() ? "ok" : "FAIL");
    rep.flush(r.smooth());
    return r.smooth() ? 0 : 1;
  }

  if (op == "delta") {
    SubordinationAlgebra s = subordination_from_json(j);
    CanonicalExtension ext = canonical_extension(s);
    rep.item("extension", subordination_to_json(ext.delta));
    rep.line("natural map injective", ext.injective ? "ok" : "FAIL");
    rep.line("natural map preserves", ext.preserves ? "ok" : "FAIL");
    rep.line("natural map reflects", ext.reflects ? "ok" : "FAIL");
    rep.flush(ext.weak_embedding());
    return ext.weak_embedding() ? 0 : 1;
  }

  if (op == "of" || op == "pset") {
    KripkeFrame f = frame_from_json(j);
    if (f.size() > cfg.max_points) throw std::invalid_argument("input exceeds --max-points");
    SubordinationAlgebra s = of(f);
    rep.item("structure", subordination_to_json(s));
    RoundTripReport rt = round_trip_frame(f);
    rep.line("round trip", rt.ok ? rt.detail : "FAIL: " + rt.detail);
    rep.flush(rt.ok);
    return rt.ok ? 0 : 1;
  }

  if (op == "ult" || op == "at") {
    SubordinationAlgebra s = subordination_from_json(j);
    if (!is_valid_subordination(s)) throw std::invalid_argument("dualize: structure fails the base axioms");
    KripkeFrame f = op == "ult" ? ult(s) : at(s);
    rep.item("frame", frame_to_json(f));
    rep.line("discrete agrees", (ult(s).succ == at(s).succ) ? "ok" : "FAIL");
    RoundTripReport rt = round_trip_algebra(s);
    rep.line("round trip", rt.ok ? rt.detail : "FAIL: " + rt.detail);
    rep.flush(rt.ok);
    return rt.ok ? 0 : 1;
  }

  throw std::invalid_argument("dualize: unknown --op " + op);
}

// ---------------------------------------------------------------------------
// quotient / product / modalize

inline int cmd_quotient(const RunConfig& cfg, const std::string& input, const std::string& kind_str,
                        bool lattice, bool iso_theorems, std::ostream& out) {
  Json j = load_json(input);
  Reporter rep{out, cfg.format == "json"};
  SubordinationAlgebra s = subordination_from_json(j.at("structure"));
  bool pass = true;

  if (lattice) {
    CongruenceKind kind = congruence_kind_from_string(kind_str);
    CongruenceLattice lat = congruence_lattice(s, kind);
    Json gens = Json::array();
    for (Elem e : lat.generators) gens.push_back(elem_to_json(s.algebra, e));
    rep.item("congruence zero-class generators", gens);
    rep.line("frame distributive law", lat.distributive ? "ok" : "FAIL");
    pass = lat.distributive;
  }

  if (j.contains("partition")) {
    ElemPartition p = partition_from_json(s.algebra, j.at("partition"));
    CongruenceKind kind = congruence_kind_from_string(kind_str);
    QuotientResult q = quotient(s, p, kind);
    rep.item("quotient", subordination_to_json(q.algebra));
    bool proj_ok = q.projection_report.satisfies(
        kind == CongruenceKind::white   ? MorphismKind::white
        : kind == CongruenceKind::black ? MorphismKind::black
                                        : MorphismKind::strong);
    rep.line("projection kind", proj_ok ? "ok" : "FAIL");
    pass = pass && proj_ok;

    if (iso_theorems) {
      IsoReport t1 = iso_theorem_1(q.projection, s, q.algebra);
      rep.line("isomorphism theorem 1", t1.ok ? "ok (" + t1.detail + ")" : "FAIL (" + t1.detail + ")");
      std::vector<Elem> sub;
      if (j.contains("subset"))
        for (const Json& v : j.at("subset")) sub.push_back(elem_from_json(s.algebra, v));
      else
        sub = generated_boolean_subalgebra(s.algebra, {s.algebra.atom(0)});
      IsoReport t2 = iso_theorem_2(s, sub, p);
      rep.line("isomorphism theorem 2", t2.ok ? "ok (" + t2.detail + ")" : "FAIL (" + t2.detail + ")");
      IsoReport t3 = iso_theorem_3(s, p);
      rep.line("isomorphism theorem 3", t3.ok ? "ok (" + t3.detail + ")" : "FAIL (" + t3.detail + ")");
      pass = pass && t1.ok && t2.ok && t3.ok;
    }
  }
  rep.flush(pass);
  return pass ? 0 : 1;
}

inline int cmd_product(const RunConfig& cfg, const std::string& input, std::ostream& out) {
  Json j = load_json(input);
  Reporter rep{out, cfg.format == "json"};
  std::vector<SubordinationAlgebra> factors;
  for (const Json& f : j.at("factors")) factors.push_back(subordination_from_json(f));
  ProductResult prod = product(factors);
  rep.item("product", subordination_to_json(prod.algebra));
  bool pass = true;
  for (std::size_t i = 0; i < prod.projections.size(); ++i) {
    bool strong = check_morphism(prod.projections[i], prod.algebra, factors[i])
                      .satisfies(MorphismKind::strong);
    rep.line("projection " + std::to_string(i), strong ? "strong" : "FAIL");
    pass = pass && strong;
  }
  CanonicalProductMap cmap = canonical_product_map(factors);
  rep.line("canonical map bijective", cmap.bijective ? "ok" : "FAIL");
  rep.line("good family", cmap.good ? "yes" : "no");
  rep.line("s-good family", cmap.s_good ? "yes" : "no");
  pass = pass && cmap.bijective && cmap.good && cmap.s_good;
  rep.flush(pass);
  return pass ? 0 : 1;
}

inline int cmd_modalize(const RunConfig& cfg, const std::string& input, const std::string& colour,
                        std::ostream& out) {
  Json j = load_json(input);
  Reporter rep{out, cfg.format == "json"};
  SubordinationAlgebra s = subordination_from_json(j);
  Palette palette = colour == "black" ? Palette::black
                    : colour == "bi"  ? Palette::bimodal
                                      : Palette::white;
  Modalization m = modalize(s, palette);
  rep.line("closure size", std::to_string(m.elements.size()));
  Json terms = Json::array();
  for (Elem e : m.elements)
    terms.push_back(Json::array({Json(e), print_formula(m.term_of.at(e))}));
  rep.item("generating terms", terms);
  rep.line("natural map weak embedding", m.extension.weak_embedding() ? "ok" : "FAIL");
  rep.flush(m.extension.weak_embedding());
  return m.extension.weak_embedding() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// validate

// --formula and the condition flags accept either the text syntax or a JSON
// object form, detected by the leading brace
inline Formula formula_from_arg(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '{') return formula_from_json(Json::parse(text));
  return parse_formula(text);
}

inline FrameCondition frame_condition_from_arg(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '{')
    return frame_condition_from_json(Json::parse(text));
  return parse_frame_condition(text);
}

inline SubCondition sub_condition_from_arg(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '{')
    return sub_condition_from_json(Json::parse(text));
  return parse_sub_condition(text);
}

inline std::vector<Formula> instance_grammar() {
  // fixed instance family for bounded scheme refutation on symbolic spaces
  std::vector<std::string> texts{
      "p", "~p", "T", "F", "[]p", "<>p", "~[]p", "p & ~[]p", "p | []p", "<>[]p", "p & <>~p",
  };
  std::vector<Formula> out;
  for (auto& t : texts) out.push_back(parse_formula(t));
  return out;
}

inline int cmd_validate(const RunConfig& cfg, const std::string& structure,
                        const std::string& formula_text, bool scheme, bool classify_only,
                        std::ostream& out) {
  Reporter rep{out, cfg.format == "json"};
  Formula phi = formula_from_arg(formula_text);
  rep.line("formula", print_formula(phi));

  if (classify_only) {
    SyntaxClass c = classify(phi);
    auto flag = [&](const char* n, bool v) { rep.line(n, v ? "yes" : "no"); };
    flag("closed", c.closed);
    flag("open", c.open);
    flag("positive", c.positive);
    flag("negative", c.negative);
    flag("s-positive", c.s_positive);
    flag("s-negative", c.s_negative);
    flag("g-closed", c.g_closed);
    flag("g-open", c.g_open);
    flag("strongly positive", c.strongly_positive);
    flag("s-untied", c.s_untied);
    flag("s-sahlqvist", c.s_sahlqvist);
    flag("sahlqvist", c.sahlqvist);
    rep.flush(true);
    return 0;
  }

  std::optional<RelationSpec> symbolic;
  if (structure == "omega-accumulation") symbolic = accumulation_loop();
  if (structure == "omega-star") symbolic = star_loop();
  if (!symbolic && !structure.empty()) {
    Json peek = load_json(structure);
    if (!peek.contains("algebra") && !peek.contains("points")) symbolic = relation_from_json(peek);
  }
  if (symbolic) {
    RelationSpec rel = *symbolic;
    if (!scheme) {
      OmegaValidityReport r = omega_validity_sweep(rel, phi, cfg.k);
      rep.line("sweep", "all clopen valuations with exceptions in {0.." + std::to_string(cfg.k) + "}");
      rep.line("valuations", std::to_string(r.valuations_checked));
      if (r.valid) {
        rep.line("verdict", "valid (bounded sweep)");
        rep.flush(true);
        return 0;
      }
      for (auto& [v, set] : r.counterexample) rep.item("counterexample " + v, omega_set_to_json(set));
      rep.item("value", omega_set_to_json(r.counter_value));
      rep.line("verdict", "invalid");
      rep.flush(false);
      return 1;
    }
    // scheme: search the fixed instance grammar for a refutation
    for (const Formula& psi : instance_grammar()) {
      std::map<std::string, Formula> inst;
      for (auto& v : variables(phi)) inst.emplace(v, psi);
      Formula candidate = substitute(phi, inst);
      OmegaValidityReport r = omega_validity_sweep(rel, candidate, cfg.k);
      if (!r.valid) {
        rep.line("refuting instance", print_formula(psi));
        rep.line("instance formula", print_formula(candidate));
        for (auto& [v, set] : r.counterexample) rep.item("counterexample " + v, omega_set_to_json(set));
        rep.item("value", omega_set_to_json(r.counter_value));
        rep.line("verdict", "scheme invalid");
        rep.flush(false);
        return 1;
      }
    }
    rep.line("verdict", "no refutation in the bounded instance family");
    rep.flush(true);
    return 0;
  }

  Json j = load_json(structure);
  if (j.contains("points")) {
    KripkeFrame f = frame_from_json(j);
    if (f.size() > cfg.max_points) throw std::invalid_argument("input exceeds --max-points");
    j = subordination_to_json(of(f));
  }
  SubordinationAlgebra s = subordination_from_json(j);
  if (scheme) {
    SchemeValidityReport r = scheme_validity(s, phi);
    rep.line("closure size", std::to_string(r.closure_size));
    if (r.valid) {
      rep.line("verdict", "scheme valid");
      rep.flush(true);
      return 0;
    }
    for (auto& [v, inst] : r.instance) rep.line("instance " + v, print_formula(inst));
    rep.line("verdict", "scheme invalid");
    rep.flush(false);
    return 1;
  }
  ValidityReport r = validity(s, phi);
  rep.line("valuations", std::to_string(r.valuations_checked));
  if (r.valid) {
    rep.line("verdict", "valid");
    rep.flush(true);
    return 0;
  }
  for (auto& [v, e] : r.counterexample) rep.item("counterexample " + v, elem_to_json(s.algebra, e));
  rep.item("value", elem_to_json(s.algebra, r.counter_value));
  rep.line("verdict", "invalid");
  rep.flush(false);
  return 1;
}

// ---------------------------------------------------------------------------
// correspond

inline int cmd_correspond(const RunConfig& cfg, const std::string& formula_text,
                          const std::string& condition_text, const std::string& sub_condition_text,
                          const std::string& builtin, const std::string& family_text,
                          const std::string& translate_mode, const std::string& polarity,
                          std::ostream& out) {
  Reporter rep{out, cfg.format == "json"};

  if (!translate_mode.empty()) {
    Formula phi = formula_from_arg(formula_text);
    bool positive = polarity != "neg";
    if (translate_mode == "geq") {
      Translation t = translate_geq(phi, positive);
      rep.line("condition", print_condition(t.condition));
      rep.line("target", t.target);
      rep.item("fresh", Json(t.fresh));
    } else if (translate_mode == "leq") {
      Translation t = translate_leq(phi, positive);
      rep.line("condition", print_condition(t.condition));
      rep.line("target", t.target);
      rep.item("fresh", Json(t.fresh));
    } else if (translate_mode == "gclosed") {
      GClosedTranslation t = translate_g_closed(phi, positive);
      rep.line("condition", print_condition(t.condition));
      rep.line("target", t.target);
      Json decomp = Json::array();
      for (auto& [v, psi] : t.decomposition) decomp.push_back(Json::array({v, print_formula(psi)}));
      rep.item("decomposition", decomp);
    } else {
      throw std::invalid_argument("unknown --translate mode " + translate_mode);
    }
    rep.flush(true);
    return 0;
  }

  FamilySpec fam = parse_family(family_text);

  if (!builtin.empty()) {
    auto t = builtin_by_name(builtin);
    if (!t) throw std::invalid_argument("unknown builtin " + builtin);
    rep.line("triple", t->name);
    rep.line("frame condition", print_condition(t->frame_condition));
    if (t->sub_condition) rep.line("algebra condition", print_condition(*t->sub_condition));
    if (fam.kind == FamilySpec::Kind::omega) {
      OmegaTripleResult r = check_on_omega(*t, fam.relation, cfg.k);
      for (auto& [colour, valid] : r.formula_valid)
        rep.line("formula " + colour, valid ? "valid (bounded)" : "invalid");
      rep.line("condition", r.condition_holds ? "holds" : "fails");
      rep.flush(true);
      return 0;
    }
    EquivalenceReport r = check_equivalence(*t, fam);
    rep.line("members", std::to_string(r.members_checked));
    rep.line("divergences", std::to_string(r.divergences));
    if (!r.ok()) rep.line("first divergence", r.first_divergence);
    rep.flush(r.ok());
    return r.ok() ? 0 : 1;
  }

  Formula phi = formula_from_arg(formula_text);
  if (!condition_text.empty()) {
    FrameCondition cond = frame_condition_from_arg(condition_text);
    if (fam.kind == FamilySpec::Kind::omega) {
      bool formula_valid = omega_validity_sweep(fam.relation, phi, cfg.k).valid;
      bool cond_holds = eval_frame_condition(cond, fam.relation);
      rep.line("formula", formula_valid ? "valid (bounded)" : "invalid");
      rep.line("condition", cond_holds ? "holds" : "fails");
      bool agree = formula_valid == cond_holds;
      rep.line("agreement", agree ? "yes" : "no");
      rep.flush(agree);
      return agree ? 0 : 1;
    }
    EquivalenceReport r = check_equivalence(phi, cond, fam);
    rep.line("members", std::to_string(r.members_checked));
    rep.line("divergences", std::to_string(r.divergences));
    if (!r.ok()) rep.line("first divergence", r.first_divergence);
    rep.flush(r.ok());
    return r.ok() ? 0 : 1;
  }
  if (!sub_condition_text.empty()) {
    SubCondition cond = sub_condition_from_arg(sub_condition_text);
    if (fam.kind == FamilySpec::Kind::omega)
      throw std::invalid_argument("algebra conditions evaluate on finite families only");
    EquivalenceReport r;
    auto probe = [&](const KripkeFrame& f) {
      ++r.members_checked;
      SubordinationAlgebra s = of(f);
      bool formula_valid = validity(s, phi).valid;
      bool cond_holds = eval_sub_condition(cond, s);
      if (formula_valid != cond_holds) {
        ++r.divergences;
        if (r.first_divergence.empty())
          r.first_divergence = "formula vs algebra condition on " + frame_to_json(f).dump();
      }
    };
    if (fam.kind == FamilySpec::Kind::frames_up_to) {
      for (const KripkeFrame& f : all_frames_up_to(fam.points)) probe(f);
    } else {
      auto rng = seeded_rng(fam.seed);
      for (int i = 0; i < fam.count; ++i)
        probe(random_frame(rng, 1 + static_cast<int>(rng_below(rng, fam.points))));
    }
    rep.line("members", std::to_string(r.members_checked));
    rep.line("divergences", std::to_string(r.divergences));
    if (!r.ok()) rep.line("first divergence", r.first_divergence);
    rep.flush(r.ok());
    return r.ok() ? 0 : 1;
  }
  throw std::invalid_argument("correspond needs --builtin, --condition, --sub-condition or --translate");
}

// ---------------------------------------------------------------------------
// examples

inline bool example_accumulation_loop(const RunConfig& cfg, Reporter& rep) {
  RelationSpec rel = accumulation_loop();
  bool pass = true;

  Formula phi = parse_formula("p -> <>[]p");
  OmegaValidityReport sweep = omega_validity_sweep(rel, phi, cfg.k);
  rep.line("p -> <>[]p", sweep.valid ? "valid under every bounded clopen valuation" : "INVALID");
  pass = pass && sweep.valid;

  Formula psi = parse_formula("p & ~[]p");
  OmegaValuation v{{"p", cofinite_set({0}, true)}};
  OmegaSet psi_val = eval_omega_formula(rel, psi, v);
  OmegaSet dbox = rel_image(rel, Image::dia, rel_image(rel, Image::box, psi_val));
  bool shape = psi_val == omega_point() && dbox == omega_empty();
  rep.item("instance antecedent value", omega_set_to_json(psi_val));
  rep.item("instance consequent value", omega_set_to_json(dbox));
  rep.line("instance shape", shape ? "antecedent is the limit singleton, consequent empty" : "UNEXPECTED");
  pass = pass && shape;

  Formula instance = substitute(phi, {{"p", psi}});
  bool refuted = !omega_validity_sweep(rel, instance, cfg.k).valid;
  rep.line("substituted instance", refuted ? "invalid, so the logic is not substitution closed" : "VALID");
  pass = pass && refuted;

  // the forward row of {0} has no least clopen bound
  PrincipalityReport pr = nonprincipal_witness(rel, finite_set({0}), 4);
  rep.line("row of {0}", pr.principal ? "PRINCIPAL" : "non-principal");
  Json chain = Json::array();
  for (auto& u : pr.chain) chain.push_back(omega_set_to_json(u));
  rep.item("descending clopen bounds", chain);
  pass = pass && !pr.principal;

  // the clopen relation passes the base axiom spot checks
  bool spot = subordination_holds(rel, omega_empty(), omega_empty()) &&
              subordination_holds(rel, finite_set({0}), cofinite_set({1}, true)) &&
              !subordination_holds(rel, finite_set({0}), finite_set({0}));
  rep.line("clopen subordination spot checks", spot ? "ok" : "FAIL");
  pass = pass && spot;

  OmegaSigmaPi sp = sigma_pi_symbolic(rel, cofinite_set({1, 3, 5}, false));
  rep.line("smoothness on an open set", sp.smooth() ? "sigma = pi = direct" : "FAIL");
  pass = pass && sp.smooth();
  return pass;
}

inline bool example_omega_congruences(const RunConfig& cfg, Reporter& rep) {
  (void)cfg;
  RelationSpec rel = star_loop();
  bool pass = true;

  EquivSpec theta;
  theta.periodic = EquivSpec::Periodic{0, 2, {0, 1}};
  EquivCongruenceReport t = congruence_check(rel, theta);
  rep.line("pairing partition", t.zigzag && t.well_formed ? "congruence" : "NOT a congruence");
  pass = pass && t.well_formed && t.zigzag;

  EquivSpec xi;
  xi.blocks = {{0, 1}, {2}};
  xi.periodic = EquivSpec::Periodic{3, 2, {0, 1}};
  EquivCongruenceReport x = congruence_check(rel, xi);
  rep.line("shifted pairing partition", x.zigzag && x.well_formed ? "congruence" : "NOT a congruence");
  pass = pass && x.well_formed && x.zigzag;

  EquivSpec join_spec;
  join_spec.blocks = {{0, 1}};
  join_spec.omega_rest = true;
  EquivCongruenceReport jn = congruence_check(rel, join_spec);
  rep.line("join of the two", !jn.zigzag ? "NOT a congruence" : "congruence");
  pass = pass && jn.well_formed && !jn.zigzag;
  if (!jn.zigzag) {
    std::string viol = "(" + to_string(jn.violation[0]) + ", " + to_string(jn.violation[1]) + ", " +
                       to_string(jn.violation[2]) + ")";
    rep.line("transfer violation", viol);
    pass = pass && viol == "(2, omega, 0)";
  }
  rep.line("dual reading",
           "congruences do not form a sublattice, so the meet of two subalgebras can fail to be one");
  return pass;
}

inline bool example_klmn(const RunConfig& cfg, Reporter& rep) {
  (void)cfg;
  bool pass = true;
  FamilySpec fam = parse_family("frames:3");
  for (int k = 0; k <= 1; ++k)
    for (int l = 0; l <= 1; ++l)
      for (int m = 0; m <= 1; ++m)
        for (int n = 0; n <= 1; ++n) {
          CorrespondenceTriple t = correspondent_klmn(k, l, m, n);
          EquivalenceReport r = check_equivalence(t, fam);
          if (!r.ok()) {
            rep.line(t.name, "DIVERGES: " + r.first_divergence);
            pass = false;
          }
        }
  rep.line("exponents up to 1, frames up to 3 points", pass ? "all equivalences hold" : "FAIL");
  return pass;
}

inline bool example_two_variable(const RunConfig& cfg, Reporter& rep) {
  (void)cfg;
  auto t = builtin_by_name("two-variable");
  EquivalenceReport r = check_equivalence(*t, parse_family("frames:3"));
  rep.line("formula, frame condition, algebra condition", r.ok() ? "agree on every frame" : "FAIL");
  return r.ok();
}

inline bool example_seriality(const RunConfig& cfg, Reporter& rep) {
  (void)cfg;
  auto t = builtin_by_name("seriality");
  bool pass = check_equivalence(*t, parse_family("frames:3")).ok();
  rep.line("white and bicolour forms", pass ? "match seriality on every frame" : "FAIL");

  KripkeFrame big = make_frame(2, {{0, 1}, {1, 1}});
  KripkeFrame sub = subframe(big, 0b01);
  bool black_inclusion = check_frame_morphism(sub, big, {0}).satisfies(MorphismKind::black);
  bool gap = black_inclusion && eval_frame_condition(t->frame_condition, big) &&
             !eval_frame_condition(t->frame_condition, sub);
  rep.line("backward-language gap",
           gap ? "the backward subobject of a serial frame loses seriality" : "FAIL");
  return pass && gap;
}

inline bool example_unicolour_gap(const RunConfig& cfg, Reporter& rep) {
  (void)cfg;
  auto t = builtin_by_name("unicolour-gap");
  KripkeFrame x = make_frame(5, {{0, 1}, {2, 3}, {2, 4}});
  PointPartition theta = partition_generated_by(5, {{1, 3}});
  KripkeFrame q = quotient_frame(x, theta);
  bool cong = check_frame_congruence(x, theta).white;
  bool before = validity(of(x), *t->bicolour).valid && eval_frame_condition(t->frame_condition, x);
  bool after = !validity(of(q), *t->bicolour).valid && !eval_frame_condition(t->frame_condition, q);
  rep.line("five-point frame", before ? "satisfies the axiom and its condition" : "FAIL");
  rep.line("its quotient", after ? "fails both" : "FAIL");
  return cong && before && after;
}

inline bool example_scheme_dcb(const RunConfig& cfg, Reporter& rep) {
  auto t = builtin_by_name("scheme-dcb");
  bool finite_ok = check_equivalence(*t, parse_family("frames:3")).ok();
  rep.line("finite frames", finite_ok ? "white and backward forms match the correspondent" : "FAIL");

  OmegaTripleResult res = check_on_omega(*t, accumulation_loop(), cfg.k);
  bool split = res.formula_valid.at("white") && !res.condition_holds;
  rep.line("accumulation space",
           split ? "the formula holds while its correspondent fails" : "FAIL");

  Formula phi = *t->white;
  Formula instance = substitute(phi, {{"p", parse_formula("p & ~[]p")}});
  bool scheme_refuted = !omega_validity_sweep(accumulation_loop(), instance, cfg.k).valid;
  rep.line("scheme on the accumulation space", scheme_refuted ? "refuted by an instance" : "FAIL");

  SyntaxClass c = classify(phi);
  rep.line("classification", (c.sahlqvist && !c.s_sahlqvist)
                                 ? "classical correspondent shape, outside the stable fragment"
                                 : "FAIL");
  return finite_ok && split && scheme_refuted && c.sahlqvist && !c.s_sahlqvist;
}

inline int cmd_examples(const RunConfig& cfg, const std::string& name, std::ostream& out) {
  Reporter rep{out, cfg.format == "json"};
  std::vector<std::pair<std::string, bool (*)(const RunConfig&, Reporter&)>> table{
      {"accumulation-loop", example_accumulation_loop},
      {"omega-congruences", example_omega_congruences},
      {"klmn", example_klmn},
      {"two-variable", example_two_variable},
      {"seriality", example_seriality},
      {"unicolour-gap", example_unicolour_gap},
      {"scheme-dcb", example_scheme_dcb},
  };
  bool pass = true;
  bool any = false;
  for (auto& [n, fn] : table) {
    if (name != "all" && name != n) continue;
    any = true;
    rep.line("example", n);
    pass = fn(cfg, rep) && pass;
  }
  if (!any) throw std::invalid_argument("unknown example: " + name);
  rep.flush(pass);
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"subordination algebra toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--max-atoms", cfg.max_atoms, "largest accepted atom count")
      ->envname("SUBORD_MAX_ATOMS");
  app.add_option("--max-points", cfg.max_points, "largest accepted frame")
      ->envname("SUBORD_MAX_POINTS");
  app.add_option("--k", cfg.k, "exception bound for symbolic sweeps")->envname("SUBORD_K");
  app.add_option("--seed", cfg.seed, "seed for randomized families")->envname("SUBORD_SEED");
  app.add_option("--format", cfg.format, "text or json")->envname("SUBORD_FORMAT");

  std::string input, axioms, kind = "white", op, set_json, colour = "white";
  bool multi = false, lattice = false, iso = false, scheme = false, classify_only = false;
  std::string structure, formula_text, condition_text, sub_condition_text, builtin,
      family = "frames:3", translate_mode, polarity = "pos", example_name = "all";

  CLI::App* c_check = app.add_subcommand("check", "axioms, morphisms, congruences, subalgebras");
  c_check->add_option("input", input)->required();
  c_check->add_option("--axioms", axioms, "comma separated axiom names");
  c_check->add_option("--kind", kind, "weak|white|black|strong");
  c_check->add_flag("--multi", multi, "verify the filter-valued operator laws");

  CLI::App* c_dual = app.add_subcommand("dualize", "dual spaces, extensions, dual morphisms");
  c_dual->add_option("input", input)->required();
  c_dual->add_option("--op", op, "ult|at|of|pset|delta|morphism|factor|sigmapi");
  c_dual->add_option("--set", set_json, "point set for --op sigmapi");

  CLI::App* c_quot = app.add_subcommand("quotient", "quotients and the congruence lattice");
  c_quot->add_option("input", input)->required();
  c_quot->add_option("--kind", kind, "white|black|strong");
  c_quot->add_flag("--lattice", lattice, "enumerate the congruence lattice");
  c_quot->add_flag("--iso-theorems", iso, "verify the three isomorphism theorems");

  CLI::App* c_prod = app.add_subcommand("product", "finite products and the canonical map");
  c_prod->add_option("input", input)->required();

  CLI::App* c_mod = app.add_subcommand("modalize", "generated modal subalgebra of the extension");
  c_mod->add_option("input", input)->required();
  c_mod->add_option("--colour", colour, "white|black|bi");

  CLI::App* c_val = app.add_subcommand("validate", "formula validity on a structure");
  c_val->add_option("--structure", structure, "JSON file or omega-accumulation|omega-star");
  c_val->add_option("--formula", formula_text)->required();
  c_val->add_flag("--scheme", scheme, "treat the formula as a scheme");
  c_val->add_flag("--classify", classify_only, "print the syntactic class flags only");

  CLI::App* c_corr = app.add_subcommand("correspond", "correspondence checks and translations");
  c_corr->add_option("--formula", formula_text);
  c_corr->add_option("--condition", condition_text, "first-order frame condition");
  c_corr->add_option("--sub-condition", sub_condition_text, "first-order algebra condition");
  c_corr->add_option("--builtin", builtin, "named triple, or klmn:k,l,m,n");
  c_corr->add_option("--family", family, "frames:N | random:N:COUNT:SEED | omega-accumulation");
  c_corr->add_option("--translate", translate_mode, "geq|leq|gclosed");
  c_corr->add_option("--polarity", polarity, "pos|neg");

  CLI::App* c_ex = app.add_subcommand("examples", "replay the documented examples");
  c_ex->add_option("name", example_name, "example name or all");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (cfg.format != "text" && cfg.format != "json")
      throw std::invalid_argument("--format must be text or json");
    if (cfg.max_atoms < 1 || cfg.max_points < 1 || cfg.k < 0)
      throw std::invalid_argument("bounds must be positive");
    if (cfg.max_atoms > kMaxAtoms)
      throw std::invalid_argument("--max-atoms cannot exceed " + std::to_string(kMaxAtoms));
    if (c_check->parsed()) return cmd_check(cfg, input, axioms, kind, multi, out);
    if (c_dual->parsed()) return cmd_dualize(cfg, input, op, set_json, out);
    if (c_quot->parsed()) return cmd_quotient(cfg, input, kind, lattice, iso, out);
    if (c_prod->parsed()) return cmd_product(cfg, input, out);
    if (c_mod->parsed()) return cmd_modalize(cfg, input, colour, out);
    if (c_val->parsed()) return cmd_validate(cfg, structure, formula_text, scheme, classify_only, out);
    if (c_corr->parsed())
      return cmd_correspond(cfg, formula_text, condition_text, sub_condition_text, builtin, family,
                            translate_mode, polarity, out);
    if (c_ex->parsed()) return cmd_examples(cfg, example_name, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace subord::cli

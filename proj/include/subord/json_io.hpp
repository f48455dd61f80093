#pragma once

// JSON views of the structures. Elements travel as sorted atom-index
// arrays; the object key order is fixed so equal inputs print identically.

#include <json.hpp>

#include <string>
#include <vector>

#include "subord/condition.hpp"
#include "subord/congruence.hpp"
#include "subord/formula.hpp"
#include "subord/frame.hpp"
#include "subord/omega.hpp"
#include "subord/subordination.hpp"

namespace subord {

using Json = nlohmann::ordered_json;

// ---- elements and algebras -------------------------------------------------

inline Json elem_to_json(const Algebra& a, Elem e) {
  Json out = Json::array();
  for (int i = 0; i < a.atoms; ++i)
    if (e >> i & 1) out.push_back(i);
  return out;
}

inline Elem elem_from_json(const Algebra& a, const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("element: expected an array of atom indices");
  Elem e = 0;
  for (const Json& v : j) {
    int i = v.get<int>();
    if (i < 0 || i >= a.atoms) throw std::invalid_argument("element: atom index out of range");
    e |= Elem{1} << i;
  }
  return e;
}

inline Json algebra_to_json(const Algebra& a) { return Json{{"atoms", a.atoms}}; }

inline Algebra algebra_from_json(const Json& j) {
  if (!j.contains("atoms")) throw std::invalid_argument("algebra: missing \"atoms\"");
  return powerset_algebra(j.at("atoms").get<int>());
}

// ---- subordination structures ----------------------------------------------

inline Json subordination_to_json(const SubordinationAlgebra& s) {
  Json prec = Json::array();
  for (auto [a, b] : s.pairs()) prec.push_back(Json::array({elem_to_json(s.algebra, a), elem_to_json(s.algebra, b)}));
  return Json{{"algebra", algebra_to_json(s.algebra)}, {"prec", prec}};
}

inline SubordinationAlgebra subordination_from_json(const Json& j) {
  Algebra a = algebra_from_json(j.at("algebra"));
  SubordinationAlgebra s{a, std::vector<ElemMask>(a.size(), 0)};
  for (const Json& pair : j.at("prec")) {
    if (!pair.is_array() || pair.size() != 2) throw std::invalid_argument("prec: expected pairs");
    s.set_prec(elem_from_json(a, pair[0]), elem_from_json(a, pair[1]));
  }
  return s;
}

inline Json partition_to_json(const Algebra& a, const ElemPartition& p) {
  Json out = Json::array();
  for (auto& block : partition_blocks(p)) {
    Json jb = Json::array();
    for (Elem e : block) jb.push_back(elem_to_json(a, e));
    out.push_back(jb);
  }
  return out;
}

inline ElemPartition partition_from_json(const Algebra& a, const Json& j) {
  std::vector<std::vector<Elem>> blocks;
  for (const Json& jb : j) {
    std::vector<Elem> block;
    for (const Json& je : jb) block.push_back(elem_from_json(a, je));
    blocks.push_back(std::move(block));
  }
  return partition_from_blocks(a, blocks);
}

// ---- frames -----------------------------------------------------------------

inline Json frame_to_json(const KripkeFrame& f) {
  Json points = Json::array(), edges = Json::array();
  for (auto& p : f.points) points.push_back(p);
  for (int x = 0; x < f.size(); ++x)
    for (int y = 0; y < f.size(); ++y)
      if (f.edge(x, y)) edges.push_back(Json::array({f.points[x], f.points[y]}));
  return Json{{"points", points}, {"edges", edges}};
}

inline KripkeFrame frame_from_json(const Json& j) {
  KripkeFrame f;
  for (const Json& p : j.at("points")) f.points.push_back(p.get<std::string>());
  if (f.size() > kMaxPoints) throw std::invalid_argument("frame: too many points");
  f.succ.assign(f.points.size(), 0);
  for (const Json& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("frame: edges are pairs");
    f.add_edge(f.point_index(e[0].get<std::string>()), f.point_index(e[1].get<std::string>()));
  }
  return f;
}

// ---- symbolic sets, relations, equivalences ---------------------------------

inline Json omega_set_to_json(const OmegaSet& s) {
  Json ex = Json::array();
  for (Nat n : s.exceptions) ex.push_back(n);
  return Json{{"kind", s.cofinite ? "cofinite" : "finite"}, {"exceptions", ex}, {"omega", s.omega}};
}

inline OmegaSet omega_set_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  std::vector<Nat> pts;
  for (const Json& v : j.at("exceptions")) pts.push_back(v.get<Nat>());
  bool omega = j.at("omega").get<bool>();
  if (kind == "finite") return finite_set(pts, omega);
  if (kind == "cofinite") return cofinite_set(pts, omega);
  throw std::invalid_argument("omega set: kind must be finite or cofinite");
}

inline Json relation_to_json(const RelationSpec& r) {
  Json pairs = Json::array();
  for (auto [x, y] : r.base_pairs) pairs.push_back(Json::array({x, y}));
  return Json{{"diagonal", r.diagonal},
              {"omega_row", r.omega_row},
              {"omega_col", r.omega_col},
              {"omega_loop", r.omega_loop},
              {"base_pairs", pairs}};
}

inline RelationSpec relation_from_json(const Json& j) {
  RelationSpec r;
  r.diagonal = j.value("diagonal", false);
  r.omega_row = j.value("omega_row", false);
  r.omega_col = j.value("omega_col", false);
  r.omega_loop = j.value("omega_loop", false);
  if (j.contains("base_pairs"))
    for (const Json& p : j.at("base_pairs"))
      r.base_pairs.emplace_back(p[0].get<Nat>(), p[1].get<Nat>());
  return r;
}

inline Json equiv_to_json(const EquivSpec& e) {
  Json blocks = Json::array();
  for (auto& b : e.blocks) {
    Json jb = Json::array();
    for (Nat x : b) jb.push_back(x);
    blocks.push_back(jb);
  }
  Json out{{"blocks", blocks}, {"omega_class", e.omega_rest ? "rest" : "singleton"}};
  if (e.periodic) {
    Json shape = Json::array();
    for (Nat s : e.periodic->shape) shape.push_back(s);
    out["periodic"] = Json{{"offset", e.periodic->offset}, {"period", e.periodic->period}, {"shape", shape}};
  }
  return out;
}

inline EquivSpec equiv_from_json(const Json& j) {
  EquivSpec e;
  if (j.contains("blocks"))
    for (const Json& jb : j.at("blocks")) {
      std::vector<Nat> b;
      for (const Json& v : jb) b.push_back(v.get<Nat>());
      e.blocks.push_back(std::move(b));
    }
  if (j.contains("periodic") && !j.at("periodic").is_null()) {
    const Json& p = j.at("periodic");
    EquivSpec::Periodic per;
    per.offset = p.at("offset").get<Nat>();
    per.period = p.at("period").get<Nat>();
    for (const Json& s : p.at("shape")) per.shape.push_back(s.get<Nat>());
    e.periodic = per;
  }
  e.omega_rest = j.value("omega_class", "singleton") == std::string("rest");
  return e;
}

// ---- formulas ---------------------------------------------------------------

inline Json formula_to_json(const Formula& f) {
  switch (f.op) {
    case Fop::verum: return Json{{"op", "true"}};
    case Fop::falsum: return Json{{"op", "false"}};
    case Fop::var: return Json{{"op", "var"}, {"name", f.name}};
    default: break;
  }
  const char* name = nullptr;
  switch (f.op) {
    case Fop::neg: name = "not"; break;
    case Fop::conj: name = "and"; break;
    case Fop::disj: name = "or"; break;
    case Fop::impl: name = "imp"; break;
    case Fop::dia: name = "dia"; break;
    case Fop::box: name = "box"; break;
    case Fop::bdia: name = "bdia"; break;
    case Fop::bbox: name = "bbox"; break;
    default: break;
  }
  Json args = Json::array();
  for (auto& k : f.kids) args.push_back(formula_to_json(k));
  return Json{{"op", name}, {"args", args}};
}

// ---- conditions ---------------------------------------------------------------

inline Json term_to_json(const BoolTerm& t) {
  switch (t.op) {
    case TermOp::var: return Json{{"op", "var"}, {"name", t.var}};
    case TermOp::zero: return Json{{"op", "zero"}};
    case TermOp::one: return Json{{"op", "one"}};
    default: break;
  }
  const char* name = t.op == TermOp::tnot ? "not" : t.op == TermOp::tand ? "and" : "or";
  Json args = Json::array();
  for (auto& k : t.kids) args.push_back(term_to_json(k));
  return Json{{"op", name}, {"args", args}};
}

inline BoolTerm term_from_json(const Json& j) {
  std::string op = j.at("op").get<std::string>();
  if (op == "var") return t_var(j.at("name").get<std::string>());
  if (op == "zero") return t_zero();
  if (op == "one") return t_one();
  std::vector<BoolTerm> args;
  for (const Json& a : j.at("args")) args.push_back(term_from_json(a));
  if (op == "not" && args.size() == 1) return t_not(std::move(args[0]));
  if (op == "and" && args.size() == 2) return t_and(std::move(args[0]), std::move(args[1]));
  if (op == "or" && args.size() == 2) return t_or(std::move(args[0]), std::move(args[1]));
  throw std::invalid_argument("term: unknown operator or arity: " + op);
}

inline Json condition_to_json(const FrameCondition& c) {
  switch (c.op) {
    case FcOp::verum: return Json{{"op", "true"}};
    case FcOp::falsum: return Json{{"op", "false"}};
    case FcOp::rel: return Json{{"op", "rel"}, {"power", c.power}, {"lhs", c.lhs}, {"rhs", c.rhs}};
    case FcOp::eq: return Json{{"op", "eq"}, {"lhs", c.lhs}, {"rhs", c.rhs}};
    case FcOp::exists:
    case FcOp::forall:
      return Json{{"op", c.op == FcOp::exists ? "exists" : "forall"},
                  {"var", c.lhs},
                  {"body", condition_to_json(c.kids[0])}};
    default: break;
  }
  const char* name = c.op == FcOp::neg ? "not" : c.op == FcOp::conj ? "and" : c.op == FcOp::disj ? "or" : "imp";
  Json args = Json::array();
  for (auto& k : c.kids) args.push_back(condition_to_json(k));
  return Json{{"op", name}, {"args", args}};
}

inline FrameCondition frame_condition_from_json(const Json& j) {
  std::string op = j.at("op").get<std::string>();
  if (op == "true") return fc_true();
  if (op == "false") return fc_false();
  if (op == "rel")
    return fc_rel(j.at("lhs").get<std::string>(), j.at("rhs").get<std::string>(), j.value("power", 1));
  if (op == "eq") return fc_eq(j.at("lhs").get<std::string>(), j.at("rhs").get<std::string>());
  if (op == "exists" || op == "forall") {
    FrameCondition body = frame_condition_from_json(j.at("body"));
    return op == "exists" ? fc_exists(j.at("var").get<std::string>(), std::move(body))
                          : fc_forall(j.at("var").get<std::string>(), std::move(body));
  }
  std::vector<FrameCondition> args;
  for (const Json& a : j.at("args")) args.push_back(frame_condition_from_json(a));
  if (op == "not" && args.size() == 1) return fc_not(std::move(args[0]));
  if (args.size() == 2) {
    if (op == "and") return fc_and(std::move(args[0]), std::move(args[1]));
    if (op == "or") return fc_or(std::move(args[0]), std::move(args[1]));
    if (op == "imp") return fc_imp(std::move(args[0]), std::move(args[1]));
  }
  throw std::invalid_argument("frame condition: unknown operator or arity: " + op);
}

inline Json condition_to_json(const SubCondition& c) {
  switch (c.op) {
    case ScOp::verum: return Json{{"op", "true"}};
    case ScOp::falsum: return Json{{"op", "false"}};
    case ScOp::leq:
      return Json{{"op", "leq"}, {"lhs", term_to_json(c.terms[0])}, {"rhs", term_to_json(c.terms[1])}};
    case ScOp::prec:
    case ScOp::perp:
      return Json{{"op", c.op == ScOp::prec ? "prec" : "perp"},
                  {"power", c.power},
                  {"lhs", term_to_json(c.terms[0])},
                  {"rhs", term_to_json(c.terms[1])}};
    case ScOp::exists:
    case ScOp::forall:
      return Json{{"op", c.op == ScOp::exists ? "exists" : "forall"},
                  {"var", c.bound},
                  {"body", condition_to_json(c.kids[0])}};
    default: break;
  }
  const char* name = c.op == ScOp::neg ? "not" : c.op == ScOp::conj ? "and" : c.op == ScOp::disj ? "or" : "imp";
  Json args = Json::array();
  for (auto& k : c.kids) args.push_back(condition_to_json(k));
  return Json{{"op", name}, {"args", args}};
}

inline SubCondition sub_condition_from_json(const Json& j) {
  std::string op = j.at("op").get<std::string>();
  if (op == "true") return sc_true();
  if (op == "false") return sc_false();
  if (op == "leq") return sc_leq(term_from_json(j.at("lhs")), term_from_json(j.at("rhs")));
  if (op == "prec")
    return sc_prec(term_from_json(j.at("lhs")), term_from_json(j.at("rhs")), j.value("power", 1));
  if (op == "perp")
    return sc_perp(term_from_json(j.at("lhs")), term_from_json(j.at("rhs")), j.value("power", 1));
  if (op == "exists" || op == "forall") {
    SubCondition body = sub_condition_from_json(j.at("body"));
    return op == "exists" ? sc_exists(j.at("var").get<std::string>(), std::move(body))
                          : sc_forall(j.at("var").get<std::string>(), std::move(body));
  }
  std::vector<SubCondition> args;
  for (const Json& a : j.at("args")) args.push_back(sub_condition_from_json(a));
  if (op == "not" && args.size() == 1) return sc_not(std::move(args[0]));
  if (args.size() == 2) {
    if (op == "and") return sc_and(std::move(args[0]), std::move(args[1]));
    if (op == "or") return sc_or(std::move(args[0]), std::move(args[1]));
    if (op == "imp") return sc_imp(std::move(args[0]), std::move(args[1]));
  }
  throw std::invalid_argument("algebra condition: unknown operator or arity: " + op);
}

inline Formula formula_from_json(const Json& j) {
  std::string op = j.at("op").get<std::string>();
  if (op == "true") return f_true();
  if (op == "false") return f_false();
  if (op == "var") return f_var(j.at("name").get<std::string>());
  std::vector<Formula> args;
  for (const Json& a : j.at("args")) args.push_back(formula_from_json(a));
  auto unary = [&](Formula (*fn)(Formula)) {
    if (args.size() != 1) throw std::invalid_argument("formula: unary operator arity");
    return fn(std::move(args[0]));
  };
  auto binary = [&](Formula (*fn)(Formula, Formula)) {
    if (args.size() != 2) throw std::invalid_argument("formula: binary operator arity");
    return fn(std::move(args[0]), std::move(args[1]));
  };
  if (op == "not") return unary(f_not);
  if (op == "dia") return unary(f_dia);
  if (op == "box") return unary(f_box);
  if (op == "bdia") return unary(f_bdia);
  if (op == "bbox") return unary(f_bbox);
  if (op == "and") return binary(f_and);
  if (op == "or") return binary(f_or);
  if (op == "imp") return binary(f_imp);
  throw std::invalid_argument("formula: unknown operator " + op);
}

}  // namespace subord

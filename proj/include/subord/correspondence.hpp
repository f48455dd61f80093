#pragma once

// Correspondence between modal validity on the algebras, first-order
// conditions on the dual accessibility relation, and first-order conditions
// in the language of the algebras. The library of certified triples covers
// every correspondence used elsewhere; each carries the exhaustive
// small-frame certification in its tests.

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "subord/condition.hpp"
#include "subord/duality.hpp"
#include "subord/generate.hpp"
#include "subord/logic.hpp"
#include "subord/omega.hpp"

namespace subord {

struct CorrespondenceTriple {
  std::string name;
  std::optional<Formula> white;
  std::optional<Formula> black;
  std::optional<Formula> bicolour;
  bool scheme_level = false;  // the formula/condition match is a scheme-level fact
  FrameCondition frame_condition;
  std::optional<SubCondition> sub_condition;
  std::string note;

  std::vector<Formula> formulas() const {
    std::vector<Formula> out;
    if (white) out.push_back(*white);
    if (black) out.push_back(*black);
    if (bicolour) out.push_back(*bicolour);
    return out;
  }
};

/// The axiom family dia^k box^l p -> box^m dia^n p with its bicolour twin,
/// its frame condition and its condition in the algebra language.
///
/// The twin is obtained by residuation: substituting the adjoint prefix and
/// cancelling units gives bdia^m dia^k p -> dia^n bdia^l p, which the small
/// frame sweep certifies against the white form. The algebra condition
/// follows the containment chain that rewrites the validity statement into
/// quantifiers over clopen sets.
inline CorrespondenceTriple correspondent_klmn(int k, int l, int m, int n) {
  if (k < 0 || l < 0 || m < 0 || n < 0 || k + l + m + n > 12)
    throw std::invalid_argument("correspondent_klmn: exponents out of range");
  CorrespondenceTriple t;
  std::ostringstream name;
  name << "klmn:" << k << "," << l << "," << m << "," << n;
  t.name = name.str();
  t.white = f_imp(iterate(f_dia, k, iterate(f_box, l, f_var("p"))),
                  iterate(f_box, m, iterate(f_dia, n, f_var("p"))));
  t.bicolour = f_imp(iterate(f_bdia, m, iterate(f_dia, k, f_var("p"))),
                     iterate(f_dia, n, iterate(f_bdia, l, f_var("p"))));
  t.frame_condition = fc_forall(
      "x", fc_forall("y", fc_forall("z", fc_imp(fc_and(fc_rel("x", "y", k), fc_rel("x", "z", m)),
                                                fc_exists("u", fc_and(fc_rel("y", "u", l),
                                                                      fc_rel("z", "u", n)))))));
  t.sub_condition = sc_forall(
      "a",
      sc_forall(
          "b",
          sc_forall("c", sc_imp(sc_and(sc_prec(t_not(t_var("a")), t_not(t_var("b")), l),
                                       sc_perp(t_var("a"), t_var("c"), n)),
                                sc_exists("d", sc_and(sc_prec(t_var("b"), t_var("d"), k),
                                                      sc_perp(t_var("c"), t_var("d"), m)))))));
  t.note = "bicolour twin by residuation; the source prints the twin as dia^k bdia^m p -> "
           "bdia^l dia^m p and the algebra condition without its first power";
  return t;
}

inline std::vector<CorrespondenceTriple> builtin_library() {
  std::vector<CorrespondenceTriple> lib;

  lib.push_back(correspondent_klmn(1, 1, 1, 1));

  {
    CorrespondenceTriple t;
    t.name = "two-variable";
    t.white = parse_formula("[](([]p) -> q) | [](([]q) -> p)");
    t.frame_condition =
        parse_frame_condition("A x: A y: A z: (x R y & x R z) -> (y R z | z R y)");
    t.sub_condition =
        parse_sub_condition("A a: A b: (a _|_ b & b _|_ a) -> (E c: a -< c & b _|_ c)");
    t.note = "the two-variable connectedness axiom";
    lib.push_back(t);
  }

  {
    CorrespondenceTriple t;
    t.name = "seriality";
    t.white = parse_formula("[]p -> <>p");
    t.bicolour = parse_formula("p -> <> <+> p");
    t.frame_condition = parse_frame_condition("A x: E y: x R y");
    t.note = "no backward-language equivalent: the two-point frame with edges 0->1, 1->1 is "
             "serial while its backward subobject {0} is not";
    lib.push_back(t);
  }

  {
    CorrespondenceTriple t;
    t.name = "unicolour-gap";
    t.bicolour = parse_formula("<> <+> <> p -> <> p");
    t.frame_condition =
        parse_frame_condition("A x: A y: A z: A u: (x R y & z R y & z R u) -> x R u");
    t.note = "expressible in neither single-colour language: witnessed by the five-point frame "
             "and its quotient merging the two middle targets";
    lib.push_back(t);
  }

  {
    CorrespondenceTriple t;
    t.name = "scheme-dcb";
    t.white = parse_formula("p -> <>[]p");
    t.black = parse_formula("p -> <+>[+]p");
    t.scheme_level = true;
    t.frame_condition =
        parse_frame_condition("A x: E y: x R y & y R x & (A z: y R z -> z = x)");
    t.note = "scheme-level correspondent; the containment form (A x: E y: x R y & (A z: y R z "
             "-> z = x)) is equivalent on every frame checked";
    lib.push_back(t);
  }

  {
    CorrespondenceTriple t;
    t.name = "symmetry";
    t.bicolour = parse_formula("<>p -> <+>p");
    t.white = parse_formula("<>[]p -> p");
    t.black = parse_formula("<+>[+]p -> p");
    t.frame_condition = parse_frame_condition("A x: A y: x R y -> y R x");
    t.sub_condition = parse_sub_condition("A a: A b: a -< b -> ~b -< ~a");
    t.note = "the three languages meet: all four statements pin down symmetry";
    lib.push_back(t);
  }

  return lib;
}

inline std::optional<CorrespondenceTriple> builtin_by_name(const std::string& name) {
  if (name.rfind("klmn:", 0) == 0) {
    int vals[4] = {0, 0, 0, 0};
    std::string rest = name.substr(5);
    std::replace(rest.begin(), rest.end(), ',', ' ');
    std::istringstream in(rest);
    if (in >> vals[0] >> vals[1] >> vals[2] >> vals[3])
      return correspondent_klmn(vals[0], vals[1], vals[2], vals[3]);
    return std::nullopt;
  }
  for (auto& t : builtin_library())
    if (t.name == name) return t;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Equivalence sweeps

struct FamilySpec {
  enum class Kind { frames_up_to, random_frames, omega };
  Kind kind = Kind::frames_up_to;
  int points = 3;
  int count = 0;             // random family size
  std::uint64_t seed = 1;
  RelationSpec relation;     // for the symbolic family
  std::string name = "frames:3";
};

/// Family syntax: "frames:N", "random:N:COUNT:SEED", "omega-accumulation",
/// "omega-star".
inline FamilySpec parse_family(const std::string& text) {
  FamilySpec f;
  f.name = text;
  if (text == "omega-accumulation") {
    f.kind = FamilySpec::Kind::omega;
    f.relation = accumulation_loop();
    return f;
  }
  if (text == "omega-star") {
    f.kind = FamilySpec::Kind::omega;
    f.relation = star_loop();
    return f;
  }
  std::string head = text.substr(0, text.find(':'));
  std::string rest = text.size() > head.size() ? text.substr(head.size() + 1) : "";
  std::replace(rest.begin(), rest.end(), ':', ' ');
  std::istringstream in(rest);
  if (head == "frames") {
    f.kind = FamilySpec::Kind::frames_up_to;
    if (!(in >> f.points)) throw std::invalid_argument("parse_family: frames:N");
    return f;
  }
  if (head == "random") {
    f.kind = FamilySpec::Kind::random_frames;
    if (!(in >> f.points >> f.count)) throw std::invalid_argument("parse_family: random:N:COUNT[:SEED]");
    if (!(in >> f.seed)) f.seed = 1;
    return f;
  }
  throw std::invalid_argument("parse_family: unknown family " + text);
}

struct EquivalenceReport {
  std::size_t members_checked = 0;
  std::size_t divergences = 0;
  std::string first_divergence;
  bool ok() const { return divergences == 0; }
};

namespace detail {

inline std::string frame_debug(const KripkeFrame& f) {
  std::string out = std::to_string(f.size()) + " points, edges";
  for (int x = 0; x < f.size(); ++x)
    for (int y = 0; y < f.size(); ++y)
      if (f.edge(x, y)) out += " (" + std::to_string(x) + "," + std::to_string(y) + ")";
  return out;
}

template <typename Member>
void record_divergence(EquivalenceReport& rep, const Member& member, const std::string& what) {
  ++rep.divergences;
  if (rep.first_divergence.empty()) rep.first_divergence = what + " on " + frame_debug(member);
}

}  // namespace detail

/// Checks one formula against one frame condition over a family of finite
/// frames: the formula must be valid on the clopen dual exactly when the
/// condition holds on the frame.
inline EquivalenceReport check_equivalence(const Formula& phi, const FrameCondition& cond,
                                           const FamilySpec& fam) {
  EquivalenceReport rep;
  auto probe = [&](const KripkeFrame& f) {
    ++rep.members_checked;
    bool formula = validity(of(f), phi).valid;
    bool condition = eval_frame_condition(cond, f);
    if (formula != condition)
      detail::record_divergence(rep, f,
                                "formula " + std::string(formula ? "valid" : "invalid") +
                                    " vs condition " + (condition ? "true" : "false"));
  };
  if (fam.kind == FamilySpec::Kind::frames_up_to) {
    for (const KripkeFrame& f : all_frames_up_to(fam.points)) probe(f);
  } else if (fam.kind == FamilySpec::Kind::random_frames) {
    auto rng = seeded_rng(fam.seed);
    for (int i = 0; i < fam.count; ++i)
      probe(random_frame(rng, 1 + static_cast<int>(rng_below(rng, fam.points))));
  } else {
    throw std::invalid_argument("check_equivalence: symbolic families need the triple overload");
  }
  return rep;
}

struct OmegaTripleResult {
  std::map<std::string, bool> formula_valid;  // bounded sweep per stored formula
  int bound = 0;
  bool condition_holds = false;
};

/// Verdicts of a triple's ingredients over one symbolic space; the caller
/// decides what agreement to expect (scheme-level triples legitimately
/// diverge here).
inline OmegaTripleResult check_on_omega(const CorrespondenceTriple& t, const RelationSpec& rel,
                                        int bound = 6) {
  OmegaTripleResult out;
  out.bound = bound;
  if (t.white) out.formula_valid["white"] = omega_validity_sweep(rel, *t.white, bound).valid;
  if (t.black) out.formula_valid["black"] = omega_validity_sweep(rel, *t.black, bound).valid;
  if (t.bicolour) out.formula_valid["bicolour"] = omega_validity_sweep(rel, *t.bicolour, bound).valid;
  out.condition_holds = eval_frame_condition(t.frame_condition, rel);
  return out;
}

/// Full certification of a triple over a finite-frame family: every stored
/// formula, the frame condition and the algebra condition must agree member
/// by member.
inline EquivalenceReport check_equivalence(const CorrespondenceTriple& t, const FamilySpec& fam) {
  if (fam.kind == FamilySpec::Kind::omega)
    throw std::invalid_argument("check_equivalence: use check_on_omega for symbolic families");
  EquivalenceReport rep;
  auto probe = [&](const KripkeFrame& f) {
    ++rep.members_checked;
    SubordinationAlgebra s = of(f);
    bool condition = eval_frame_condition(t.frame_condition, f);
    for (const Formula& phi : t.formulas()) {
      bool formula = validity(s, phi).valid;
      if (formula != condition)
        detail::record_divergence(rep, f, t.name + ": formula " + print_formula(phi) + " " +
                                              (formula ? "valid" : "invalid") + " vs condition " +
                                              (condition ? "true" : "false"));
    }
    if (t.sub_condition) {
      bool algebra_side = eval_sub_condition(*t.sub_condition, s);
      if (algebra_side != condition)
        detail::record_divergence(rep, f, t.name + ": algebra condition disagrees");
    }
  };
  if (fam.kind == FamilySpec::Kind::frames_up_to) {
    for (const KripkeFrame& f : all_frames_up_to(fam.points)) probe(f);
  } else {
    auto rng = seeded_rng(fam.seed);
    for (int i = 0; i < fam.count; ++i)
      probe(random_frame(rng, 1 + static_cast<int>(rng_below(rng, fam.points))));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Definability translations

struct Translation {
  SubCondition condition;
  std::string target;              // the designated comparison variable
  std::vector<std::string> fresh;  // auxiliary element variables, in order of introduction
};

namespace detail {

inline bool modal_free(const Formula& f) {
  switch (f.op) {
    case Fop::dia:
    case Fop::box:
    case Fop::bdia:
    case Fop::bbox:
      return false;
    default:
      for (auto& k : f.kids)
        if (!modal_free(k)) return false;
      return true;
  }
}

inline BoolTerm term_of_formula(const Formula& f) {
  switch (f.op) {
    case Fop::verum: return t_one();
    case Fop::falsum: return t_zero();
    case Fop::var: return t_var(f.name);
    case Fop::neg: return t_not(term_of_formula(f.kids[0]));
    case Fop::conj: return t_and(term_of_formula(f.kids[0]), term_of_formula(f.kids[1]));
    case Fop::disj: return t_or(term_of_formula(f.kids[0]), term_of_formula(f.kids[1]));
    case Fop::impl: return t_or(t_not(term_of_formula(f.kids[0])), term_of_formula(f.kids[1]));
    default: throw std::logic_error("term_of_formula: modal connective");
  }
}

struct FreshVars {
  int next = 0;
  std::set<std::string> avoid;
  std::vector<std::string> trail;
  std::string make() {
    std::string v;
    do {
      v = "r" + std::to_string(++next);
    } while (avoid.count(v));
    trail.push_back(v);
    return v;
  }
};

inline std::string pick_target_variable(const Formula& phi) {
  std::set<std::string> used;
  collect_vars(phi, used);
  std::string q = "q";
  while (used.count(q)) q += '\'';
  return q;
}

// Both translators work on open formulas in negation normal form. The first
// emits a condition equivalent to "q <= value", the second one equivalent to
// "value <= q"; q is an arbitrary Boolean term.
SubCondition geq_open(const Formula& phi, const BoolTerm& q, FreshVars& fresh);
SubCondition leq_open(const Formula& phi, const BoolTerm& q, FreshVars& fresh);

inline SubCondition geq_open(const Formula& phi, const BoolTerm& q, FreshVars& fresh) {
  if (modal_free(phi)) return sc_leq(q, term_of_formula(phi));
  switch (phi.op) {
    case Fop::disj: {
      // below a union of opens: split q along two fresh parts
      std::string r = fresh.make(), s = fresh.make();
      return sc_exists(
          r, sc_exists(s, sc_and_all({geq_open(phi.kids[0], t_var(r), fresh),
                                      geq_open(phi.kids[1], t_var(s), fresh),
                                      sc_leq(q, t_or(t_var(r), t_var(s)))})));
    }
    case Fop::conj:
      return sc_and(geq_open(phi.kids[0], q, fresh), geq_open(phi.kids[1], q, fresh));
    case Fop::box: {
      const Formula& psi = phi.kids[0];
      if (modal_free(psi))
        return sc_prec(t_not(term_of_formula(psi)), t_not(q));
      std::string r = fresh.make();
      return sc_exists(r, sc_and(geq_open(psi, t_not(t_var(r)), fresh),
                                 sc_prec(t_var(r), t_not(q))));
    }
    case Fop::bbox: {
      const Formula& psi = phi.kids[0];
      if (modal_free(psi)) return sc_prec(q, term_of_formula(psi));
      std::string r = fresh.make();
      return sc_exists(r, sc_and(geq_open(psi, t_not(t_var(r)), fresh),
                                 sc_prec(q, t_not(t_var(r)))));
    }
    default:
      throw std::invalid_argument("geq_open: formula is not open");
  }
}

inline SubCondition leq_open(const Formula& phi, const BoolTerm& q, FreshVars& fresh) {
  if (modal_free(phi)) return sc_leq(term_of_formula(phi), q);
  switch (phi.op) {
    case Fop::disj:
      return sc_and(leq_open(phi.kids[0], q, fresh), leq_open(phi.kids[1], q, fresh));
    case Fop::conj: {
      // an open set sits inside the meet iff every element below the meet
      // sits below the target
      std::string r = fresh.make();
      return sc_forall(r, sc_imp(sc_and(geq_open(phi.kids[0], t_var(r), fresh),
                                        geq_open(phi.kids[1], t_var(r), fresh)),
                                 sc_leq(t_var(r), q)));
    }
    case Fop::box:
    case Fop::bbox: {
      std::string r = fresh.make();
      return sc_forall(r, sc_imp(geq_open(phi, t_var(r), fresh), sc_leq(t_var(r), q)));
    }
    default:
      throw std::invalid_argument("leq_open: formula is not open");
  }
}

}  // namespace detail

/// Condition equivalent to validity of q± -> phi for an open or closed phi;
/// free variables are phi's variables together with q.
inline Translation translate_geq(const Formula& phi, bool positive_polarity = true) {
  SyntaxClass c = classify(phi);
  if (!c.open && !c.closed)
    throw std::invalid_argument("translate_geq: formula is neither open nor closed");
  detail::FreshVars fresh;
  collect_vars(phi, fresh.avoid);
  Translation out;
  out.target = detail::pick_target_variable(phi);
  BoolTerm q = positive_polarity ? t_var(out.target) : t_not(t_var(out.target));
  Formula n = nnf(phi);
  if (c.open) {
    out.condition = detail::geq_open(n, q, fresh);
  } else {
    // q <= phi, phi closed: pass to the complement, which is open
    out.condition = detail::leq_open(nnf(phi, true), t_not(q), fresh);
  }
  out.fresh = fresh.trail;
  return out;
}

/// Condition equivalent to validity of phi -> q± for an open or closed phi.
inline Translation translate_leq(const Formula& phi, bool positive_polarity = true) {
  SyntaxClass c = classify(phi);
  if (!c.open && !c.closed)
    throw std::invalid_argument("translate_leq: formula is neither open nor closed");
  detail::FreshVars fresh;
  collect_vars(phi, fresh.avoid);
  Translation out;
  out.target = detail::pick_target_variable(phi);
  BoolTerm q = positive_polarity ? t_var(out.target) : t_not(t_var(out.target));
  Formula n = nnf(phi);
  if (c.open) {
    out.condition = detail::leq_open(n, q, fresh);
  } else {
    out.condition = detail::geq_open(nnf(phi, true), t_not(q), fresh);
  }
  out.fresh = fresh.trail;
  return out;
}

struct GClosedTranslation {
  SubCondition condition;
  std::string target;
  std::vector<std::pair<std::string, Formula>> decomposition;  // fresh var, closed subformula
  std::vector<std::string> fresh;
};

namespace detail {

inline Formula mark_closed_subtrees(const Formula& f, std::vector<std::pair<std::string, Formula>>& out) {
  if (cls_closed(f)) {
    std::string v = "p" + std::to_string(out.size() + 1) + "'";
    out.emplace_back(v, f);
    return f_var(v);
  }
  Formula res{f.op, f.name, {}};
  for (auto& k : f.kids) res.kids.push_back(mark_closed_subtrees(k, out));
  return res;
}

}  // namespace detail

/// Condition equivalent to validity of q -> xi for a generalised-closed xi.
/// The closed kernel is approximated from above by clopen elements: the
/// emitted sentence quantifies over bounds of the maximal closed subtrees
/// and defers to the open context.
inline GClosedTranslation translate_g_closed(const Formula& xi, bool positive_polarity = true) {
  SyntaxClass c = classify(xi);
  if (!c.g_closed) throw std::invalid_argument("translate_g_closed: formula is not g-closed");

  GClosedTranslation out;
  Formula n = nnf(xi);
  Formula context = detail::mark_closed_subtrees(n, out.decomposition);

  detail::FreshVars fresh;
  collect_vars(xi, fresh.avoid);
  for (auto& [var, psi] : out.decomposition) fresh.avoid.insert(var);
  out.target = detail::pick_target_variable(xi);
  BoolTerm q = positive_polarity ? t_var(out.target) : t_not(t_var(out.target));

  std::vector<SubCondition> bounds;
  for (auto& [var, psi] : out.decomposition) {
    // psi <= var with psi closed: translate through the open complement
    bounds.push_back(detail::geq_open(nnf(psi, true), t_not(t_var(var)), fresh));
  }
  SubCondition body = sc_imp(sc_and_all(bounds), detail::geq_open(context, q, fresh));
  for (auto it = out.decomposition.rbegin(); it != out.decomposition.rend(); ++it)
    body = sc_forall(it->first, std::move(body));
  out.condition = std::move(body);
  out.fresh = fresh.trail;
  return out;
}

}  // namespace subord

#pragma once

// Subordination relations on finite Boolean algebras: the relation is kept
// extensionally so that candidate structures failing the axioms can still be
// inspected and reported on.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subord/algebra.hpp"

namespace subord {

struct SubordinationAlgebra {
  Algebra algebra;
  std::vector<ElemMask> rel;  // rel[a] has bit b set iff a is subordinate to b

  bool prec(Elem a, Elem b) const { return rel[a] >> b & 1; }
  void set_prec(Elem a, Elem b) { rel[a] |= ElemMask{1} << b; }

  /// All b with a prec b, as an element mask.
  ElemMask after(Elem a) const { return rel[a]; }
  /// All a with a prec b, as an element mask.
  ElemMask before(Elem b) const {
    ElemMask m = 0;
    for (Elem a = 0; a < algebra.size(); ++a)
      if (prec(a, b)) m |= ElemMask{1} << a;
    return m;
  }

  std::vector<std::pair<Elem, Elem>> pairs() const {
    std::vector<std::pair<Elem, Elem>> out;
    for (Elem a = 0; a < algebra.size(); ++a)
      for (Elem b = 0; b < algebra.size(); ++b)
        if (prec(a, b)) out.emplace_back(a, b);
    return out;
  }

  bool operator==(const SubordinationAlgebra& o) const {
    return algebra == o.algebra && rel == o.rel;
  }
};

inline SubordinationAlgebra make_subordination(const Algebra& a,
                                               const std::vector<std::pair<Elem, Elem>>& pairs) {
  SubordinationAlgebra s{a, std::vector<ElemMask>(a.size(), 0)};
  for (auto [x, y] : pairs) {
    require_element(a, x, "make_subordination");
    require_element(a, y, "make_subordination");
    s.set_prec(x, y);
  }
  return s;
}

/// The relation "less or equal" as a subordination (it always satisfies the
/// base axioms and the contact ones as well).
inline SubordinationAlgebra subordination_leq(const Algebra& a) {
  SubordinationAlgebra s{a, std::vector<ElemMask>(a.size(), 0)};
  for (Elem x = 0; x < a.size(); ++x)
    for (Elem y = 0; y < a.size(); ++y)
      if (a.leq(x, y)) s.set_prec(x, y);
  return s;
}

/// Order-dual companion: a prec' b iff (not b) prec (not a). Swapping to the
/// companion exchanges the white notions with the black ones.
inline SubordinationAlgebra flip(const SubordinationAlgebra& s) {
  SubordinationAlgebra out{s.algebra, std::vector<ElemMask>(s.algebra.size(), 0)};
  for (Elem a = 0; a < s.algebra.size(); ++a)
    for (Elem b = 0; b < s.algebra.size(); ++b)
      if (s.prec(s.algebra.complement(b), s.algebra.complement(a))) out.set_prec(a, b);
  return out;
}

// ---------------------------------------------------------------------------
// Axioms

enum class Axiom { S1, S2, S3, S4, S5, S6, S7, S8, S2c, S3c };

inline const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::S1: return "S1";
    case Axiom::S2: return "S2";
    case Axiom::S3: return "S3";
    case Axiom::S4: return "S4";
    case Axiom::S5: return "S5";
    case Axiom::S6: return "S6";
    case Axiom::S7: return "S7";
    case Axiom::S8: return "S8";
    case Axiom::S2c: return "S'2";
    case Axiom::S3c: return "S'3";
  }
  return "?";
}

inline std::optional<Axiom> axiom_from_name(const std::string& n) {
  for (Axiom a : {Axiom::S1, Axiom::S2, Axiom::S3, Axiom::S4, Axiom::S5, Axiom::S6, Axiom::S7,
                  Axiom::S8, Axiom::S2c, Axiom::S3c})
    if (n == axiom_name(a)) return a;
  return std::nullopt;
}

inline std::vector<Axiom> all_axioms() {
  return {Axiom::S1, Axiom::S2, Axiom::S3, Axiom::S4, Axiom::S5,
          Axiom::S6, Axiom::S7, Axiom::S8, Axiom::S2c, Axiom::S3c};
}

inline std::vector<Axiom> base_axioms() { return {Axiom::S1, Axiom::S2, Axiom::S3, Axiom::S4}; }

struct AxiomVerdict {
  Axiom axiom;
  bool holds = false;
  std::vector<Elem> witness;  // least violating tuple, in the documented loop order
  std::string note;
};

struct AxiomReport {
  std::vector<AxiomVerdict> verdicts;

  bool all_hold() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const AxiomVerdict& v) { return v.holds; });
  }
  const AxiomVerdict* find(Axiom a) const {
    for (auto& v : verdicts)
      if (v.axiom == a) return &v;
    return nullptr;
  }
};

namespace detail {

// Meets of all nonempty subsets of the elements in `m`, plus the empty meet.
inline ElemMask meet_closure(const Algebra& alg, ElemMask m) {
  ElemMask closure = ElemMask{1} << alg.top();  // empty family
  std::vector<Elem> todo = elems_of(m);
  for (Elem e : todo) closure |= ElemMask{1} << e;
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Elem> cur = elems_of(closure);
    for (Elem x : cur)
      for (Elem y : cur) {
        Elem v = alg.meet(x, y);
        if (!(closure >> v & 1)) { closure |= ElemMask{1} << v; grew = true; }
      }
  }
  return closure;
}

inline ElemMask join_closure(const Algebra& alg, ElemMask m) {
  ElemMask closure = ElemMask{1} << alg.bottom();
  for (Elem e : elems_of(m)) closure |= ElemMask{1} << e;
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Elem> cur = elems_of(closure);
    for (Elem x : cur)
      for (Elem y : cur) {
        Elem v = alg.join(x, y);
        if (!(closure >> v & 1)) { closure |= ElemMask{1} << v; grew = true; }
      }
  }
  return closure;
}

}  // namespace detail

/// Checks the requested axioms on a candidate relation. Witnesses are the
/// lexicographically least violating tuples in the per-axiom loop order.
inline AxiomReport check_axioms(const SubordinationAlgebra& s,
                                const std::vector<Axiom>& which = all_axioms()) {
  const Algebra& alg = s.algebra;
  const Elem n = static_cast<Elem>(alg.size());
  AxiomReport report;

  auto base_hold = [&]() {
    AxiomReport b = check_axioms(s, base_axioms());
    return b.all_hold();
  };

  for (Axiom ax : which) {
    AxiomVerdict v{ax, true, {}, ""};
    switch (ax) {
      case Axiom::S1: {
        if (!s.prec(alg.bottom(), alg.bottom())) { v.holds = false; v.witness = {alg.bottom()}; }
        else if (!s.prec(alg.top(), alg.top())) { v.holds = false; v.witness = {alg.top()}; }
        break;
      }
      case Axiom::S2: {
        for (Elem a = 0; a < n && v.holds; ++a)
          for (Elem b = 0; b < n && v.holds; ++b)
            for (Elem c = 0; c < n && v.holds; ++c)
              if (s.prec(a, b) && s.prec(a, c) && !s.prec(a, alg.meet(b, c))) {
                v.holds = false;
                v.witness = {a, b, c};
              }
        break;
      }
      case Axiom::S3: {
        for (Elem b = 0; b < n && v.holds; ++b)
          for (Elem c = 0; c < n && v.holds; ++c)
            for (Elem a = 0; a < n && v.holds; ++a)
              if (s.prec(b, a) && s.prec(c, a) && !s.prec(alg.join(b, c), a)) {
                v.holds = false;
                v.witness = {b, c, a};
              }
        break;
      }
      case Axiom::S4: {
        for (Elem a = 0; a < n && v.holds; ++a)
          for (Elem b = 0; b < n && v.holds; ++b) {
            if (!alg.leq(a, b)) continue;
            for (Elem c = 0; c < n && v.holds; ++c) {
              if (!s.prec(b, c)) continue;
              for (Elem d = 0; d < n && v.holds; ++d)
                if (alg.leq(c, d) && !s.prec(a, d)) {
                  v.holds = false;
                  v.witness = {a, b, c, d};
                }
            }
          }
        break;
      }
      case Axiom::S5: {
        for (Elem a = 1; a < n && v.holds; ++a) {
          bool found = false;
          for (Elem b = 1; b < n && !found; ++b)
            if (s.prec(b, a)) found = true;
          if (!found) { v.holds = false; v.witness = {a}; }
        }
        break;
      }
      case Axiom::S6: {
        for (Elem a = 0; a < n && v.holds; ++a)
          for (Elem b = 0; b < n && v.holds; ++b)
            if (s.prec(a, b) && !alg.leq(a, b)) { v.holds = false; v.witness = {a, b}; }
        break;
      }
      case Axiom::S7: {
        for (Elem a = 0; a < n && v.holds; ++a)
          for (Elem b = 0; b < n && v.holds; ++b)
            if (s.prec(a, b) && !s.prec(alg.complement(b), alg.complement(a))) {
              v.holds = false;
              v.witness = {a, b};
            }
        break;
      }
      case Axiom::S8: {
        for (Elem a = 0; a < n && v.holds; ++a)
          for (Elem b = 0; b < n && v.holds; ++b) {
            if (!s.prec(a, b)) continue;
            bool found = false;
            for (Elem c = 0; c < n && !found; ++c)
              if (s.prec(a, c) && s.prec(c, b)) found = true;
            if (!found) { v.holds = false; v.witness = {a, b}; }
          }
        break;
      }
      case Axiom::S2c: {
        // Complete version of S2 over arbitrary families, checked through the
        // meet closure of each row (the empty family asks for a prec 1).
        for (Elem a = 0; a < n && v.holds; ++a) {
          ElemMask meets = detail::meet_closure(alg, s.after(a));
          for (Elem m = 0; m < n && v.holds; ++m)
            if ((meets >> m & 1) && !s.prec(a, m)) { v.holds = false; v.witness = {a, m}; }
        }
        if (base_hold()) v.note = "implied by S1-S4 on a finite algebra";
        break;
      }
      case Axiom::S3c: {
        for (Elem a = 0; a < n && v.holds; ++a) {
          ElemMask joins = detail::join_closure(alg, s.before(a));
          for (Elem j = 0; j < n && v.holds; ++j)
            if ((joins >> j & 1) && !s.prec(j, a)) { v.holds = false; v.witness = {j, a}; }
        }
        if (base_hold()) v.note = "implied by S1-S4 on a finite algebra";
        break;
      }
    }
    report.verdicts.push_back(std::move(v));
  }
  return report;
}

inline bool is_valid_subordination(const SubordinationAlgebra& s) {
  return check_axioms(s, base_axioms()).all_hold();
}

// ---------------------------------------------------------------------------
// Operators

enum class OperatorColour { white, black };

struct OperatorLawError : std::invalid_argument {
  std::string law;
  std::vector<Elem> witness;
  OperatorLawError(std::string l, std::vector<Elem> w)
      : std::invalid_argument("operator law violated: " + l), law(std::move(l)), witness(std::move(w)) {}
};

/// Checks that `op` is additive with op(0) = 0 (a normal diamond). Both
/// colours obey the same laws; they differ in how the relation is induced.
inline MorphismLawReport check_operator_laws(const Algebra& a, const std::vector<Elem>& op) {
  MorphismLawReport rep;
  if (op.size() != a.size()) throw std::invalid_argument("check_operator_laws: table size mismatch");
  for (Elem v : op) require_element(a, v, "check_operator_laws");
  if (op[a.bottom()] != a.bottom()) {
    rep.violated_law = "zero";
    rep.witness = {a.bottom()};
    return rep;
  }
  for (Elem x = 0; x < a.size(); ++x)
    for (Elem y = 0; y < a.size(); ++y)
      if (op[a.join(x, y)] != a.join(op[x], op[y])) {
        rep.violated_law = "join";
        rep.witness = {static_cast<Elem>(x), static_cast<Elem>(y)};
        return rep;
      }
  rep.ok = true;
  return rep;
}

/// Induces a subordination from a normal diamond operator. For the white
/// colour, a prec b iff op(a) <= b. For the black colour op plays the role
/// of the backward diamond and a prec b iff a <= box(b), where box is the
/// dual of op.
inline SubordinationAlgebra from_operator(const Algebra& a, const std::vector<Elem>& op,
                                          OperatorColour colour) {
  MorphismLawReport laws = check_operator_laws(a, op);
  if (!laws.ok) throw OperatorLawError(laws.violated_law, laws.witness);
  SubordinationAlgebra s{a, std::vector<ElemMask>(a.size(), 0)};
  if (colour == OperatorColour::white) {
    for (Elem x = 0; x < a.size(); ++x)
      for (Elem y = 0; y < a.size(); ++y)
        if (a.leq(op[x], y)) s.set_prec(x, y);
  } else {
    // box(b) = not op(not b)
    for (Elem x = 0; x < a.size(); ++x)
      for (Elem y = 0; y < a.size(); ++y)
        if (a.leq(x, a.complement(op[a.complement(y)]))) s.set_prec(x, y);
  }
  return s;
}

/// Recovers the operator from a valid subordination: the white diamond is the
/// least element of each forward row, the black diamond is dual to the
/// greatest element of each backward row.
inline std::vector<Elem> to_operator(const SubordinationAlgebra& s, OperatorColour colour) {
  const Algebra& alg = s.algebra;
  std::vector<Elem> op(alg.size(), 0);
  if (colour == OperatorColour::white) {
    for (Elem a = 0; a < alg.size(); ++a) {
      Elem m = alg.top();
      for (Elem b : elems_of(s.after(a))) m = alg.meet(m, b);
      op[a] = m;
    }
  } else {
    for (Elem b = 0; b < alg.size(); ++b) {
      Elem j = alg.bottom();
      for (Elem x : elems_of(s.before(b))) j = alg.join(j, x);
      // op is the backward diamond: box(b) = j, diamond(a) = not box(not a)
      op[alg.complement(b)] = alg.complement(j);
    }
  }
  return op;
}

/// The forward row of `a` viewed as a filter-valued operator.
inline ElementSet to_multi_operator(const SubordinationAlgebra& s, Elem a) {
  require_element(s.algebra, a, "to_multi_operator");
  return ElementSet{s.algebra, SetTag::filter, elems_of(s.after(a))};
}

struct MultiOperatorReport {
  bool zero_is_everything = false;
  bool meet_law = false;
  std::vector<Elem> witness;  // offending pair for the meet law
  bool ok() const { return zero_is_everything && meet_law; }
};

/// Verifies the filter-valued operator laws: the row of 0 is the whole
/// algebra and the row of a join is the intersection of the rows.
inline MultiOperatorReport verify_multi_operator(const SubordinationAlgebra& s) {
  const Algebra& alg = s.algebra;
  MultiOperatorReport rep;
  ElemMask everything = (alg.size() == 64) ? ~ElemMask{0} : (ElemMask{1} << alg.size()) - 1;
  rep.zero_is_everything = s.after(alg.bottom()) == everything;
  rep.meet_law = true;
  for (Elem a = 0; a < alg.size() && rep.meet_law; ++a)
    for (Elem b = 0; b < alg.size() && rep.meet_law; ++b)
      if (s.after(alg.join(a, b)) != (s.after(a) & s.after(b))) {
        rep.meet_law = false;
        rep.witness = {a, b};
      }
  return rep;
}

// ---------------------------------------------------------------------------
// Morphisms

enum class MorphismKind { weak, white, black, strong };

inline const char* kind_name(MorphismKind k) {
  switch (k) {
    case MorphismKind::weak: return "weak";
    case MorphismKind::white: return "white";
    case MorphismKind::black: return "black";
    case MorphismKind::strong: return "strong";
  }
  return "?";
}

struct MorphismAxiomVerdict {
  bool holds = true;
  std::vector<Elem> witness;
};

struct SubMorphismReport {
  MorphismLawReport boolean_laws;
  MorphismAxiomVerdict w, dia, bdia;

  bool satisfies(MorphismKind k) const {
    if (!boolean_laws.ok || !w.holds) return false;
    switch (k) {
      case MorphismKind::weak: return true;
      case MorphismKind::white: return dia.holds;
      case MorphismKind::black: return bdia.holds;
      case MorphismKind::strong: return dia.holds && bdia.holds;
    }
    return false;
  }
};

/// Evaluates the relation-preservation axiom together with the forward and
/// backward lifting axioms for a Boolean morphism between subordination
/// algebras. All three are always computed so callers can inspect any kind.
inline SubMorphismReport check_morphism(const BooleanMorphism& f, const SubordinationAlgebra& src,
                                        const SubordinationAlgebra& dst) {
  if (!(f.source == src.algebra) || !(f.target == dst.algebra)) {
    throw std::invalid_argument("check_morphism: morphism endpoints do not match the structures");
  }
  SubMorphismReport rep;
  rep.boolean_laws = check_boolean_morphism(f);

  const Elem ns = static_cast<Elem>(src.algebra.size());
  const Elem nt = static_cast<Elem>(dst.algebra.size());

  for (Elem a = 0; a < ns && rep.w.holds; ++a)
    for (Elem b = 0; b < ns && rep.w.holds; ++b)
      if (src.prec(a, b) && !dst.prec(f(a), f(b))) {
        rep.w.holds = false;
        rep.w.witness = {a, b};
      }

  for (Elem a = 0; a < ns && rep.dia.holds; ++a)
    for (Elem c = 0; c < nt && rep.dia.holds; ++c) {
      if (!dst.prec(f(a), c)) continue;
      bool found = false;
      for (Elem b = 0; b < ns && !found; ++b)
        if (src.prec(a, b) && dst.algebra.leq(f(b), c)) found = true;
      if (!found) { rep.dia.holds = false; rep.dia.witness = {a, c}; }
    }

  for (Elem a = 0; a < ns && rep.bdia.holds; ++a)
    for (Elem c = 0; c < nt && rep.bdia.holds; ++c) {
      if (!dst.prec(c, f(a))) continue;
      bool found = false;
      for (Elem b = 0; b < ns && !found; ++b)
        if (src.prec(b, a) && dst.algebra.leq(c, f(b))) found = true;
      if (!found) { rep.bdia.holds = false; rep.bdia.witness = {a, c}; }
    }

  return rep;
}

}  // namespace subord

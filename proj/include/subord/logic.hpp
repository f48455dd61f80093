#pragma once

// Validity of bimodal formulas. Values live in the canonical extension: on a
// finite structure that is the powerset of the dual frame, where the forward
// diamond is the predecessor image and the backward diamond the successor
// image of one accessibility relation.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "subord/duality.hpp"
#include "subord/formula.hpp"
#include "subord/frame.hpp"
#include "subord/omega.hpp"
#include "subord/subordination.hpp"

namespace subord {

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using FrameValuation = std::vector<std::pair<std::string, PointMask>>;

inline PointMask eval_on_frame(const KripkeFrame& f, const Formula& phi, const FrameValuation& v) {
  switch (phi.op) {
    case Fop::verum: return f.all();
    case Fop::falsum: return 0;
    case Fop::var: {
      for (auto& [name, mask] : v)
        if (name == phi.name) return mask;
      throw std::invalid_argument("eval_on_frame: missing variable " + phi.name);
    }
    case Fop::neg: return f.all() & ~eval_on_frame(f, phi.kids[0], v);
    case Fop::conj: return eval_on_frame(f, phi.kids[0], v) & eval_on_frame(f, phi.kids[1], v);
    case Fop::disj: return eval_on_frame(f, phi.kids[0], v) | eval_on_frame(f, phi.kids[1], v);
    case Fop::impl:
      return (f.all() & ~eval_on_frame(f, phi.kids[0], v)) | eval_on_frame(f, phi.kids[1], v);
    case Fop::dia: return f.pre_image(eval_on_frame(f, phi.kids[0], v));
    case Fop::box: return f.all() & ~f.pre_image(f.all() & ~eval_on_frame(f, phi.kids[0], v));
    case Fop::bdia: return f.post_image(eval_on_frame(f, phi.kids[0], v));
    case Fop::bbox: return f.all() & ~f.post_image(f.all() & ~eval_on_frame(f, phi.kids[0], v));
  }
  throw std::logic_error("eval_on_frame: bad op");
}

using AlgebraValuation = std::vector<std::pair<std::string, Elem>>;

/// Value of a formula in the canonical extension of a finite structure under
/// a valuation into the structure itself.
inline Elem eval_on_algebra(const SubordinationAlgebra& s, const Formula& phi,
                            const AlgebraValuation& v) {
  KripkeFrame dual = at(s);
  FrameValuation fv;
  for (auto& [name, e] : v) fv.emplace_back(name, static_cast<PointMask>(e));
  return static_cast<Elem>(eval_on_frame(dual, phi, fv));
}

inline bool satisfies(const SubordinationAlgebra& s, const Formula& phi, const AlgebraValuation& v) {
  KripkeFrame dual = at(s);
  FrameValuation fv;
  for (auto& [name, e] : v) fv.emplace_back(name, static_cast<PointMask>(e));
  return eval_on_frame(dual, phi, fv) == dual.all();
}

struct ValidityReport {
  bool valid = true;
  std::vector<std::pair<std::string, Elem>> counterexample;  // least valuation refuting
  Elem counter_value = 0;
  std::size_t valuations_checked = 0;
};

namespace detail {

template <typename Check>
bool sweep_valuations(const std::vector<std::string>& vars, std::size_t domain, Check&& check,
                      std::vector<std::size_t>& out) {
  // lexicographic order with the first variable most significant
  std::vector<std::size_t> idx(vars.size(), 0);
  while (true) {
    if (!check(idx)) {
      out = idx;
      return false;
    }
    if (vars.empty()) return true;
    std::size_t i = vars.size();
    while (i > 0) {
      --i;
      if (++idx[i] < domain) break;
      idx[i] = 0;
      if (i == 0) return true;
    }
  }
}

}  // namespace detail

/// Exhaustive validity over all valuations into the structure. Refuses runs
/// whose valuation count exceeds the budget instead of sampling.
inline ValidityReport validity(const SubordinationAlgebra& s, const Formula& phi,
                               std::size_t budget = std::size_t{1} << 22) {
  std::vector<std::string> vars = variables(phi);
  double count = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) count *= static_cast<double>(s.algebra.size());
  if (count > static_cast<double>(budget))
    throw BudgetError("validity: " + std::to_string(count) + " valuations exceed the budget of " +
                      std::to_string(budget));

  KripkeFrame dual = at(s);
  ValidityReport rep;
  FrameValuation fv(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) fv[i].first = vars[i];
  std::vector<std::size_t> bad;
  bool ok = detail::sweep_valuations(
      vars, s.algebra.size(),
      [&](const std::vector<std::size_t>& idx) {
        ++rep.valuations_checked;
        for (std::size_t i = 0; i < vars.size(); ++i) fv[i].second = static_cast<PointMask>(idx[i]);
        PointMask val = eval_on_frame(dual, phi, fv);
        if (val == dual.all()) return true;
        rep.counter_value = static_cast<Elem>(val);
        return false;
      },
      bad);
  if (!ok) {
    rep.valid = false;
    for (std::size_t i = 0; i < vars.size(); ++i)
      rep.counterexample.emplace_back(vars[i], static_cast<Elem>(bad[i]));
  }
  return rep;
}

/// Frame validity under every subset valuation, in the classical pointwise
/// semantics with the backward diamond read along the converse relation.
inline ValidityReport validity_on_frame(const KripkeFrame& f, const Formula& phi,
                                        std::size_t budget = std::size_t{1} << 22) {
  return validity(of(f), phi, budget);
}

// ---------------------------------------------------------------------------
// Scheme validity

struct SchemeValidityReport {
  bool valid = true;
  Palette palette = Palette::white;
  std::size_t closure_size = 0;
  // data of a refuting instance, when invalid: terms substituted for the
  // scheme's variables plus the source-element assignment of the term
  // variables
  std::map<std::string, Formula> instance;
  AlgebraValuation instance_valuation;
};

/// Validity of a formula read as a scheme: all substitution instances at
/// once. Decided exactly by evaluating the formula over the modal (or
/// tense) subalgebra generated by the structure inside its extension. On a
/// refutation the generating terms of the refuting valuation are returned;
/// substituting them into the scheme gives a failing instance.
inline SchemeValidityReport scheme_validity(const SubordinationAlgebra& s, const Formula& phi,
                                            std::size_t budget = std::size_t{1} << 22) {
  SchemeValidityReport rep;
  rep.palette = palette_of(phi);
  Modalization m = modalize(s, rep.palette, budget);
  rep.closure_size = m.elements.size();

  std::vector<std::string> vars = variables(phi);
  double count = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) count *= static_cast<double>(m.elements.size());
  if (count > static_cast<double>(budget))
    throw BudgetError("scheme_validity: valuation sweep exceeds the budget");

  const KripkeFrame& dual = m.extension.dual;
  FrameValuation fv(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) fv[i].first = vars[i];
  std::vector<std::size_t> bad;
  bool ok = detail::sweep_valuations(
      vars, m.elements.size(),
      [&](const std::vector<std::size_t>& idx) {
        for (std::size_t i = 0; i < vars.size(); ++i)
          fv[i].second = static_cast<PointMask>(m.elements[idx[i]]);
        return eval_on_frame(dual, phi, fv) == dual.all();
      },
      bad);
  if (!ok) {
    rep.valid = false;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      Elem value = m.elements[bad[i]];
      rep.instance.emplace(vars[i], m.term_of.at(value));
    }
    for (Elem b = 0; b < s.algebra.size(); ++b)
      rep.instance_valuation.emplace_back(generator_var_name(b), b);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Syntactic classification

struct SyntaxClass {
  bool closed = false;
  bool open = false;
  bool positive = false;
  bool negative = false;
  bool s_positive = false;
  bool s_negative = false;
  bool g_closed = false;
  bool g_open = false;
  bool strongly_positive = false;
  bool s_untied = false;
  bool s_sahlqvist = false;
  bool sahlqvist = false;
};

namespace detail {

inline bool is_literal(const Formula& f) {
  return f.op == Fop::verum || f.op == Fop::falsum || f.op == Fop::var ||
         (f.op == Fop::neg && f.kids[0].op == Fop::var);
}

// all predicates below expect negation normal form
inline bool cls_closed(const Formula& f) {
  if (is_literal(f)) return true;
  switch (f.op) {
    case Fop::conj:
    case Fop::disj: return cls_closed(f.kids[0]) && cls_closed(f.kids[1]);
    case Fop::dia:
    case Fop::bdia: return cls_closed(f.kids[0]);
    default: return false;
  }
}

inline bool cls_open(const Formula& f) {
  if (is_literal(f)) return true;
  switch (f.op) {
    case Fop::conj:
    case Fop::disj: return cls_open(f.kids[0]) && cls_open(f.kids[1]);
    case Fop::box:
    case Fop::bbox: return cls_open(f.kids[0]);
    default: return false;
  }
}

inline bool cls_positive(const Formula& f) {
  switch (f.op) {
    case Fop::verum:
    case Fop::falsum: return true;
    case Fop::var: return true;
    case Fop::neg: return false;
    case Fop::conj:
    case Fop::disj: return cls_positive(f.kids[0]) && cls_positive(f.kids[1]);
    case Fop::dia:
    case Fop::box:
    case Fop::bdia:
    case Fop::bbox: return cls_positive(f.kids[0]);
    default: return false;
  }
}

inline bool cls_negative(const Formula& f) {
  switch (f.op) {
    case Fop::verum:
    case Fop::falsum: return true;
    case Fop::var: return false;
    case Fop::neg: return f.kids[0].op == Fop::var;
    case Fop::conj:
    case Fop::disj: return cls_negative(f.kids[0]) && cls_negative(f.kids[1]);
    case Fop::dia:
    case Fop::box:
    case Fop::bdia:
    case Fop::bbox: return cls_negative(f.kids[0]);
    default: return false;
  }
}

inline bool cls_s_positive(const Formula& f) {
  if (cls_closed(f) && cls_positive(f)) return true;
  switch (f.op) {
    case Fop::conj:
    case Fop::disj: return cls_s_positive(f.kids[0]) && cls_s_positive(f.kids[1]);
    case Fop::box:
    case Fop::bbox: return cls_s_positive(f.kids[0]);
    default: return false;
  }
}

inline bool cls_s_negative(const Formula& f) {
  if (cls_open(f) && cls_negative(f)) return true;
  switch (f.op) {
    case Fop::conj:
    case Fop::disj: return cls_s_negative(f.kids[0]) && cls_s_negative(f.kids[1]);
    case Fop::dia:
    case Fop::bdia: return cls_s_negative(f.kids[0]);
    default: return false;
  }
}

inline bool cls_g_closed(const Formula& f) {
  if (cls_closed(f)) return true;
  switch (f.op) {
    case Fop::conj:
    case Fop::disj: return cls_g_closed(f.kids[0]) && cls_g_closed(f.kids[1]);
    case Fop::box:
    case Fop::bbox: return cls_g_closed(f.kids[0]);
    default: return false;
  }
}

inline bool cls_g_open(const Formula& f) {
  if (cls_open(f)) return true;
  switch (f.op) {
    case Fop::conj:
    case Fop::disj: return cls_g_open(f.kids[0]) && cls_g_open(f.kids[1]);
    case Fop::dia:
    case Fop::bdia: return cls_g_open(f.kids[0]);
    default: return false;
  }
}

inline bool cls_boxed_var(const Formula& f) {
  if (f.op == Fop::var) return true;
  if (f.op == Fop::box || f.op == Fop::bbox) return cls_boxed_var(f.kids[0]);
  return false;
}

inline bool cls_strongly_positive(const Formula& f) {
  if (cls_boxed_var(f)) return true;
  if (f.op == Fop::conj) return cls_strongly_positive(f.kids[0]) && cls_strongly_positive(f.kids[1]);
  return false;
}

inline bool cls_s_untied(const Formula& f) {
  if (cls_strongly_positive(f) || cls_s_negative(f)) return true;
  switch (f.op) {
    case Fop::conj: return cls_s_untied(f.kids[0]) && cls_s_untied(f.kids[1]);
    case Fop::dia:
    case Fop::bdia: return cls_s_untied(f.kids[0]);
    default: return false;
  }
}

// classical untied antecedents: boxed atoms and negative formulas combined
// with conjunction, disjunction and the diamonds
inline bool cls_untied(const Formula& f) {
  if (f.op == Fop::verum || f.op == Fop::falsum) return true;
  if (cls_boxed_var(f) || cls_negative(f)) return true;
  switch (f.op) {
    case Fop::conj:
    case Fop::disj: return cls_untied(f.kids[0]) && cls_untied(f.kids[1]);
    case Fop::dia:
    case Fop::bdia: return cls_untied(f.kids[0]);
    default: return false;
  }
}

// the two implication-shape classifiers work on the surface tree so the
// antecedent of -> is visible; prefixes of boxes and lattice combinations
// of implications are accepted
inline bool cls_s_sahlqvist(const Formula& f) {
  switch (f.op) {
    case Fop::box:
    case Fop::bbox: return cls_s_sahlqvist(f.kids[0]);
    case Fop::impl: return cls_s_untied(nnf(f.kids[0])) && cls_s_positive(nnf(f.kids[1]));
    case Fop::conj:
    case Fop::disj: return cls_s_sahlqvist(f.kids[0]) && cls_s_sahlqvist(f.kids[1]);
    default: return false;
  }
}

inline bool cls_sahlqvist(const Formula& f) {
  switch (f.op) {
    case Fop::box:
    case Fop::bbox: return cls_sahlqvist(f.kids[0]);
    case Fop::impl: return cls_untied(nnf(f.kids[0])) && cls_positive(nnf(f.kids[1]));
    case Fop::conj:
    case Fop::disj: return cls_sahlqvist(f.kids[0]) && cls_sahlqvist(f.kids[1]);
    default: return cls_positive(nnf(f));  // a positive formula is the consequent of a trivial implication
  }
}

}  // namespace detail

inline SyntaxClass classify(const Formula& phi) {
  Formula n = nnf(phi);
  SyntaxClass c;
  c.closed = detail::cls_closed(n);
  c.open = detail::cls_open(n);
  c.positive = detail::cls_positive(n);
  c.negative = detail::cls_negative(n);
  c.s_positive = detail::cls_s_positive(n);
  c.s_negative = detail::cls_s_negative(n);
  c.g_closed = detail::cls_g_closed(n);
  c.g_open = detail::cls_g_open(n);
  c.strongly_positive = detail::cls_strongly_positive(n);
  c.s_untied = detail::cls_s_untied(n);
  c.s_sahlqvist = detail::cls_s_sahlqvist(phi);
  c.sahlqvist = detail::cls_sahlqvist(phi);
  return c;
}

// ---------------------------------------------------------------------------
// Tense structure

struct TenseReport {
  bool k_dia = true;
  bool k_bdia = true;
  bool t1 = true;  // p implies box bdia p
  bool t2 = true;  // bdia box p implies p
  FrameValuation witness;
  bool tense() const { return k_dia && k_bdia && t1 && t2; }
};

namespace detail {

inline PointMask eval_two_relations(const KripkeFrame& fwd, const KripkeFrame& bwd,
                                    const Formula& phi, const FrameValuation& v) {
  switch (phi.op) {
    case Fop::dia: return fwd.pre_image(eval_two_relations(fwd, bwd, phi.kids[0], v));
    case Fop::box:
      return fwd.all() & ~fwd.pre_image(fwd.all() & ~eval_two_relations(fwd, bwd, phi.kids[0], v));
    case Fop::bdia: return bwd.pre_image(eval_two_relations(fwd, bwd, phi.kids[0], v));
    case Fop::bbox:
      return bwd.all() & ~bwd.pre_image(bwd.all() & ~eval_two_relations(fwd, bwd, phi.kids[0], v));
    case Fop::verum: return fwd.all();
    case Fop::falsum: return 0;
    case Fop::var: {
      for (auto& [name, mask] : v)
        if (name == phi.name) return mask;
      throw std::invalid_argument("eval_two_relations: missing variable");
    }
    case Fop::neg: return fwd.all() & ~eval_two_relations(fwd, bwd, phi.kids[0], v);
    case Fop::conj:
      return eval_two_relations(fwd, bwd, phi.kids[0], v) & eval_two_relations(fwd, bwd, phi.kids[1], v);
    case Fop::disj:
      return eval_two_relations(fwd, bwd, phi.kids[0], v) | eval_two_relations(fwd, bwd, phi.kids[1], v);
    case Fop::impl:
      return (fwd.all() & ~eval_two_relations(fwd, bwd, phi.kids[0], v)) |
             eval_two_relations(fwd, bwd, phi.kids[1], v);
  }
  throw std::logic_error("eval_two_relations: bad op");
}

}  // namespace detail

/// Semantic check of the tense axioms for a pair of accessibility relations
/// on the same point set; the pair passes exactly when the second relation
/// is the converse of the first.
inline TenseReport tense_check(const KripkeFrame& fwd, const KripkeFrame& bwd) {
  if (fwd.size() != bwd.size()) throw std::invalid_argument("tense_check: point sets differ");
  TenseReport rep;
  Formula k_dia = parse_formula("[](p -> q) -> ([]p -> []q)");
  Formula k_bdia = parse_formula("[+](p -> q) -> ([+]p -> [+]q)");
  Formula t1 = parse_formula("p -> [] <+> p");
  Formula t2 = parse_formula("<+> [] p -> p");
  const PointMask all = fwd.all();
  for (PointMask p = 0; p <= all; ++p) {
    for (PointMask q = 0; q <= all; ++q) {
      FrameValuation v{{"p", p}, {"q", q}};
      if (detail::eval_two_relations(fwd, bwd, k_dia, v) != all) { rep.k_dia = false; rep.witness = v; }
      if (detail::eval_two_relations(fwd, bwd, k_bdia, v) != all) { rep.k_bdia = false; rep.witness = v; }
      if (q != 0) continue;  // one-variable axioms
      if (detail::eval_two_relations(fwd, bwd, t1, v) != all && rep.t1) { rep.t1 = false; rep.witness = v; }
      if (detail::eval_two_relations(fwd, bwd, t2, v) != all && rep.t2) { rep.t2 = false; rep.witness = v; }
    }
    if (all == ~PointMask{0}) break;
  }
  return rep;
}

/// Tense check for a finite bimodal algebra given by two operator tables.
inline TenseReport tense_check(const Algebra& a, const std::vector<Elem>& dia,
                               const std::vector<Elem>& bdia) {
  MorphismLawReport l1 = check_operator_laws(a, dia);
  MorphismLawReport l2 = check_operator_laws(a, bdia);
  if (!l1.ok || !l2.ok) throw std::invalid_argument("tense_check: operator laws violated");
  KripkeFrame fwd = make_frame(a.atoms, {}), bwd = make_frame(a.atoms, {});
  for (int x = 0; x < a.atoms; ++x)
    for (int y = 0; y < a.atoms; ++y) {
      if (a.leq(a.atom(x), dia[a.atom(y)])) fwd.add_edge(x, y);
      if (a.leq(a.atom(x), bdia[a.atom(y)])) bwd.add_edge(x, y);
    }
  return tense_check(fwd, bwd);
}

}  // namespace subord

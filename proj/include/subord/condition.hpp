#pragma once

// First-order condition languages: conditions on the accessibility relation
// of a point space (point variables, relation powers, equality) and
// conditions in the language of the algebras themselves (element variables,
// Boolean terms, the order, relation powers and the disjointness shortcut).
// Compact text syntax mirrors the formula grammar, with E/A quantifiers.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "subord/algebra.hpp"
#include "subord/frame.hpp"
#include "subord/omega.hpp"
#include "subord/subordination.hpp"

namespace subord {

// ---------------------------------------------------------------------------
// Conditions on point spaces

enum class FcOp { verum, falsum, rel, eq, neg, conj, disj, impl, exists, forall };

struct FrameCondition {
  FcOp op = FcOp::verum;
  int power = 1;                     // for rel: number of steps
  std::string lhs, rhs;              // rel and eq operands; lhs doubles as the bound variable
  std::vector<FrameCondition> kids;

  bool operator==(const FrameCondition& o) const {
    return op == o.op && power == o.power && lhs == o.lhs && rhs == o.rhs && kids == o.kids;
  }
};

inline FrameCondition fc_true() { return {}; }
inline FrameCondition fc_false() { return {FcOp::falsum, 1, "", "", {}}; }
inline FrameCondition fc_rel(std::string x, std::string y, int power = 1) {
  return {FcOp::rel, power, std::move(x), std::move(y), {}};
}
inline FrameCondition fc_eq(std::string x, std::string y) {
  return {FcOp::eq, 1, std::move(x), std::move(y), {}};
}
inline FrameCondition fc_not(FrameCondition a) { return {FcOp::neg, 1, "", "", {std::move(a)}}; }
inline FrameCondition fc_and(FrameCondition a, FrameCondition b) {
  return {FcOp::conj, 1, "", "", {std::move(a), std::move(b)}};
}
inline FrameCondition fc_or(FrameCondition a, FrameCondition b) {
  return {FcOp::disj, 1, "", "", {std::move(a), std::move(b)}};
}
inline FrameCondition fc_imp(FrameCondition a, FrameCondition b) {
  return {FcOp::impl, 1, "", "", {std::move(a), std::move(b)}};
}
inline FrameCondition fc_exists(std::string v, FrameCondition body) {
  return {FcOp::exists, 1, std::move(v), "", {std::move(body)}};
}
inline FrameCondition fc_forall(std::string v, FrameCondition body) {
  return {FcOp::forall, 1, std::move(v), "", {std::move(body)}};
}

namespace detail {

inline void frame_condition_stats(const FrameCondition& c, int& quantifiers, int& power_sum,
                                  std::vector<std::string>& free,
                                  std::vector<std::string> bound) {
  auto note_free = [&](const std::string& v) {
    for (auto& b : bound)
      if (b == v) return;
    for (auto& f : free)
      if (f == v) return;
    free.push_back(v);
  };
  switch (c.op) {
    case FcOp::rel:
      power_sum += c.power;
      note_free(c.lhs);
      note_free(c.rhs);
      break;
    case FcOp::eq:
      note_free(c.lhs);
      note_free(c.rhs);
      break;
    case FcOp::exists:
    case FcOp::forall:
      ++quantifiers;
      bound.push_back(c.lhs);
      frame_condition_stats(c.kids[0], quantifiers, power_sum, free, bound);
      return;
    default: break;
  }
  for (auto& k : c.kids) frame_condition_stats(k, quantifiers, power_sum, free, bound);
}

}  // namespace detail

inline std::vector<std::string> free_point_variables(const FrameCondition& c) {
  int q = 0, p = 0;
  std::vector<std::string> free;
  detail::frame_condition_stats(c, q, p, free, {});
  return free;
}

/// Quantifier depth cap: brute-force evaluation is polynomial of this degree
/// in the point count.
inline constexpr int kMaxConditionVariables = 6;

namespace detail {

inline bool frame_reaches(const KripkeFrame& f, int x, int y, int power) {
  if (power == 0) return x == y;
  if (power == 1) return f.edge(x, y);
  for (int m = 0; m < f.size(); ++m)
    if (f.edge(x, m) && frame_reaches(f, m, y, power - 1)) return true;
  return false;
}

inline bool eval_fc(const KripkeFrame& f, const FrameCondition& c,
                    std::map<std::string, int>& env) {
  switch (c.op) {
    case FcOp::verum: return true;
    case FcOp::falsum: return false;
    case FcOp::rel: {
      auto a = env.find(c.lhs), b = env.find(c.rhs);
      if (a == env.end() || b == env.end())
        throw std::invalid_argument("eval_frame_condition: free variable");
      return frame_reaches(f, a->second, b->second, c.power);
    }
    case FcOp::eq: {
      auto a = env.find(c.lhs), b = env.find(c.rhs);
      if (a == env.end() || b == env.end())
        throw std::invalid_argument("eval_frame_condition: free variable");
      return a->second == b->second;
    }
    case FcOp::neg: return !eval_fc(f, c.kids[0], env);
    case FcOp::conj: return eval_fc(f, c.kids[0], env) && eval_fc(f, c.kids[1], env);
    case FcOp::disj: return eval_fc(f, c.kids[0], env) || eval_fc(f, c.kids[1], env);
    case FcOp::impl: return !eval_fc(f, c.kids[0], env) || eval_fc(f, c.kids[1], env);
    case FcOp::exists:
    case FcOp::forall: {
      bool want = c.op == FcOp::exists;
      for (int p = 0; p < f.size(); ++p) {
        auto saved = env.find(c.lhs) != env.end() ? std::optional<int>(env[c.lhs]) : std::nullopt;
        env[c.lhs] = p;
        bool r = eval_fc(f, c.kids[0], env);
        if (saved) env[c.lhs] = *saved; else env.erase(c.lhs);
        if (r == want) return want;
      }
      return !want;
    }
  }
  throw std::logic_error("eval_fc: bad op");
}

}  // namespace detail

/// Brute-force evaluation of a closed condition over the points of a frame.
inline bool eval_frame_condition(const FrameCondition& c, const KripkeFrame& f) {
  if (!free_point_variables(c).empty())
    throw std::invalid_argument("eval_frame_condition: condition has free variables");
  int q = 0, p = 0;
  std::vector<std::string> free;
  detail::frame_condition_stats(c, q, p, free, {});
  if (q > kMaxConditionVariables)
    throw std::invalid_argument("eval_frame_condition: quantifier depth beyond the cap");
  std::map<std::string, int> env;
  return detail::eval_fc(f, c, env);
}

namespace detail {

inline bool omega_reaches(const RelationSpec& r, const OmegaPoint& x, const OmegaPoint& y,
                          int power, const std::vector<OmegaPoint>& domain) {
  if (power == 0) return x == y;
  if (power == 1) return related(r, x, y);
  for (const OmegaPoint& m : domain)
    if (related(r, x, m) && omega_reaches(r, m, y, power - 1, domain)) return true;
  return false;
}

inline bool eval_fc_omega(const RelationSpec& r, const FrameCondition& c,
                          const std::vector<OmegaPoint>& domain,
                          std::map<std::string, OmegaPoint>& env) {
  switch (c.op) {
    case FcOp::verum: return true;
    case FcOp::falsum: return false;
    case FcOp::rel:
      return omega_reaches(r, env.at(c.lhs), env.at(c.rhs), c.power, domain);
    case FcOp::eq: return env.at(c.lhs) == env.at(c.rhs);
    case FcOp::neg: return !eval_fc_omega(r, c.kids[0], domain, env);
    case FcOp::conj:
      return eval_fc_omega(r, c.kids[0], domain, env) && eval_fc_omega(r, c.kids[1], domain, env);
    case FcOp::disj:
      return eval_fc_omega(r, c.kids[0], domain, env) || eval_fc_omega(r, c.kids[1], domain, env);
    case FcOp::impl:
      return !eval_fc_omega(r, c.kids[0], domain, env) || eval_fc_omega(r, c.kids[1], domain, env);
    case FcOp::exists:
    case FcOp::forall: {
      bool want = c.op == FcOp::exists;
      for (const OmegaPoint& p : domain) {
        auto saved = env.find(c.lhs) != env.end() ? std::optional<OmegaPoint>(env[c.lhs])
                                                  : std::nullopt;
        env[c.lhs] = p;
        bool res = eval_fc_omega(r, c.kids[0], domain, env);
        if (saved) env[c.lhs] = *saved; else env.erase(c.lhs);
        if (res == want) return want;
      }
      return !want;
    }
  }
  throw std::logic_error("eval_fc_omega: bad op");
}

}  // namespace detail

/// Evaluation over the compactified naturals. Beyond the base pairs of the
/// relation all naturals are interchangeable, so quantifiers range over a
/// window holding the base data plus one fresh natural per quantifier and
/// per composition step, together with the limit point; a violation exists
/// iff one exists in that window. `extra_window` widens the window, which
/// must not change the verdict; tests rely on that.
inline bool eval_frame_condition(const FrameCondition& c, const RelationSpec& r,
                                 Nat extra_window = 0) {
  if (!free_point_variables(c).empty())
    throw std::invalid_argument("eval_frame_condition: condition has free variables");
  int quantifiers = 0, power_sum = 0;
  std::vector<std::string> free;
  detail::frame_condition_stats(c, quantifiers, power_sum, free, {});
  Nat window = r.max_base() + static_cast<Nat>(quantifiers + power_sum) + 2 + extra_window;
  std::vector<OmegaPoint> domain;
  for (Nat n = 0; n <= window; ++n) domain.push_back(nat_point(n));
  domain.push_back(limit_point());
  std::map<std::string, OmegaPoint> env;
  return detail::eval_fc_omega(r, c, domain, env);
}

// ---------------------------------------------------------------------------
// Conditions on algebras

enum class TermOp { var, zero, one, tnot, tand, tor };

struct BoolTerm {
  TermOp op = TermOp::var;
  std::string var;
  std::vector<BoolTerm> kids;

  bool operator==(const BoolTerm& o) const {
    return op == o.op && var == o.var && kids == o.kids;
  }
};

inline BoolTerm t_var(std::string n) { return {TermOp::var, std::move(n), {}}; }
inline BoolTerm t_zero() { return {TermOp::zero, "", {}}; }
inline BoolTerm t_one() { return {TermOp::one, "", {}}; }
inline BoolTerm t_not(BoolTerm a) { return {TermOp::tnot, "", {std::move(a)}}; }
inline BoolTerm t_and(BoolTerm a, BoolTerm b) { return {TermOp::tand, "", {std::move(a), std::move(b)}}; }
inline BoolTerm t_or(BoolTerm a, BoolTerm b) { return {TermOp::tor, "", {std::move(a), std::move(b)}}; }

enum class ScOp { verum, falsum, leq, prec, perp, neg, conj, disj, impl, exists, forall };

struct SubCondition {
  ScOp op = ScOp::verum;
  int power = 1;                   // for prec and perp
  std::string bound;               // quantifier variable
  std::vector<BoolTerm> terms;     // the two operands of an atom
  std::vector<SubCondition> kids;

  bool operator==(const SubCondition& o) const {
    return op == o.op && power == o.power && bound == o.bound && terms == o.terms && kids == o.kids;
  }
};

inline SubCondition sc_true() { return {}; }
inline SubCondition sc_false() { return {ScOp::falsum, 1, "", {}, {}}; }
inline SubCondition sc_leq(BoolTerm a, BoolTerm b) {
  return {ScOp::leq, 1, "", {std::move(a), std::move(b)}, {}};
}
inline SubCondition sc_prec(BoolTerm a, BoolTerm b, int power = 1) {
  return {ScOp::prec, power, "", {std::move(a), std::move(b)}, {}};
}
inline SubCondition sc_perp(BoolTerm a, BoolTerm b, int power = 1) {
  return {ScOp::perp, power, "", {std::move(a), std::move(b)}, {}};
}
inline SubCondition sc_not(SubCondition a) { return {ScOp::neg, 1, "", {}, {std::move(a)}}; }
inline SubCondition sc_and(SubCondition a, SubCondition b) {
  return {ScOp::conj, 1, "", {}, {std::move(a), std::move(b)}};
}
inline SubCondition sc_or(SubCondition a, SubCondition b) {
  return {ScOp::disj, 1, "", {}, {std::move(a), std::move(b)}};
}
inline SubCondition sc_imp(SubCondition a, SubCondition b) {
  return {ScOp::impl, 1, "", {}, {std::move(a), std::move(b)}};
}
inline SubCondition sc_exists(std::string v, SubCondition body) {
  return {ScOp::exists, 1, std::move(v), {}, {std::move(body)}};
}
inline SubCondition sc_forall(std::string v, SubCondition body) {
  return {ScOp::forall, 1, std::move(v), {}, {std::move(body)}};
}

inline SubCondition sc_and_all(std::vector<SubCondition> parts) {
  if (parts.empty()) return sc_true();
  SubCondition out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out = sc_and(std::move(out), std::move(parts[i]));
  return out;
}

using ElemEnv = std::map<std::string, Elem>;

inline Elem eval_term(const Algebra& a, const BoolTerm& t, const ElemEnv& env) {
  switch (t.op) {
    case TermOp::var: {
      auto it = env.find(t.var);
      if (it == env.end()) throw std::invalid_argument("eval_term: free variable " + t.var);
      return it->second;
    }
    case TermOp::zero: return a.bottom();
    case TermOp::one: return a.top();
    case TermOp::tnot: return a.complement(eval_term(a, t.kids[0], env));
    case TermOp::tand: return a.meet(eval_term(a, t.kids[0], env), eval_term(a, t.kids[1], env));
    case TermOp::tor: return a.join(eval_term(a, t.kids[0], env), eval_term(a, t.kids[1], env));
  }
  throw std::logic_error("eval_term: bad op");
}

namespace detail {

inline bool prec_power(const SubordinationAlgebra& s, Elem a, Elem b, int power) {
  if (power == 0) return s.algebra.leq(a, b);
  if (power == 1) return s.prec(a, b);
  for (Elem m = 0; m < s.algebra.size(); ++m)
    if (s.prec(a, m) && prec_power(s, m, b, power - 1)) return true;
  return false;
}

inline bool eval_sc(const SubordinationAlgebra& s, const SubCondition& c, ElemEnv& env) {
  switch (c.op) {
    case ScOp::verum: return true;
    case ScOp::falsum: return false;
    case ScOp::leq:
      return s.algebra.leq(eval_term(s.algebra, c.terms[0], env), eval_term(s.algebra, c.terms[1], env));
    case ScOp::prec:
      return prec_power(s, eval_term(s.algebra, c.terms[0], env), eval_term(s.algebra, c.terms[1], env),
                        c.power);
    case ScOp::perp:
      // disjointness at a distance: lhs lies k steps below the complement
      return prec_power(s, eval_term(s.algebra, c.terms[0], env),
                        s.algebra.complement(eval_term(s.algebra, c.terms[1], env)), c.power);
    case ScOp::neg: return !eval_sc(s, c.kids[0], env);
    case ScOp::conj: return eval_sc(s, c.kids[0], env) && eval_sc(s, c.kids[1], env);
    case ScOp::disj: return eval_sc(s, c.kids[0], env) || eval_sc(s, c.kids[1], env);
    case ScOp::impl: return !eval_sc(s, c.kids[0], env) || eval_sc(s, c.kids[1], env);
    case ScOp::exists:
    case ScOp::forall: {
      bool want = c.op == ScOp::exists;
      for (Elem e = 0; e < s.algebra.size(); ++e) {
        auto saved = env.find(c.bound) != env.end() ? std::optional<Elem>(env[c.bound]) : std::nullopt;
        env[c.bound] = e;
        bool r = eval_sc(s, c.kids[0], env);
        if (saved) env[c.bound] = *saved; else env.erase(c.bound);
        if (r == want) return want;
      }
      return !want;
    }
  }
  throw std::logic_error("eval_sc: bad op");
}

inline void sub_condition_free(const SubCondition& c, std::vector<std::string>& free,
                               std::vector<std::string> bound) {
  auto note_term = [&](const BoolTerm& t, auto&& self) -> void {
    if (t.op == TermOp::var) {
      for (auto& b : bound)
        if (b == t.var) return;
      for (auto& f : free)
        if (f == t.var) return;
      free.push_back(t.var);
    }
    for (auto& k : t.kids) self(k, self);
  };
  for (auto& t : c.terms) note_term(t, note_term);
  if (c.op == ScOp::exists || c.op == ScOp::forall) {
    bound.push_back(c.bound);
    sub_condition_free(c.kids[0], free, bound);
    return;
  }
  for (auto& k : c.kids) sub_condition_free(k, free, bound);
}

}  // namespace detail

inline std::vector<std::string> free_element_variables(const SubCondition& c) {
  std::vector<std::string> free;
  detail::sub_condition_free(c, free, {});
  return free;
}

/// Brute-force evaluation over all elements, under an assignment of the free
/// variables (a closed sentence needs none).
inline bool eval_sub_condition(const SubCondition& c, const SubordinationAlgebra& s,
                               const ElemEnv& assignment = {}) {
  for (auto& v : free_element_variables(c))
    if (!assignment.count(v))
      throw std::invalid_argument("eval_sub_condition: free variable " + v);
  ElemEnv env = assignment;
  return detail::eval_sc(s, c, env);
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline void print_term(const BoolTerm& t, std::string& out) {
  switch (t.op) {
    case TermOp::var: out += t.var; break;
    case TermOp::zero: out += '0'; break;
    case TermOp::one: out += '1'; break;
    case TermOp::tnot:
      out += '~';
      if (t.kids[0].op == TermOp::tand || t.kids[0].op == TermOp::tor) {
        out += '(';
        print_term(t.kids[0], out);
        out += ')';
      } else {
        print_term(t.kids[0], out);
      }
      break;
    case TermOp::tand:
    case TermOp::tor: {
      out += '(';
      print_term(t.kids[0], out);
      out += t.op == TermOp::tand ? " & " : " | ";
      print_term(t.kids[1], out);
      out += ')';
      break;
    }
  }
}

inline void print_sc(const SubCondition& c, std::string& out) {
  switch (c.op) {
    case ScOp::verum: out += 'T'; break;
    case ScOp::falsum: out += 'F'; break;
    case ScOp::leq:
      print_term(c.terms[0], out);
      out += " <= ";
      print_term(c.terms[1], out);
      break;
    case ScOp::prec:
      print_term(c.terms[0], out);
      out += " -<";
      if (c.power != 1) out += std::to_string(c.power);
      out += ' ';
      print_term(c.terms[1], out);
      break;
    case ScOp::perp:
      print_term(c.terms[0], out);
      out += " _|_";
      if (c.power != 1) out += std::to_string(c.power);
      out += ' ';
      print_term(c.terms[1], out);
      break;
    case ScOp::neg:
      out += "~(";
      print_sc(c.kids[0], out);
      out += ')';
      break;
    case ScOp::conj:
    case ScOp::disj:
    case ScOp::impl: {
      out += '(';
      print_sc(c.kids[0], out);
      out += c.op == ScOp::conj ? " & " : c.op == ScOp::disj ? " | " : " -> ";
      print_sc(c.kids[1], out);
      out += ')';
      break;
    }
    case ScOp::exists:
    case ScOp::forall:
      out += c.op == ScOp::exists ? 'E' : 'A';
      out += ' ';
      out += c.bound;
      out += ": ";
      print_sc(c.kids[0], out);
      break;
  }
}

inline void print_fc(const FrameCondition& c, std::string& out) {
  switch (c.op) {
    case FcOp::verum: out += 'T'; break;
    case FcOp::falsum: out += 'F'; break;
    case FcOp::rel:
      out += c.lhs;
      out += " R";
      if (c.power != 1) out += std::to_string(c.power);
      out += ' ';
      out += c.rhs;
      break;
    case FcOp::eq:
      out += c.lhs;
      out += " = ";
      out += c.rhs;
      break;
    case FcOp::neg:
      out += "~(";
      print_fc(c.kids[0], out);
      out += ')';
      break;
    case FcOp::conj:
    case FcOp::disj:
    case FcOp::impl: {
      out += '(';
      print_fc(c.kids[0], out);
      out += c.op == FcOp::conj ? " & " : c.op == FcOp::disj ? " | " : " -> ";
      print_fc(c.kids[1], out);
      out += ')';
      break;
    }
    case FcOp::exists:
    case FcOp::forall:
      out += c.op == FcOp::exists ? 'E' : 'A';
      out += ' ';
      out += c.lhs;
      out += ": ";
      print_fc(c.kids[0], out);
      break;
  }
}

}  // namespace detail

inline std::string print_condition(const FrameCondition& c) {
  std::string out;
  detail::print_fc(c, out);
  return out;
}

inline std::string print_condition(const SubCondition& c) {
  std::string out;
  detail::print_sc(c, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

struct ConditionParser {
  const std::string& text;
  std::size_t pos = 0;

  explicit ConditionParser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n')) ++pos;
  }
  bool eat(const char* tok) {
    skip_ws();
    std::size_t len = std::char_traits<char>::length(tok);
    if (text.compare(pos, len, tok) == 0) {
      pos += len;
      return true;
    }
    return false;
  }
  bool ident_char(std::size_t at) const {
    if (at >= text.size()) return false;
    char ch = text[at];
    return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
           ch == '_' || ch == '\'';
  }
  std::string ident() {
    skip_ws();
    if (pos >= text.size()) throw ParseError("expected identifier", pos);
    char c = text[pos];
    if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'))
      throw ParseError("expected identifier", pos);
    std::size_t start = pos;
    while (ident_char(pos)) ++pos;
    return text.substr(start, pos - start);
  }
  int number_suffix() {  // optional digits directly after an operator
    int v = 0;
    bool any = false;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      v = v * 10 + (text[pos] - '0');
      ++pos;
      any = true;
    }
    return any ? v : 1;
  }

  // ---- frame conditions -------------------------------------------------

  FrameCondition fc_implication() {
    FrameCondition l = fc_disjunction();
    if (eat("->")) return fc_imp(std::move(l), fc_implication());
    return l;
  }
  FrameCondition fc_disjunction() {
    FrameCondition l = fc_conjunction();
    while (eat("|")) l = fc_or(std::move(l), fc_conjunction());
    return l;
  }
  FrameCondition fc_conjunction() {
    FrameCondition l = fc_primary();
    while (eat("&")) l = fc_and(std::move(l), fc_primary());
    return l;
  }
  FrameCondition fc_primary() {
    skip_ws();
    if (eat("~")) return fc_not(fc_primary());
    if (eat("(")) {
      FrameCondition inner = fc_implication();
      if (!eat(")")) throw ParseError("expected ')'", pos);
      return inner;
    }
    if (pos < text.size() && (text[pos] == 'A' || text[pos] == 'E') && !ident_char(pos + 1)) {
      bool uni = text[pos] == 'A';
      ++pos;
      std::string v = ident();
      if (!eat(":")) throw ParseError("expected ':'", pos);
      FrameCondition body = fc_implication();
      return uni ? fc_forall(v, std::move(body)) : fc_exists(v, std::move(body));
    }
    if (pos < text.size() && text[pos] == 'T' && !ident_char(pos + 1)) { ++pos; return fc_true(); }
    if (pos < text.size() && text[pos] == 'F' && !ident_char(pos + 1)) { ++pos; return fc_false(); }
    std::string x = ident();
    skip_ws();
    if (eat("=")) return fc_eq(x, ident());
    if (eat("R")) {
      int k = number_suffix();
      return fc_rel(x, ident(), k);
    }
    throw ParseError("expected 'R' or '=' after a point variable", pos);
  }

  // ---- algebra conditions ------------------------------------------------

  SubCondition sc_implication() {
    SubCondition l = sc_disjunction();
    if (eat("->")) return sc_imp(std::move(l), sc_implication());
    return l;
  }
  SubCondition sc_disjunction() {
    SubCondition l = sc_conjunction();
    while (true) {
      skip_ws();
      // an '|' that begins the disjointness atom '_|_' must not be eaten here
      if (pos < text.size() && text[pos] == '|' && text.compare(pos, 3, "_|_") != 0) {
        ++pos;
        l = sc_or(std::move(l), sc_conjunction());
      } else {
        break;
      }
    }
    return l;
  }
  SubCondition sc_conjunction() {
    SubCondition l = sc_primary();
    while (eat("&")) l = sc_primary_continue(std::move(l));
    return l;
  }
  SubCondition sc_primary_continue(SubCondition l) { return sc_and(std::move(l), sc_primary()); }
  SubCondition sc_primary() {
    skip_ws();
    if (pos < text.size() && (text[pos] == 'A' || text[pos] == 'E') && !ident_char(pos + 1)) {
      bool uni = text[pos] == 'A';
      ++pos;
      std::string v = ident();
      if (!eat(":")) throw ParseError("expected ':'", pos);
      SubCondition body = sc_implication();
      return uni ? sc_forall(v, std::move(body)) : sc_exists(v, std::move(body));
    }
    if (pos < text.size() && text[pos] == 'T' && !ident_char(pos + 1)) { ++pos; return sc_true(); }
    if (pos < text.size() && text[pos] == 'F' && !ident_char(pos + 1)) { ++pos; return sc_false(); }
    if (pos < text.size() && text[pos] == '~') {
      // negation of a condition only; term complement is handled in terms
      std::size_t save = pos;
      ++pos;
      skip_ws();
      if (pos < text.size() && text[pos] == '(') {
        ++pos;
        std::size_t inner_start = pos;
        try {
          SubCondition inner = sc_implication();
          if (!eat(")")) throw ParseError("expected ')'", pos);
          return sc_not(std::move(inner));
        } catch (const ParseError&) {
          pos = inner_start;  // fall through: it was a term complement
        }
      }
      pos = save;
    }
    if (pos < text.size() && text[pos] == '(') {
      // parenthesised condition or a parenthesised term starting an atom
      std::size_t save = pos;
      ++pos;
      try {
        SubCondition inner = sc_implication();
        if (!eat(")")) throw ParseError("expected ')'", pos);
        skip_ws();
        if (pos < text.size() && starts_comparison()) throw ParseError("term context", pos);
        return inner;
      } catch (const ParseError&) {
        pos = save;
      }
    }
    return sc_atom();
  }
  bool starts_comparison() {
    return text.compare(pos, 2, "<=") == 0 || text.compare(pos, 2, "-<") == 0 ||
           text.compare(pos, 3, "_|_") == 0;
  }
  // atoms compare primary terms; connectives inside a term need parentheses,
  // so that & and | between atoms stay unambiguous
  SubCondition sc_atom() {
    BoolTerm lhs = term_primary();
    skip_ws();
    if (eat("<=")) return sc_leq(std::move(lhs), term_primary());
    if (eat("-<")) {
      int k = number_suffix();
      return sc_prec(std::move(lhs), term_primary(), k);
    }
    if (eat("_|_")) {
      int k = number_suffix();
      return sc_perp(std::move(lhs), term_primary(), k);
    }
    throw ParseError("expected a comparison operator", pos);
  }
  BoolTerm term_or() {
    BoolTerm l = term_and();
    while (true) {
      skip_ws();
      if (pos < text.size() && text[pos] == '|' && text.compare(pos, 3, "_|_") != 0) {
        ++pos;
        l = t_or(std::move(l), term_and());
      } else {
        break;
      }
    }
    return l;
  }
  BoolTerm term_and() {
    BoolTerm l = term_primary();
    while (eat("&")) l = t_and(std::move(l), term_primary());
    return l;
  }
  BoolTerm term_primary() {
    skip_ws();
    if (eat("~")) return t_not(term_primary());
    if (eat("(")) {
      BoolTerm inner = term_or();
      if (!eat(")")) throw ParseError("expected ')' in term", pos);
      return inner;
    }
    if (pos < text.size() && text[pos] == '0') { ++pos; return t_zero(); }
    if (pos < text.size() && text[pos] == '1') { ++pos; return t_one(); }
    return t_var(ident());
  }
};

}  // namespace detail

inline FrameCondition parse_frame_condition(const std::string& text) {
  detail::ConditionParser p(text);
  FrameCondition c = p.fc_implication();
  p.skip_ws();
  if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
  return c;
}

inline SubCondition parse_sub_condition(const std::string& text) {
  detail::ConditionParser p(text);
  SubCondition c = p.sc_implication();
  p.skip_ws();
  if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
  return c;
}

}  // namespace subord

#pragma once

// Bimodal formulas. Concrete syntax:
//   <> diamond   [] box   <+> backward diamond   [+] backward box
//   ~ not   & and   | or   -> implies (right associative)
//   T / F constants, variables [a-zA-Z_][a-zA-Z0-9_']*
// Precedence: not and the modalities bind tightest, then &, then |, then ->.

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace subord {

enum class Fop { verum, falsum, var, neg, conj, disj, impl, dia, box, bdia, bbox };

/// Which modal vocabulary a formula draws on: the forward pair, the backward
/// pair, or both.
enum class Palette { white, black, bimodal };

struct Formula {
  Fop op = Fop::verum;
  std::string name;            // for var
  std::vector<Formula> kids;   // 1 for unary, 2 for binary

  bool operator==(const Formula& o) const {
    return op == o.op && name == o.name && kids == o.kids;
  }
  bool operator<(const Formula& o) const {
    if (op != o.op) return op < o.op;
    if (name != o.name) return name < o.name;
    return kids < o.kids;
  }
};

inline Formula f_true() { return {Fop::verum, "", {}}; }
inline Formula f_false() { return {Fop::falsum, "", {}}; }
inline Formula f_var(std::string n) { return {Fop::var, std::move(n), {}}; }
// Double negations collapse on construction.
inline Formula f_not(Formula a) {
  if (a.op == Fop::neg) return a.kids[0];
  return {Fop::neg, "", {std::move(a)}};
}
inline Formula f_and(Formula a, Formula b) { return {Fop::conj, "", {std::move(a), std::move(b)}}; }
inline Formula f_or(Formula a, Formula b) { return {Fop::disj, "", {std::move(a), std::move(b)}}; }
inline Formula f_imp(Formula a, Formula b) { return {Fop::impl, "", {std::move(a), std::move(b)}}; }
inline Formula f_dia(Formula a) { return {Fop::dia, "", {std::move(a)}}; }
inline Formula f_box(Formula a) { return {Fop::box, "", {std::move(a)}}; }
inline Formula f_bdia(Formula a) { return {Fop::bdia, "", {std::move(a)}}; }
inline Formula f_bbox(Formula a) { return {Fop::bbox, "", {std::move(a)}}; }

inline Formula iterate(Formula (*mod)(Formula), int k, Formula a) {
  for (int i = 0; i < k; ++i) a = mod(std::move(a));
  return a;
}

inline void collect_vars(const Formula& f, std::set<std::string>& out) {
  if (f.op == Fop::var) out.insert(f.name);
  for (auto& k : f.kids) collect_vars(k, out);
}

inline std::vector<std::string> variables(const Formula& f) {
  std::set<std::string> s;
  collect_vars(f, s);
  return {s.begin(), s.end()};
}

inline Palette palette_of(const Formula& f) {
  bool white = false, black = false;
  auto scan = [&](const Formula& g, auto&& self) -> void {
    if (g.op == Fop::dia || g.op == Fop::box) white = true;
    if (g.op == Fop::bdia || g.op == Fop::bbox) black = true;
    for (auto& k : g.kids) self(k, self);
  };
  scan(f, scan);
  if (black && !white) return Palette::black;
  if (white && black) return Palette::bimodal;
  return Palette::white;
}

inline int modal_depth(const Formula& f) {
  int inner = 0;
  for (auto& k : f.kids) inner = std::max(inner, modal_depth(k));
  switch (f.op) {
    case Fop::dia:
    case Fop::box:
    case Fop::bdia:
    case Fop::bbox:
      return inner + 1;
    default:
      return inner;
  }
}

inline std::size_t formula_size(const Formula& f) {
  std::size_t n = 1;
  for (auto& k : f.kids) n += formula_size(k);
  return n;
}

/// Simultaneous substitution of formulas for variables.
inline Formula substitute(const Formula& f, const std::map<std::string, Formula>& inst) {
  if (f.op == Fop::var) {
    auto it = inst.find(f.name);
    return it == inst.end() ? f : it->second;
  }
  Formula out{f.op, f.name, {}};
  for (auto& k : f.kids) out.kids.push_back(substitute(k, inst));
  return out;
}

/// Negation normal form with the implication expanded. All four modalities
/// survive; negation only decorates variables.
inline Formula nnf(const Formula& f, bool negated = false) {
  switch (f.op) {
    case Fop::verum: return negated ? f_false() : f_true();
    case Fop::falsum: return negated ? f_true() : f_false();
    case Fop::var: return negated ? Formula{Fop::neg, "", {f}} : f;
    case Fop::neg: return nnf(f.kids[0], !negated);
    case Fop::conj:
      return negated ? f_or(nnf(f.kids[0], true), nnf(f.kids[1], true))
                     : f_and(nnf(f.kids[0], false), nnf(f.kids[1], false));
    case Fop::disj:
      return negated ? f_and(nnf(f.kids[0], true), nnf(f.kids[1], true))
                     : f_or(nnf(f.kids[0], false), nnf(f.kids[1], false));
    case Fop::impl:
      return negated ? f_and(nnf(f.kids[0], false), nnf(f.kids[1], true))
                     : f_or(nnf(f.kids[0], true), nnf(f.kids[1], false));
    case Fop::dia: return negated ? f_box(nnf(f.kids[0], true)) : f_dia(nnf(f.kids[0], false));
    case Fop::box: return negated ? f_dia(nnf(f.kids[0], true)) : f_box(nnf(f.kids[0], false));
    case Fop::bdia: return negated ? f_bbox(nnf(f.kids[0], true)) : f_bdia(nnf(f.kids[0], false));
    case Fop::bbox: return negated ? f_bdia(nnf(f.kids[0], true)) : f_bbox(nnf(f.kids[0], false));
  }
  throw std::logic_error("nnf: bad op");
}

/// Core form over {T, F, var, not, and, or, dia, bdia}: the implication and
/// both boxes rewritten away, double negations collapsed.
inline Formula core_form(const Formula& f) {
  switch (f.op) {
    case Fop::verum:
    case Fop::falsum:
    case Fop::var:
      return f;
    case Fop::neg: return f_not(core_form(f.kids[0]));
    case Fop::conj: return f_and(core_form(f.kids[0]), core_form(f.kids[1]));
    case Fop::disj: return f_or(core_form(f.kids[0]), core_form(f.kids[1]));
    case Fop::impl: return f_or(f_not(core_form(f.kids[0])), core_form(f.kids[1]));
    case Fop::dia: return f_dia(core_form(f.kids[0]));
    case Fop::bdia: return f_bdia(core_form(f.kids[0]));
    case Fop::box: return f_not(f_dia(f_not(core_form(f.kids[0]))));
    case Fop::bbox: return f_not(f_bdia(f_not(core_form(f.kids[0]))));
  }
  throw std::logic_error("core_form: bad op");
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline int precedence(Fop op) {
  switch (op) {
    case Fop::impl: return 1;
    case Fop::disj: return 2;
    case Fop::conj: return 3;
    default: return 4;  // atoms and prefix operators
  }
}

inline void print_rec(const Formula& f, int parent_prec, std::string& out) {
  int prec = precedence(f.op);
  bool paren = prec < parent_prec;
  if (paren) out += '(';
  switch (f.op) {
    case Fop::verum: out += 'T'; break;
    case Fop::falsum: out += 'F'; break;
    case Fop::var: out += f.name; break;
    case Fop::neg: out += '~'; print_rec(f.kids[0], 4, out); break;
    case Fop::dia: out += "<>"; print_rec(f.kids[0], 4, out); break;
    case Fop::box: out += "[]"; print_rec(f.kids[0], 4, out); break;
    case Fop::bdia: out += "<+>"; print_rec(f.kids[0], 4, out); break;
    case Fop::bbox: out += "[+]"; print_rec(f.kids[0], 4, out); break;
    case Fop::conj:
      print_rec(f.kids[0], 3, out); out += " & "; print_rec(f.kids[1], 4, out);
      break;
    case Fop::disj:
      print_rec(f.kids[0], 2, out); out += " | "; print_rec(f.kids[1], 3, out);
      break;
    case Fop::impl:
      // right associative: the left child needs strictly higher precedence
      print_rec(f.kids[0], 2, out); out += " -> "; print_rec(f.kids[1], 1, out);
      break;
  }
  if (paren) out += ')';
}

}  // namespace detail

inline std::string print_formula(const Formula& f) {
  std::string out;
  detail::print_rec(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

namespace detail {

struct FormulaParser {
  const std::string& text;
  std::size_t pos = 0;

  explicit FormulaParser(const std::string& t) : text(t) {}

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
  bool peek_ident_char() const {
    if (pos >= text.size()) return false;
    char c = text[pos];
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '\'';
  }

  Formula parse_implication() {
    Formula lhs = parse_disjunction();
    if (eat("->")) return f_imp(std::move(lhs), parse_implication());
    return lhs;
  }
  Formula parse_disjunction() {
    Formula lhs = parse_conjunction();
    while (eat("|")) lhs = f_or(std::move(lhs), parse_conjunction());
    return lhs;
  }
  Formula parse_conjunction() {
    Formula lhs = parse_prefix();
    while (true) {
      skip_ws();
      // do not confuse & with nothing else here; -> is handled above
      if (eat("&")) lhs = f_and(std::move(lhs), parse_prefix());
      else break;
    }
    return lhs;
  }
  Formula parse_prefix() {
    skip_ws();
    if (eat("~")) return f_not(parse_prefix());
    if (eat("<+>")) return f_bdia(parse_prefix());
    if (eat("[+]")) return f_bbox(parse_prefix());
    if (eat("<>")) return f_dia(parse_prefix());
    if (eat("[]")) return f_box(parse_prefix());
    return parse_atom();
  }
  Formula parse_atom() {
    skip_ws();
    if (eat("(")) {
      Formula inner = parse_implication();
      if (!eat(")")) throw ParseError("expected ')'", pos);
      return inner;
    }
    if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
    char c = text[pos];
    if (c == 'T' && !ident_continues(pos + 1)) { ++pos; return f_true(); }
    if (c == 'F' && !ident_continues(pos + 1)) { ++pos; return f_false(); }
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
      std::size_t start = pos;
      while (peek_ident_char()) ++pos;
      return f_var(text.substr(start, pos - start));
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos);
  }
  bool ident_continues(std::size_t at) const {
    if (at >= text.size()) return false;
    char c = text[at];
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '\'';
  }
};

}  // namespace detail

inline Formula parse_formula(const std::string& text) {
  detail::FormulaParser p(text);
  Formula f = p.parse_implication();
  p.skip_ws();
  if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
  return f;
}

}  // namespace subord

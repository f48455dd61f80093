#pragma once

// Finite Boolean algebras realised as powersets of a small atom set.
// An element is the bitmask of the atoms below it, so the whole element
// universe of an algebra with n atoms is [0, 2^n) and a set of elements
// fits in a single 64-bit mask.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace subord {

using Elem = std::uint32_t;      // element of an algebra: a set of atoms
using ElemMask = std::uint64_t;  // set of elements, one bit per element id

/// Largest supported atom count. Everything downstream enumerates element
/// sets as single 64-bit masks, so 6 atoms (64 elements) is the ceiling.
inline constexpr int kMaxAtoms = 6;

struct Algebra {
  int atoms = 1;

  std::size_t size() const { return std::size_t{1} << atoms; }
  Elem bottom() const { return 0; }
  Elem top() const { return static_cast<Elem>((1u << atoms) - 1); }
  Elem atom(int i) const { return static_cast<Elem>(1u << i); }

  Elem meet(Elem a, Elem b) const { return a & b; }
  Elem join(Elem a, Elem b) const { return a | b; }
  Elem complement(Elem a) const { return top() & ~a; }
  bool leq(Elem a, Elem b) const { return (a & ~b) == 0; }

  bool contains(Elem a) const { return a <= top(); }
  bool operator==(const Algebra& other) const { return atoms == other.atoms; }
};

/// Builds the powerset algebra over n atoms. Supported range is
/// 1 <= n <= kMaxAtoms.
inline Algebra powerset_algebra(int n) {
  if (n < 1 || n > kMaxAtoms) {
    throw std::invalid_argument("powerset_algebra: atom count " + std::to_string(n) +
                                " outside supported range [1, " + std::to_string(kMaxAtoms) + "]");
  }
  return Algebra{n};
}

inline void require_element(const Algebra& a, Elem e, const char* who) {
  if (!a.contains(e)) {
    throw std::invalid_argument(std::string(who) + ": element " + std::to_string(e) +
                                " is foreign to an algebra with " + std::to_string(a.atoms) + " atoms");
  }
}

enum class SetTag { plain, filter, ideal };

/// A tagged subset of an algebra. The tag records the role the caller
/// claims for the set; validity of the claim is established separately.
struct ElementSet {
  Algebra algebra;
  SetTag tag = SetTag::plain;
  std::vector<Elem> members;
};

inline ElemMask mask_of(const std::vector<Elem>& members) {
  ElemMask m = 0;
  for (Elem e : members) m |= ElemMask{1} << e;
  return m;
}

inline std::vector<Elem> elems_of(ElemMask m) {
  std::vector<Elem> out;
  for (Elem e = 0; m != 0; ++e, m >>= 1)
    if (m & 1) out.push_back(e);
  return out;
}

struct FilterIdealReport {
  bool ok = false;
  std::string reason;      // first violated closure condition, when !ok
  Elem generator = 0;      // meet of a filter, join of an ideal
  bool principal = false;  // true when the set equals generator-up (resp. -down)
};

/// Checks the filter or ideal closure conditions for S inside A and reports
/// the principal generator. In a finite algebra every filter and ideal is
/// principal, so `principal` is true whenever `ok` is.
inline FilterIdealReport filter_ideal_check(const Algebra& a, const ElementSet& s, SetTag tag) {
  if (tag != SetTag::filter && tag != SetTag::ideal) {
    throw std::invalid_argument("filter_ideal_check: tag must be filter or ideal");
  }
  for (Elem e : s.members) require_element(a, e, "filter_ideal_check");

  FilterIdealReport rep;
  ElemMask in = mask_of(s.members);
  if (in == 0) {
    rep.reason = "empty set";
    return rep;
  }

  bool filter = tag == SetTag::filter;
  Elem gen = filter ? a.top() : a.bottom();
  for (Elem e : s.members) gen = filter ? a.meet(gen, e) : a.join(gen, e);
  rep.generator = gen;

  const Elem count = static_cast<Elem>(a.size());
  for (Elem x = 0; x < count; ++x) {
    if (!(in >> x & 1)) continue;
    for (Elem y = 0; y < count; ++y) {
      bool closed_under = filter ? a.leq(x, y) : a.leq(y, x);
      if (closed_under && !(in >> y & 1)) {
        rep.reason = filter ? "not upward closed" : "not downward closed";
        return rep;
      }
      if (!(in >> y & 1)) continue;
      Elem comb = filter ? a.meet(x, y) : a.join(x, y);
      if (!(in >> comb & 1)) {
        rep.reason = filter ? "not closed under meet" : "not closed under join";
        return rep;
      }
    }
  }
  rep.ok = true;

  ElemMask principal_set = 0;
  for (Elem x = 0; x < count; ++x) {
    bool above = filter ? a.leq(gen, x) : a.leq(x, gen);
    if (above) principal_set |= ElemMask{1} << x;
  }
  rep.principal = principal_set == in;
  return rep;
}

/// Least subset of A containing G together with 0 and 1 and closed under
/// meet, join and complement. Returned in the numeric element order.
inline std::vector<Elem> generated_boolean_subalgebra(const Algebra& a, const std::vector<Elem>& gens) {
  for (Elem e : gens) require_element(a, e, "generated_boolean_subalgebra");
  ElemMask in = mask_of(gens);
  in |= ElemMask{1} << a.bottom();
  in |= ElemMask{1} << a.top();
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Elem> cur = elems_of(in);
    for (Elem x : cur) {
      Elem c = a.complement(x);
      if (!(in >> c & 1)) { in |= ElemMask{1} << c; grew = true; }
      for (Elem y : cur) {
        Elem m = a.meet(x, y), j = a.join(x, y);
        if (!(in >> m & 1)) { in |= ElemMask{1} << m; grew = true; }
        if (!(in >> j & 1)) { in |= ElemMask{1} << j; grew = true; }
      }
    }
  }
  return elems_of(in);
}

/// A total map between two finite Boolean algebras, indexed by source element.
struct BooleanMorphism {
  Algebra source;
  Algebra target;
  std::vector<Elem> map;  // map[e] for every source element e

  Elem operator()(Elem e) const { return map.at(e); }
};

inline BooleanMorphism identity_morphism(const Algebra& a) {
  BooleanMorphism f{a, a, {}};
  f.map.resize(a.size());
  for (Elem e = 0; e < a.size(); ++e) f.map[e] = e;
  return f;
}

struct MorphismLawReport {
  bool ok = false;
  std::string violated_law;    // first violated law in the fixed check order
  std::vector<Elem> witness;   // source elements exhibiting the violation
};

/// Verifies that f preserves 0, 1, meet and complement (join then follows).
/// The first violated law, in the order zero, one, meet, complement, is
/// reported with the least witness.
inline MorphismLawReport check_boolean_morphism(const BooleanMorphism& f) {
  if (f.map.size() != f.source.size()) {
    throw std::invalid_argument("check_boolean_morphism: mapping is not total on the source");
  }
  for (Elem v : f.map) require_element(f.target, v, "check_boolean_morphism");

  MorphismLawReport rep;
  if (f.map[f.source.bottom()] != f.target.bottom()) {
    rep.violated_law = "zero";
    rep.witness = {f.source.bottom()};
    return rep;
  }
  if (f.map[f.source.top()] != f.target.top()) {
    rep.violated_law = "one";
    rep.witness = {f.source.top()};
    return rep;
  }
  const Elem count = static_cast<Elem>(f.source.size());
  for (Elem x = 0; x < count; ++x) {
    for (Elem y = 0; y < count; ++y) {
      if (f.map[f.source.meet(x, y)] != f.target.meet(f.map[x], f.map[y])) {
        rep.violated_law = "meet";
        rep.witness = {x, y};
        return rep;
      }
    }
  }
  for (Elem x = 0; x < count; ++x) {
    if (f.map[f.source.complement(x)] != f.target.complement(f.map[x])) {
      rep.violated_law = "complement";
      rep.witness = {x};
      return rep;
    }
  }
  rep.ok = true;
  return rep;
}

/// Composition g after f.
inline BooleanMorphism compose(const BooleanMorphism& g, const BooleanMorphism& f) {
  if (!(f.target == g.source)) throw std::invalid_argument("compose: type mismatch");
  BooleanMorphism h{f.source, g.target, {}};
  h.map.resize(f.map.size());
  for (Elem e = 0; e < f.map.size(); ++e) h.map[e] = g.map[f.map[e]];
  return h;
}

}  // namespace subord

#pragma once

// Congruences, quotients, subalgebras and finite products of subordination
// algebras. Congruences are Boolean congruences whose zero class is a round
// ideal (forward colour), whose one class is a round filter (backward
// colour), or both (strong). On a finite algebra every ideal is principal,
// so a congruence is captured by one generator element.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subord/algebra.hpp"
#include "subord/subordination.hpp"

namespace subord {

enum class CongruenceKind { white, black, strong };

inline const char* kind_name(CongruenceKind k) {
  switch (k) {
    case CongruenceKind::white: return "white";
    case CongruenceKind::black: return "black";
    case CongruenceKind::strong: return "strong";
  }
  return "?";
}

/// Partition of all elements of an algebra; class ids are assigned by the
/// least member of each class, in element order.
struct ElemPartition {
  std::vector<int> class_of;
  int classes = 0;

  bool same(Elem a, Elem b) const { return class_of[a] == class_of[b]; }
};

inline ElemPartition normalize_partition(std::vector<int> raw) {
  ElemPartition p;
  p.class_of.assign(raw.size(), -1);
  std::map<int, int> renumber;
  for (std::size_t e = 0; e < raw.size(); ++e) {
    auto [it, fresh] = renumber.emplace(raw[e], p.classes);
    if (fresh) ++p.classes;
    p.class_of[e] = it->second;
  }
  return p;
}

inline ElemPartition partition_from_blocks(const Algebra& a,
                                           const std::vector<std::vector<Elem>>& blocks) {
  std::vector<int> raw(a.size(), -1);
  int id = 0;
  for (auto& blk : blocks) {
    for (Elem e : blk) {
      require_element(a, e, "partition_from_blocks");
      if (raw[e] != -1) throw std::invalid_argument("partition_from_blocks: element repeated");
      raw[e] = id;
    }
    ++id;
  }
  for (int c : raw)
    if (c == -1) throw std::invalid_argument("partition_from_blocks: not a covering partition");
  return normalize_partition(std::move(raw));
}

/// Boolean congruence with zero class generated by e: a ~ b iff a v e = b v e.
inline ElemPartition partition_from_zero_generator(const Algebra& a, Elem e) {
  require_element(a, e, "partition_from_zero_generator");
  std::vector<int> raw(a.size());
  for (Elem x = 0; x < a.size(); ++x) raw[x] = static_cast<int>(a.join(x, e));
  return normalize_partition(std::move(raw));
}

inline ElemPartition identity_partition(const Algebra& a) {
  return partition_from_zero_generator(a, a.bottom());
}
inline ElemPartition full_partition(const Algebra& a) {
  return partition_from_zero_generator(a, a.top());
}

inline std::vector<std::vector<Elem>> partition_blocks(const ElemPartition& p) {
  std::vector<std::vector<Elem>> blocks(p.classes);
  for (Elem e = 0; e < p.class_of.size(); ++e) blocks[p.class_of[e]].push_back(e);
  return blocks;
}

struct BooleanCongruenceReport {
  bool ok = false;
  std::string reason;
  Elem zero_generator = 0;  // join of the zero class, meaningful when ok
};

/// A partition is a Boolean congruence iff its zero class is an ideal and the
/// classes are exactly the cosets of that ideal.
inline BooleanCongruenceReport check_boolean_congruence(const Algebra& a, const ElemPartition& p) {
  BooleanCongruenceReport rep;
  std::vector<Elem> zero_class;
  for (Elem e = 0; e < a.size(); ++e)
    if (p.same(e, a.bottom())) zero_class.push_back(e);
  auto ideal = filter_ideal_check(a, ElementSet{a, SetTag::ideal, zero_class}, SetTag::ideal);
  if (!ideal.ok) {
    rep.reason = "zero class is not an ideal (" + ideal.reason + ")";
    return rep;
  }
  Elem gen = ideal.generator;
  for (Elem x = 0; x < a.size(); ++x)
    for (Elem y = 0; y < a.size(); ++y) {
      bool coset = a.join(x, gen) == a.join(y, gen);
      if (coset != p.same(x, y)) {
        rep.reason = "classes are not cosets of the zero class";
        return rep;
      }
    }
  rep.ok = true;
  rep.zero_generator = gen;
  return rep;
}

// ---------------------------------------------------------------------------
// Subordination congruences

struct ConditionVerdict {
  bool holds = true;
  std::vector<Elem> witness;
};

/// The four equivalent characterisations, evaluated independently for one
/// colour: being the kernel of a quotient projection, the zig-zag transfer
/// condition, roundness of the zero-class ideal, and the twisted condition
/// on the one-class filter.
struct ColourConditions {
  ConditionVerdict kernel;
  ConditionVerdict zigzag;
  ConditionVerdict round_ideal;
  ConditionVerdict filter_side;

  bool agree() const {
    return kernel.holds == zigzag.holds && zigzag.holds == round_ideal.holds &&
           round_ideal.holds == filter_side.holds;
  }
  bool holds() const { return round_ideal.holds; }
};

struct CongruenceReport {
  bool boolean_ok = false;
  std::string boolean_reason;
  Elem zero_generator = 0;
  ColourConditions white;
  ColourConditions black;

  bool holds(CongruenceKind k) const {
    if (!boolean_ok) return false;
    switch (k) {
      case CongruenceKind::white: return white.holds();
      case CongruenceKind::black: return black.holds();
      case CongruenceKind::strong: return white.holds() && black.holds();
    }
    return false;
  }
};

namespace detail {

struct RawQuotient {
  Algebra algebra;                // compact powerset over the surviving atoms
  std::vector<Elem> projection;   // full element -> compact class element
  std::vector<Elem> expand;       // compact class element -> least representative
  SubordinationAlgebra structure; // quotient candidate with the induced relation
};

inline RawQuotient raw_quotient(const SubordinationAlgebra& s, const ElemPartition& p,
                                Elem zero_gen, CongruenceKind kind) {
  const Algebra& a = s.algebra;
  Elem survivors = a.complement(zero_gen);
  int m = 0;
  std::vector<int> bit_of(a.atoms, -1);
  for (int i = 0; i < a.atoms; ++i)
    if (survivors >> i & 1) bit_of[i] = m++;

  RawQuotient q;
  q.algebra = Algebra{m};
  q.projection.assign(a.size(), 0);
  for (Elem x = 0; x < a.size(); ++x) {
    Elem compact = 0;
    for (int i = 0; i < a.atoms; ++i)
      if ((x >> i & 1) && bit_of[i] >= 0) compact |= Elem{1} << bit_of[i];
    q.projection[x] = compact;
  }
  q.expand.assign(q.algebra.size(), 0);
  for (Elem x = 0; x < a.size(); ++x)
    if ((x & zero_gen) == 0) q.expand[q.projection[x]] = x;

  q.structure = SubordinationAlgebra{q.algebra, std::vector<ElemMask>(q.algebra.size(), 0)};
  for (Elem x = 0; x < q.algebra.size(); ++x)
    for (Elem y = 0; y < q.algebra.size(); ++y) {
      Elem rx = q.expand[x], ry = q.expand[y];
      bool related = false;
      for (Elem c = 0; c < a.size() && !related; ++c) {
        if (kind != CongruenceKind::black && s.prec(rx, c) && p.same(c, ry)) related = true;
        if (kind == CongruenceKind::black && p.same(rx, c) && s.prec(c, ry)) related = true;
      }
      if (related) q.structure.set_prec(x, y);
    }
  return q;
}

inline ColourConditions colour_conditions(const SubordinationAlgebra& s, const ElemPartition& p,
                                          Elem zero_gen) {
  const Algebra& a = s.algebra;
  ColourConditions c;

  // zig-zag: a ~ b prec c implies a prec d ~ c for some d
  for (Elem x = 0; x < a.size() && c.zigzag.holds; ++x)
    for (Elem y = 0; y < a.size() && c.zigzag.holds; ++y) {
      if (!p.same(x, y)) continue;
      for (Elem z = 0; z < a.size() && c.zigzag.holds; ++z) {
        if (!s.prec(y, z)) continue;
        bool found = false;
        for (Elem d = 0; d < a.size() && !found; ++d)
          if (s.prec(x, d) && p.same(d, z)) found = true;
        if (!found) { c.zigzag.holds = false; c.zigzag.witness = {x, y, z}; }
      }
    }

  // round ideal: every member of the zero class sits below another member
  for (Elem x = 0; x < a.size() && c.round_ideal.holds; ++x) {
    if (!a.leq(x, zero_gen)) continue;
    bool found = false;
    for (Elem b = 0; b < a.size() && !found; ++b)
      if (a.leq(b, zero_gen) && s.prec(x, b)) found = true;
    if (!found) { c.round_ideal.holds = false; c.round_ideal.witness = {x}; }
  }

  // one-class condition: a in F implies not-a prec not-b for some b in F
  Elem one_gen = a.complement(zero_gen);
  for (Elem x = 0; x < a.size() && c.filter_side.holds; ++x) {
    if (!a.leq(one_gen, x)) continue;
    bool found = false;
    for (Elem b = 0; b < a.size() && !found; ++b)
      if (a.leq(one_gen, b) && s.prec(a.complement(x), a.complement(b))) found = true;
    if (!found) { c.filter_side.holds = false; c.filter_side.witness = {x}; }
  }

  // kernel: the quotient candidate is a subordination algebra and the
  // projection onto it preserves and lifts the relation forward
  RawQuotient q = raw_quotient(s, p, zero_gen, CongruenceKind::white);
  if (!is_valid_subordination(q.structure)) {
    c.kernel.holds = false;
  } else {
    BooleanMorphism proj{a, q.algebra, q.projection};
    SubMorphismReport rep = check_morphism(proj, s, q.structure);
    c.kernel.holds = rep.satisfies(MorphismKind::white);
  }
  return c;
}

}  // namespace detail

/// Full congruence analysis of a partition: Boolean congruence test first,
/// then the colour conditions for both colours. The four characterisations
/// of each colour are computed independently; they agree on Boolean
/// congruences of finite algebras.
inline CongruenceReport is_congruence(const SubordinationAlgebra& s, const ElemPartition& p) {
  CongruenceReport rep;
  if (p.class_of.size() != s.algebra.size())
    throw std::invalid_argument("is_congruence: partition does not cover the algebra");
  BooleanCongruenceReport bc = check_boolean_congruence(s.algebra, p);
  rep.boolean_ok = bc.ok;
  rep.boolean_reason = bc.reason;
  if (!bc.ok) return rep;
  rep.zero_generator = bc.zero_generator;
  rep.white = detail::colour_conditions(s, p, bc.zero_generator);
  SubordinationAlgebra flipped = flip(s);
  rep.black = detail::colour_conditions(flipped, p, bc.zero_generator);
  return rep;
}

inline bool is_congruence(const SubordinationAlgebra& s, const ElemPartition& p, CongruenceKind k) {
  return is_congruence(s, p).holds(k);
}

// ---------------------------------------------------------------------------
// The congruence lattice

struct CongruenceLattice {
  std::vector<Elem> generators;  // zero-class generators, ascending
  bool distributive = true;
  std::vector<Elem> law_witness;
};

/// Enumerates all congruences of the requested kind through their principal
/// zero-class generators and verifies the frame distributive law on the
/// resulting lattice (over all subsets when small, binary otherwise).
inline CongruenceLattice congruence_lattice(const SubordinationAlgebra& s, CongruenceKind kind) {
  const Algebra& a = s.algebra;
  CongruenceLattice lat;
  for (Elem e = 0; e < a.size(); ++e) {
    bool white_round = s.prec(e, e);
    bool black_round = s.prec(a.complement(e), a.complement(e));
    bool keep = kind == CongruenceKind::white   ? white_round
                : kind == CongruenceKind::black ? black_round
                                                : white_round && black_round;
    if (keep) lat.generators.push_back(e);
  }

  const std::size_t n = lat.generators.size();
  auto in_lattice = [&](Elem e) {
    return std::find(lat.generators.begin(), lat.generators.end(), e) != lat.generators.end();
  };
  for (Elem x : lat.generators)
    for (Elem y : lat.generators) {
      if (!in_lattice(a.meet(x, y)) || !in_lattice(a.join(x, y))) {
        throw std::logic_error("congruence_lattice: not closed under meet/join");
      }
    }

  if (n <= 12) {
    for (std::size_t xi = 0; xi < n && lat.distributive; ++xi) {
      Elem x = lat.generators[xi];
      for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << n) && lat.distributive; ++sub) {
        Elem big_join = a.bottom(), dist_join = a.bottom();
        for (std::size_t i = 0; i < n; ++i)
          if (sub >> i & 1) {
            big_join = a.join(big_join, lat.generators[i]);
            dist_join = a.join(dist_join, a.meet(x, lat.generators[i]));
          }
        if (a.meet(x, big_join) != dist_join) {
          lat.distributive = false;
          lat.law_witness = {x, big_join};
        }
      }
    }
  } else {
    for (Elem x : lat.generators)
      for (Elem y : lat.generators)
        for (Elem z : lat.generators)
          if (a.meet(x, a.join(y, z)) != a.join(a.meet(x, y), a.meet(x, z))) {
            lat.distributive = false;
            lat.law_witness = {x, y, z};
          }
  }
  return lat;
}

// ---------------------------------------------------------------------------
// Quotients

struct QuotientResult {
  SubordinationAlgebra algebra;
  BooleanMorphism projection;
  std::vector<Elem> representative;  // least representative per class element
  SubMorphismReport projection_report;
};

/// Quotient by a congruence of the given kind. Rejected when the partition
/// is not a congruence of that kind. For strong congruences the forward and
/// backward descriptions of the induced relation coincide; this is checked.
inline QuotientResult quotient(const SubordinationAlgebra& s, const ElemPartition& p,
                               CongruenceKind kind) {
  CongruenceReport rep = is_congruence(s, p);
  if (!rep.boolean_ok)
    throw std::invalid_argument("quotient: not a Boolean congruence (" + rep.boolean_reason + ")");
  if (!rep.holds(kind))
    throw std::invalid_argument(std::string("quotient: not a ") + kind_name(kind) + " congruence");

  detail::RawQuotient q = detail::raw_quotient(
      s, p, rep.zero_generator, kind == CongruenceKind::black ? CongruenceKind::black : CongruenceKind::white);
  if (kind == CongruenceKind::strong) {
    detail::RawQuotient qb = detail::raw_quotient(s, p, rep.zero_generator, CongruenceKind::black);
    if (!(qb.structure == q.structure))
      throw std::logic_error("quotient: strong congruence with mismatched colour quotients");
  }

  QuotientResult out{q.structure, BooleanMorphism{s.algebra, q.algebra, q.projection}, q.expand, {}};
  out.projection_report = check_morphism(out.projection, s, out.algebra);
  return out;
}

// ---------------------------------------------------------------------------
// Subalgebras

struct SubalgebraReport {
  bool boolean_ok = false;
  std::string boolean_reason;
  ConditionVerdict white;      // forward interpolation into the subset
  ConditionVerdict black;      // backward interpolation into the subset
  bool inclusion_white = false;  // cross-check through the inclusion morphism
  bool inclusion_black = false;

  bool holds(MorphismKind k) const {
    if (!boolean_ok) return false;
    switch (k) {
      case MorphismKind::weak: return true;
      case MorphismKind::white: return white.holds;
      case MorphismKind::black: return black.holds;
      case MorphismKind::strong: return white.holds && black.holds;
    }
    return false;
  }
};

/// Reifies a Boolean subalgebra (its atoms are the minimal nonzero members)
/// as a powerset algebra together with the embedding into the ambient one.
struct ReifiedSubalgebra {
  SubordinationAlgebra structure;
  BooleanMorphism embedding;  // compact -> ambient
  std::vector<Elem> members;  // ambient images, indexed by compact element
};

inline ReifiedSubalgebra reify_subalgebra(const SubordinationAlgebra& s, const std::vector<Elem>& a) {
  ElemMask in = mask_of(a);
  std::vector<Elem> atoms;
  for (Elem x : a) {
    if (x == 0) continue;
    bool minimal = true;
    for (Elem y : a)
      if (y != 0 && y != x && s.algebra.leq(y, x)) minimal = false;
    if (minimal) atoms.push_back(x);
  }
  std::sort(atoms.begin(), atoms.end());
  ReifiedSubalgebra out;
  Algebra compact{static_cast<int>(atoms.size())};
  out.members.assign(compact.size(), 0);
  for (Elem c = 0; c < compact.size(); ++c) {
    Elem full = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (c >> i & 1) full = s.algebra.join(full, atoms[i]);
    out.members[c] = full;
    if (!(in >> full & 1)) throw std::invalid_argument("reify_subalgebra: not a Boolean subalgebra");
  }
  out.embedding = BooleanMorphism{compact, s.algebra, out.members};
  out.structure = SubordinationAlgebra{compact, std::vector<ElemMask>(compact.size(), 0)};
  for (Elem x = 0; x < compact.size(); ++x)
    for (Elem y = 0; y < compact.size(); ++y)
      if (s.prec(out.members[x], out.members[y])) out.structure.set_prec(x, y);
  return out;
}

/// Subset-of-elements test for being a subordination subalgebra of the given
/// kind, with the inclusion morphism evaluated as an independent route.
inline SubalgebraReport is_subalgebra(const SubordinationAlgebra& s, const std::vector<Elem>& a) {
  SubalgebraReport rep;
  for (Elem e : a) require_element(s.algebra, e, "is_subalgebra");
  ElemMask in = mask_of(a);
  const Algebra& alg = s.algebra;
  if (!(in >> alg.bottom() & 1) || !(in >> alg.top() & 1)) {
    rep.boolean_reason = "missing 0 or 1";
    return rep;
  }
  for (Elem x : a) {
    if (!(in >> alg.complement(x) & 1)) { rep.boolean_reason = "not closed under complement"; return rep; }
    for (Elem y : a)
      if (!(in >> alg.meet(x, y) & 1)) { rep.boolean_reason = "not closed under meet"; return rep; }
  }
  rep.boolean_ok = true;

  for (Elem x : a) {
    for (Elem b = 0; b < alg.size(); ++b) {
      if (rep.white.holds && s.prec(x, b)) {
        bool found = false;
        for (Elem c : a)
          if (s.prec(x, c) && alg.leq(c, b)) { found = true; break; }
        if (!found) { rep.white.holds = false; rep.white.witness = {x, b}; }
      }
      if (rep.black.holds && s.prec(b, x)) {
        bool found = false;
        for (Elem c : a)
          if (alg.leq(b, c) && s.prec(c, x)) { found = true; break; }
        if (!found) { rep.black.holds = false; rep.black.witness = {b, x}; }
      }
    }
  }

  ReifiedSubalgebra r = reify_subalgebra(s, a);
  SubMorphismReport inc = check_morphism(r.embedding, r.structure, s);
  rep.inclusion_white = inc.satisfies(MorphismKind::white);
  rep.inclusion_black = inc.satisfies(MorphismKind::black);
  return rep;
}

/// Saturation of a subset under a Boolean congruence.
inline std::vector<Elem> saturation(const Algebra& alg, const ElemPartition& p,
                                    const std::vector<Elem>& a) {
  ElemMask out = 0;
  for (Elem b = 0; b < alg.size(); ++b)
    for (Elem x : a)
      if (p.same(x, b)) { out |= ElemMask{1} << b; break; }
  return elems_of(out);
}

// ---------------------------------------------------------------------------
// Products

struct ProductResult {
  SubordinationAlgebra algebra;
  std::vector<BooleanMorphism> projections;
  std::vector<int> offsets;  // atom offset per factor

  Elem slice(Elem x, std::size_t j, const std::vector<int>& widths) const {
    return (x >> offsets[j]) & ((Elem{1} << widths[j]) - 1);
  }
};

/// Pointwise product of a finite nonempty family. The relation holds iff it
/// holds in every coordinate; projections are strong morphisms.
inline ProductResult product(const std::vector<SubordinationAlgebra>& factors) {
  if (factors.empty()) throw std::invalid_argument("product: empty family");
  int total = 0;
  for (auto& f : factors) total += f.algebra.atoms;
  if (total > kMaxAtoms)
    throw std::invalid_argument("product: size overflow, total atoms " + std::to_string(total) +
                                " exceed " + std::to_string(kMaxAtoms));
  ProductResult out;
  out.algebra = SubordinationAlgebra{Algebra{total}, std::vector<ElemMask>(std::size_t{1} << total, 0)};
  int off = 0;
  std::vector<int> widths;
  for (auto& f : factors) {
    out.offsets.push_back(off);
    widths.push_back(f.algebra.atoms);
    off += f.algebra.atoms;
  }
  const Algebra& pa = out.algebra.algebra;
  for (Elem x = 0; x < pa.size(); ++x)
    for (Elem y = 0; y < pa.size(); ++y) {
      bool all = true;
      for (std::size_t j = 0; j < factors.size() && all; ++j)
        if (!factors[j].prec(out.slice(x, j, widths), out.slice(y, j, widths))) all = false;
      if (all) out.algebra.set_prec(x, y);
    }
  for (std::size_t j = 0; j < factors.size(); ++j) {
    BooleanMorphism pj{pa, factors[j].algebra, std::vector<Elem>(pa.size(), 0)};
    for (Elem x = 0; x < pa.size(); ++x) pj.map[x] = out.slice(x, j, widths);
    out.projections.push_back(std::move(pj));
  }
  return out;
}

/// Pairing of a morphism family into the factors of a product.
inline BooleanMorphism pairing(const std::vector<BooleanMorphism>& fs, const ProductResult& prod) {
  if (fs.empty()) throw std::invalid_argument("pairing: empty family");
  BooleanMorphism out{fs[0].source, prod.algebra.algebra, std::vector<Elem>(fs[0].source.size(), 0)};
  for (Elem x = 0; x < out.source.size(); ++x) {
    Elem v = 0;
    for (std::size_t j = 0; j < fs.size(); ++j) v |= fs[j](x) << prod.offsets[j];
    out.map[x] = v;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism theorems

struct IsoReport {
  bool ok = false;
  std::string detail;
};

inline ElemPartition kernel_partition(const BooleanMorphism& f) {
  std::vector<int> raw(f.source.size());
  for (Elem x = 0; x < f.source.size(); ++x) raw[x] = static_cast<int>(f(x));
  return normalize_partition(std::move(raw));
}

namespace detail {

inline bool same_structure(const SubordinationAlgebra& a, const SubordinationAlgebra& b,
                           const std::vector<Elem>& map_ab) {
  // map_ab must be a Boolean isomorphism matching the relations both ways
  if (a.algebra.size() != b.algebra.size()) return false;
  std::vector<bool> hit(b.algebra.size(), false);
  for (Elem x = 0; x < a.algebra.size(); ++x) {
    if (map_ab[x] >= b.algebra.size() || hit[map_ab[x]]) return false;
    hit[map_ab[x]] = true;
  }
  BooleanMorphism f{a.algebra, b.algebra, map_ab};
  if (!check_boolean_morphism(f).ok) return false;
  for (Elem x = 0; x < a.algebra.size(); ++x)
    for (Elem y = 0; y < a.algebra.size(); ++y)
      if (a.prec(x, y) != b.prec(map_ab[x], map_ab[y])) return false;
  return true;
}

}  // namespace detail

/// First theorem: the quotient by the kernel of a morphism is isomorphic to
/// its range, and the range is a subordination subalgebra of the target.
inline IsoReport iso_theorem_1(const BooleanMorphism& f, const SubordinationAlgebra& src,
                               const SubordinationAlgebra& dst) {
  IsoReport rep;
  SubMorphismReport mor = check_morphism(f, src, dst);
  if (!mor.satisfies(MorphismKind::white)) {
    rep.detail = "hypothesis failure: f is not a white morphism";
    return rep;
  }
  std::vector<Elem> image;
  for (Elem v : f.map)
    if (std::find(image.begin(), image.end(), v) == image.end()) image.push_back(v);
  std::sort(image.begin(), image.end());
  SubalgebraReport sub = is_subalgebra(dst, image);
  if (!sub.holds(MorphismKind::white)) {
    rep.detail = "range is not a white subalgebra";
    return rep;
  }
  ElemPartition ker = kernel_partition(f);
  QuotientResult q = quotient(src, ker, CongruenceKind::white);
  ReifiedSubalgebra range = reify_subalgebra(dst, image);
  // the induced map: class of x  |->  f(x), read through the reified range
  std::vector<Elem> iso(q.algebra.algebra.size(), 0);
  for (Elem c = 0; c < q.algebra.algebra.size(); ++c) {
    Elem img = f(q.representative[c]);
    auto it = std::find(range.members.begin(), range.members.end(), img);
    iso[c] = static_cast<Elem>(it - range.members.begin());
  }
  if (!detail::same_structure(q.algebra, range.structure, iso)) {
    rep.detail = "quotient by the kernel is not isomorphic to the range";
    return rep;
  }
  rep.ok = true;
  rep.detail = "quotient by the kernel isomorphic to the range";
  return rep;
}

/// Second theorem: for a subalgebra A and a congruence t, the restriction of
/// t to A is a congruence, the saturation of A is a subalgebra, and A modulo
/// the restriction is isomorphic to the saturation modulo t.
inline IsoReport iso_theorem_2(const SubordinationAlgebra& s, const std::vector<Elem>& a,
                               const ElemPartition& theta) {
  IsoReport rep;
  SubalgebraReport sub = is_subalgebra(s, a);
  if (!sub.holds(MorphismKind::white)) { rep.detail = "hypothesis failure: A is not a subalgebra"; return rep; }
  if (!is_congruence(s, theta, CongruenceKind::white)) {
    rep.detail = "hypothesis failure: theta is not a congruence";
    return rep;
  }

  ReifiedSubalgebra ra = reify_subalgebra(s, a);
  // restriction of theta to A, expressed on the compact elements
  std::vector<int> raw(ra.structure.algebra.size());
  for (Elem c = 0; c < ra.structure.algebra.size(); ++c) {
    Elem amb = ra.members[c];
    raw[c] = theta.class_of[amb];
  }
  ElemPartition restricted = normalize_partition(std::move(raw));
  if (!is_congruence(ra.structure, restricted, CongruenceKind::white)) {
    rep.detail = "restriction of theta to A is not a congruence";
    return rep;
  }

  std::vector<Elem> sat = saturation(s.algebra, theta, a);
  SubalgebraReport sat_rep = is_subalgebra(s, sat);
  if (!sat_rep.holds(MorphismKind::white)) {
    rep.detail = "saturation of A is not a subalgebra";
    return rep;
  }
  ReifiedSubalgebra rs = reify_subalgebra(s, sat);
  std::vector<int> raw2(rs.structure.algebra.size());
  for (Elem c = 0; c < rs.structure.algebra.size(); ++c) raw2[c] = theta.class_of[rs.members[c]];
  ElemPartition theta_on_sat = normalize_partition(std::move(raw2));
  if (!is_congruence(rs.structure, theta_on_sat, CongruenceKind::white)) {
    rep.detail = "theta restricted to the saturation is not a congruence";
    return rep;
  }

  QuotientResult qa = quotient(ra.structure, restricted, CongruenceKind::white);
  QuotientResult qs = quotient(rs.structure, theta_on_sat, CongruenceKind::white);
  if (qa.algebra.algebra.size() != qs.algebra.algebra.size()) {
    rep.detail = "quotients have different sizes";
    return rep;
  }
  // class of x in A/theta|A  |->  class of x in (sat A)/theta
  std::vector<Elem> iso(qa.algebra.algebra.size(), 0);
  for (Elem c = 0; c < qa.algebra.algebra.size(); ++c) {
    Elem amb = ra.members[qa.representative[c]];
    auto it = std::find(rs.members.begin(), rs.members.end(), amb);
    if (it == rs.members.end()) { rep.detail = "representative missing from the saturation"; return rep; }
    iso[c] = qs.projection(static_cast<Elem>(it - rs.members.begin()));
  }
  if (!detail::same_structure(qa.algebra, qs.algebra, iso)) {
    rep.detail = "A/theta|A is not isomorphic to (sat A)/theta";
    return rep;
  }
  rep.ok = true;
  rep.detail = "A/theta|A isomorphic to (sat A)/theta";
  return rep;
}

/// Third theorem: the congruence lattice of a quotient is isomorphic to the
/// principal filter above the congruence.
inline IsoReport iso_theorem_3(const SubordinationAlgebra& s, const ElemPartition& theta) {
  IsoReport rep;
  CongruenceReport cr = is_congruence(s, theta);
  if (!cr.holds(CongruenceKind::white)) {
    rep.detail = "hypothesis failure: theta is not a congruence";
    return rep;
  }
  Elem e = cr.zero_generator;
  QuotientResult q = quotient(s, theta, CongruenceKind::white);

  std::vector<Elem> above;
  for (Elem g : congruence_lattice(s, CongruenceKind::white).generators)
    if (s.algebra.leq(e, g)) above.push_back(g);

  std::vector<Elem> quot = congruence_lattice(q.algebra, CongruenceKind::white).generators;
  if (above.size() != quot.size()) {
    rep.detail = "filter above theta and the quotient lattice have different sizes";
    return rep;
  }
  // the correspondence g |-> projection(g) must be an order isomorphism
  for (std::size_t i = 0; i < above.size(); ++i) {
    Elem img = q.projection(above[i]);
    if (std::find(quot.begin(), quot.end(), img) == quot.end()) {
      rep.detail = "projected generator is not a quotient congruence";
      return rep;
    }
    for (std::size_t j = 0; j < above.size(); ++j) {
      bool before = s.algebra.leq(above[i], above[j]);
      bool after = q.algebra.algebra.leq(q.projection(above[i]), q.projection(above[j]));
      if (before != after) { rep.detail = "order not preserved"; return rep; }
    }
  }
  // injectivity of the projection on the filter
  for (std::size_t i = 0; i < above.size(); ++i)
    for (std::size_t j = i + 1; j < above.size(); ++j)
      if (q.projection(above[i]) == q.projection(above[j])) {
        rep.detail = "projection not injective on the filter";
        return rep;
      }
  rep.ok = true;
  rep.detail = "congruence lattice of the quotient matches the filter above theta";
  return rep;
}

}  // namespace subord

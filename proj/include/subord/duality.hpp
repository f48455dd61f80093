#pragma once

// Dualities for finite subordination algebras. At finite scale the Stone
// space of an algebra is discrete, so the topological dual and the discrete
// dual live on the same finite frames; both are implemented literally and a
// test asserts they coincide.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subord/algebra.hpp"
#include "subord/congruence.hpp"
#include "subord/formula.hpp"
#include "subord/frame.hpp"
#include "subord/subordination.hpp"

namespace subord {

/// Ultrafilter dual: points are the ultrafilters (presented as upsets of
/// atoms) and x R y holds iff the forward image of y, as a set of elements,
/// is contained in x.
inline KripkeFrame ult(const SubordinationAlgebra& s) {
  const Algebra& a = s.algebra;
  KripkeFrame f;
  for (int i = 0; i < a.atoms; ++i) f.points.push_back("u" + std::to_string(i));
  f.succ.assign(a.atoms, 0);

  std::vector<ElemMask> uf(a.atoms, 0);
  for (int i = 0; i < a.atoms; ++i)
    for (Elem b = 0; b < a.size(); ++b)
      if (a.leq(a.atom(i), b)) uf[i] |= ElemMask{1} << b;

  for (int x = 0; x < a.atoms; ++x)
    for (int y = 0; y < a.atoms; ++y) {
      ElemMask forward = 0;
      for (Elem b : elems_of(uf[y])) forward |= s.after(b);
      if ((forward & ~uf[x]) == 0) f.add_edge(x, y);
    }
  return f;
}

/// Clopen dual of a finite point space: the powerset with O prec U iff
/// everything with an edge into O lies in U.
inline SubordinationAlgebra of(const KripkeFrame& f) {
  if (f.size() > kMaxAtoms)
    throw std::invalid_argument("of: frame has more points than the supported atom bound");
  Algebra a{f.size()};
  SubordinationAlgebra s{a, std::vector<ElemMask>(a.size(), 0)};
  for (Elem o = 0; o < a.size(); ++o) {
    PointMask pre = f.pre_image(static_cast<PointMask>(o));
    for (Elem u = 0; u < a.size(); ++u)
      if ((pre & ~u) == 0) s.set_prec(o, u);
  }
  return s;
}

/// Discrete dual on atoms: alpha R beta iff every bound on beta also bounds
/// alpha.
inline KripkeFrame at(const SubordinationAlgebra& s) {
  const Algebra& a = s.algebra;
  KripkeFrame f;
  for (int i = 0; i < a.atoms; ++i) f.points.push_back("a" + std::to_string(i));
  f.succ.assign(a.atoms, 0);
  for (int x = 0; x < a.atoms; ++x)
    for (int y = 0; y < a.atoms; ++y) {
      bool rel = true;
      for (Elem b : elems_of(s.after(a.atom(y))))
        if (!a.leq(a.atom(x), b)) { rel = false; break; }
      if (rel) f.add_edge(x, y);
    }
  return f;
}

/// Discrete dual of a frame; the same construction as `of`, named for the
/// powerset functor of the discrete duality.
inline SubordinationAlgebra pset(const KripkeFrame& f) { return of(f); }

// ---------------------------------------------------------------------------
// Dual morphisms

struct DualFrameMorphism {
  KripkeFrame source;      // dual of the morphism's target
  KripkeFrame target;      // dual of the morphism's source
  std::vector<int> map;
};

/// Dual of an algebra morphism f : B -> C of the declared kind. Points of
/// the dual of C map to points of the dual of B by taking preimages of
/// ultrafilters. The output is verified to satisfy the same kind on frames.
inline DualFrameMorphism dual_morphism(const BooleanMorphism& f, const SubordinationAlgebra& src,
                                       const SubordinationAlgebra& dst, MorphismKind kind) {
  SubMorphismReport in = check_morphism(f, src, dst);
  if (!in.satisfies(kind))
    throw std::invalid_argument(std::string("dual_morphism: input is not a ") + kind_name(kind) +
                                " morphism");
  DualFrameMorphism out{ult(dst), ult(src), {}};
  const Algebra& c = dst.algebra;
  for (int gamma = 0; gamma < c.atoms; ++gamma) {
    // preimage of the ultrafilter at gamma; its least member is an atom
    Elem least = src.algebra.top();
    for (Elem b = 0; b < src.algebra.size(); ++b)
      if (c.leq(c.atom(gamma), f(b))) least = src.algebra.meet(least, b);
    int idx = -1;
    for (int i = 0; i < src.algebra.atoms; ++i)
      if (least == src.algebra.atom(i)) idx = i;
    if (idx < 0) throw std::logic_error("dual_morphism: preimage of an ultrafilter is not one");
    out.map.push_back(idx);
  }
  FrameMorphismReport check = check_frame_morphism(out.source, out.target, out.map);
  if (!check.satisfies(kind))
    throw std::logic_error("dual_morphism: dual map lost the declared kind");
  return out;
}

/// Dual of a frame morphism h of the declared kind: the preimage map on the
/// clopen algebras, verified to satisfy the same kind.
inline BooleanMorphism dual_morphism(const KripkeFrame& src, const KripkeFrame& dst,
                                     const std::vector<int>& h, MorphismKind kind) {
  FrameMorphismReport in = check_frame_morphism(src, dst, h);
  if (!in.satisfies(kind))
    throw std::invalid_argument(std::string("dual_morphism: input is not a ") + kind_name(kind) +
                                " frame morphism");
  SubordinationAlgebra b = of(dst), c = of(src);
  BooleanMorphism out{b.algebra, c.algebra, std::vector<Elem>(b.algebra.size(), 0)};
  for (Elem o = 0; o < b.algebra.size(); ++o) {
    Elem pre = 0;
    for (int x = 0; x < src.size(); ++x)
      if (o >> h[x] & 1) pre |= Elem{1} << x;
    out.map[o] = pre;
  }
  SubMorphismReport check = check_morphism(out, b, c);
  if (!check.satisfies(kind)) throw std::logic_error("dual_morphism: dual map lost the declared kind");
  return out;
}

/// Discrete-dual action on morphisms: an atom of the target is sent to the
/// meet of everything whose image bounds it. For finite algebras this is the
/// same point map as the ultrafilter route.
inline std::vector<int> at_morphism(const BooleanMorphism& f) {
  const Algebra& b = f.source;
  const Algebra& c = f.target;
  std::vector<int> out;
  for (int gamma = 0; gamma < c.atoms; ++gamma) {
    Elem meet = b.top();
    for (Elem x = 0; x < b.size(); ++x)
      if (c.leq(c.atom(gamma), f(x))) meet = b.meet(meet, x);
    int idx = -1;
    for (int i = 0; i < b.atoms; ++i)
      if (meet == b.atom(i)) idx = i;
    if (idx < 0) throw std::invalid_argument("at_morphism: map is not dual to a point map");
    out.push_back(idx);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical extension

struct CanonicalExtension {
  SubordinationAlgebra delta;  // powerset of the dual space
  KripkeFrame dual;            // the dual space itself
  BooleanMorphism r;           // b |-> the set of ultrafilters containing b
  bool injective = false;
  bool preserves = false;      // a prec b implies r(a) prec r(b)
  bool reflects = false;       // r(a) prec r(b) implies a prec b
  bool weak_embedding() const { return injective && preserves && reflects; }
};

inline CanonicalExtension canonical_extension(const SubordinationAlgebra& s) {
  CanonicalExtension ext;
  ext.dual = ult(s);
  ext.delta = of(ext.dual);
  ext.r = BooleanMorphism{s.algebra, ext.delta.algebra, std::vector<Elem>(s.algebra.size(), 0)};
  for (Elem b = 0; b < s.algebra.size(); ++b) {
    Elem set = 0;
    for (int i = 0; i < s.algebra.atoms; ++i)
      if (s.algebra.leq(s.algebra.atom(i), b)) set |= Elem{1} << i;
    ext.r.map[b] = set;
  }
  ext.injective = true;
  for (Elem x = 0; x < s.algebra.size() && ext.injective; ++x)
    for (Elem y = x + 1; y < s.algebra.size() && ext.injective; ++y)
      if (ext.r(x) == ext.r(y)) ext.injective = false;
  ext.preserves = true;
  ext.reflects = true;
  for (Elem x = 0; x < s.algebra.size(); ++x)
    for (Elem y = 0; y < s.algebra.size(); ++y) {
      bool before = s.prec(x, y);
      bool after = ext.delta.prec(ext.r(x), ext.r(y));
      if (before && !after) ext.preserves = false;
      if (after && !before) ext.reflects = false;
    }
  return ext;
}

struct RoundTripReport {
  bool ok = false;
  std::string detail;
};

/// The natural map into the double dual is an isomorphism for finite
/// algebras; this checks it explicitly for one structure.
inline RoundTripReport round_trip_algebra(const SubordinationAlgebra& s) {
  RoundTripReport rep;
  CanonicalExtension ext = canonical_extension(s);
  if (!ext.injective || ext.delta.algebra.size() != s.algebra.size()) {
    rep.detail = "natural map is not bijective";
    return rep;
  }
  if (!ext.preserves || !ext.reflects) {
    rep.detail = "natural map does not match the relations";
    return rep;
  }
  if (!check_boolean_morphism(ext.r).ok) {
    rep.detail = "natural map is not a Boolean morphism";
    return rep;
  }
  rep.ok = true;
  rep.detail = "natural map is an isomorphism";
  return rep;
}

/// Frames embed in their double duals point by point; for finite frames the
/// identification is the identity on the point indexing.
inline RoundTripReport round_trip_frame(const KripkeFrame& f) {
  RoundTripReport rep;
  KripkeFrame back = ult(of(f));
  if (back.succ == f.succ) {
    rep.ok = true;
    rep.detail = "double dual has the same edges";
  } else {
    rep.detail = "double dual edges differ";
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Universal property of the extension

struct FactorResult {
  BooleanMorphism g;    // from the extension to the target
  bool commutes = false;
  bool weak = false;
  int candidates = 0;   // weak morphisms with the factoring property found by search
  bool unique() const { return candidates == 1; }
};

/// Factors a weak morphism f : S -> C through the canonical extension of S:
/// the dual point map of f, precomposed with the atom inclusion of C, is
/// dualised back discretely. Uniqueness is certified by exhaustive search
/// over the Boolean morphisms out of the extension.
inline FactorResult factor_through_delta(const BooleanMorphism& f, const SubordinationAlgebra& s,
                                         const SubordinationAlgebra& c) {
  SubMorphismReport in = check_morphism(f, s, c);
  if (!in.satisfies(MorphismKind::weak))
    throw std::invalid_argument("factor_through_delta: input is not a weak morphism");

  CanonicalExtension ext = canonical_extension(s);
  const Algebra& ca = c.algebra;

  // point map: atom of C  ->  point of the dual of S
  std::vector<int> h;
  for (int gamma = 0; gamma < ca.atoms; ++gamma) {
    Elem least = s.algebra.top();
    for (Elem b = 0; b < s.algebra.size(); ++b)
      if (ca.leq(ca.atom(gamma), f(b))) least = s.algebra.meet(least, b);
    int idx = -1;
    for (int i = 0; i < s.algebra.atoms; ++i)
      if (least == s.algebra.atom(i)) idx = i;
    if (idx < 0) throw std::logic_error("factor_through_delta: ultrafilter preimage is not principal");
    h.push_back(idx);
  }

  FactorResult out{BooleanMorphism{ext.delta.algebra, ca, std::vector<Elem>(ext.delta.algebra.size(), 0)},
                   false, false, 0};
  for (Elem e = 0; e < ext.delta.algebra.size(); ++e) {
    Elem v = 0;
    for (int gamma = 0; gamma < ca.atoms; ++gamma)
      if (e >> h[gamma] & 1) v = ca.join(v, ca.atom(gamma));
    out.g.map[e] = v;
  }
  out.commutes = compose(out.g, ext.r).map == f.map;
  out.weak = check_morphism(out.g, ext.delta, c).satisfies(MorphismKind::weak);

  // search every candidate: Boolean morphisms out of a powerset are dual to
  // point maps from the atoms of C into the points of the extension
  int n_pts = ext.delta.algebra.atoms;
  std::vector<int> point_map(ca.atoms, 0);
  std::size_t total = 1;
  for (int i = 0; i < ca.atoms; ++i) total *= static_cast<std::size_t>(n_pts);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rest = code;
    for (int i = 0; i < ca.atoms; ++i) { point_map[i] = static_cast<int>(rest % n_pts); rest /= n_pts; }
    BooleanMorphism cand{ext.delta.algebra, ca, std::vector<Elem>(ext.delta.algebra.size(), 0)};
    for (Elem e = 0; e < ext.delta.algebra.size(); ++e) {
      Elem v = 0;
      for (int gamma = 0; gamma < ca.atoms; ++gamma)
        if (e >> point_map[gamma] & 1) v = ca.join(v, ca.atom(gamma));
      cand.map[e] = v;
    }
    if (compose(cand, ext.r).map != f.map) continue;
    if (check_morphism(cand, ext.delta, c).satisfies(MorphismKind::weak)) ++out.candidates;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Modalisation

struct Modalization {
  Palette palette = Palette::white;
  CanonicalExtension extension;
  std::vector<Elem> elements;          // sorted members of the generated algebra
  std::map<Elem, Formula> term_of;     // generating term per member; variables
                                       // x<e> stand for the source elements
};

inline std::string generator_var_name(Elem source_elem) { return "x" + std::to_string(source_elem); }

/// Modal (or tense) subalgebra of the canonical extension generated by the
/// image of the algebra; each member is tagged with a term over the
/// generators that produces it.
inline Modalization modalize(const SubordinationAlgebra& s, Palette palette,
                             std::size_t budget = 1u << 16) {
  Modalization m;
  m.palette = palette;
  m.extension = canonical_extension(s);
  const KripkeFrame& frame = m.extension.dual;
  const Algebra& da = m.extension.delta.algebra;

  for (Elem b = 0; b < s.algebra.size(); ++b) {
    Elem e = m.extension.r(b);
    if (m.term_of.count(e)) continue;
    if (m.term_of.size() >= budget) throw std::runtime_error("modalize: closure budget exceeded");
    m.term_of.emplace(e, f_var(generator_var_name(b)));
  }

  bool use_dia = palette == Palette::white || palette == Palette::bimodal;
  bool use_bdia = palette == Palette::black || palette == Palette::bimodal;

  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Elem> cur;
    cur.reserve(m.term_of.size());
    for (auto& [e, t] : m.term_of) cur.push_back(e);
    auto add = [&](Elem e, Formula t) {
      if (m.term_of.count(e)) return;
      if (m.term_of.size() >= budget) throw std::runtime_error("modalize: closure budget exceeded");
      m.term_of.emplace(e, std::move(t));
      grew = true;
    };
    for (Elem x : cur) {
      add(da.complement(x), f_not(m.term_of.at(x)));
      if (use_dia) add(frame.pre_image(x), f_dia(m.term_of.at(x)));
      if (use_bdia) add(frame.post_image(x), f_bdia(m.term_of.at(x)));
      for (Elem y : cur) {
        add(da.meet(x, y), f_and(m.term_of.at(x), m.term_of.at(y)));
        add(da.join(x, y), f_or(m.term_of.at(x), m.term_of.at(y)));
      }
    }
  }
  for (auto& [e, t] : m.term_of) m.elements.push_back(e);
  std::sort(m.elements.begin(), m.elements.end());
  return m;
}

// ---------------------------------------------------------------------------
// Products and the canonical map

struct CanonicalProductMap {
  ProductResult prod;
  CanonicalExtension prod_ext;
  std::vector<SubordinationAlgebra> factor_deltas;
  BooleanMorphism map;  // from the extension of the product to the product of extensions
  bool good = false;    // injective on the white modalisation
  bool s_good = false;  // injective on the tense modalisation
  bool bijective = false;
};

/// Builds the canonical comparison map between the extension of a product
/// and the product of the extensions, as the pairing of the lifted
/// projections, and reports injectivity on the generated modal subalgebras.
/// For finite families of finite algebras the map is an isomorphism.
inline CanonicalProductMap canonical_product_map(const std::vector<SubordinationAlgebra>& factors) {
  CanonicalProductMap out;
  out.prod = product(factors);
  out.prod_ext = canonical_extension(out.prod.algebra);

  std::vector<SubordinationAlgebra> deltas;
  std::vector<BooleanMorphism> lifted;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    CanonicalExtension fj = canonical_extension(factors[j]);
    deltas.push_back(fj.delta);
    // lift of the projection: E |-> the ultrafilters of the factor whose
    // projection preimage lies in E
    const Algebra& dj = fj.delta.algebra;
    BooleanMorphism lift{out.prod_ext.delta.algebra, dj, std::vector<Elem>(out.prod_ext.delta.algebra.size(), 0)};
    std::vector<int> h = at_morphism(out.prod.projections[j]);  // atom of factor -> atom of product
    for (Elem e = 0; e < out.prod_ext.delta.algebra.size(); ++e) {
      Elem v = 0;
      for (int gamma = 0; gamma < dj.atoms; ++gamma)
        if (e >> h[gamma] & 1) v |= Elem{1} << gamma;
      lift.map[e] = v;
    }
    lifted.push_back(std::move(lift));
  }
  out.factor_deltas = deltas;

  std::vector<SubordinationAlgebra> delta_structs = deltas;
  ProductResult delta_prod = product(delta_structs);
  out.map = pairing(lifted, delta_prod);

  auto injective_on = [&](const std::vector<Elem>& elems) {
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = i + 1; j < elems.size(); ++j)
        if (out.map(elems[i]) == out.map(elems[j])) return false;
    return true;
  };
  Modalization white = modalize(out.prod.algebra, Palette::white);
  Modalization tense = modalize(out.prod.algebra, Palette::bimodal);
  out.good = injective_on(white.elements);
  out.s_good = injective_on(tense.elements);

  std::vector<bool> hit(delta_prod.algebra.algebra.size(), false);
  out.bijective = true;
  for (Elem e = 0; e < out.prod_ext.delta.algebra.size(); ++e) {
    if (out.map(e) >= hit.size() || hit[out.map(e)]) { out.bijective = false; break; }
    hit[out.map(e)] = true;
  }
  out.bijective = out.bijective && out.prod_ext.delta.algebra.size() == delta_prod.algebra.algebra.size();
  return out;
}

// ---------------------------------------------------------------------------
// Smoothness of the extended operator

struct SigmaPiReport {
  PointMask sigma = 0;
  PointMask pi = 0;
  PointMask direct = 0;
  bool smooth() const { return sigma == pi && pi == direct; }
};

/// Evaluates the upper and lower extensions of the predecessor operator on a
/// finite space literally: every subset is clopen there, so the defining
/// families range over all subsets.
inline SigmaPiReport sigma_pi_extension(const KripkeFrame& f, PointMask e) {
  SigmaPiReport rep;
  rep.direct = f.pre_image(e);
  const PointMask all = f.all();

  // lower extension: intersection over open supersets of the images
  rep.pi = all;
  PointMask extra = all & ~e;
  PointMask sub = extra;
  while (true) {
    PointMask o = e | sub;
    rep.pi &= f.pre_image(o);
    if (sub == 0) break;
    sub = (sub - 1) & extra;
  }

  // upper extension: union over closed subsets of the clopen sandwiches
  rep.sigma = 0;
  PointMask subf = e;
  while (true) {
    PointMask closed = subf;
    PointMask inner = all;
    PointMask extra2 = all & ~closed;
    PointMask sup = extra2;
    while (true) {
      inner &= f.pre_image(closed | sup);
      if (sup == 0) break;
      sup = (sup - 1) & extra2;
    }
    rep.sigma |= inner;
    if (subf == 0) break;
    subf = (subf - 1) & e;
  }
  return rep;
}

inline SigmaPiReport sigma_pi_extension(const SubordinationAlgebra& s, PointMask e) {
  return sigma_pi_extension(at(s), e);
}

}  // namespace subord

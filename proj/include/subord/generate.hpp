#pragma once

// Deterministic enumerators and seeded random generators for structures.
// All randomness flows through one fixed engine so reports are reproducible
// byte for byte across runs and platforms.

#include <cstdint>
#include <random>
#include <vector>

#include "subord/algebra.hpp"
#include "subord/congruence.hpp"
#include "subord/frame.hpp"
#include "subord/subordination.hpp"

namespace subord {

using Rng = std::mt19937_64;

inline Rng seeded_rng(std::uint64_t seed) { return Rng(seed); }

inline std::uint64_t rng_below(Rng& rng, std::uint64_t n) { return rng() % n; }

/// Every subordination relation obeying the base axioms on a small algebra,
/// found by filtering the full candidate space. Feasible for 1 or 2 atoms.
inline std::vector<SubordinationAlgebra> all_valid_subordinations_exhaustive(int atoms) {
  if (atoms > 2) throw std::invalid_argument("all_valid_subordinations_exhaustive: too large");
  Algebra a = powerset_algebra(atoms);
  const int cells = static_cast<int>(a.size() * a.size());
  std::vector<SubordinationAlgebra> out;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << cells); ++code) {
    SubordinationAlgebra s{a, std::vector<ElemMask>(a.size(), 0)};
    for (int i = 0; i < cells; ++i)
      if (code >> i & 1) s.set_prec(Elem(i / a.size()), Elem(i % a.size()));
    if (is_valid_subordination(s)) out.push_back(std::move(s));
  }
  return out;
}

/// Every subordination structure on the given atom count, generated through
/// the operator presentation (join-preserving tables); exhaustive and cheap
/// because a table is determined by its atom values.
inline std::vector<SubordinationAlgebra> all_valid_subordinations(int atoms) {
  Algebra a = powerset_algebra(atoms);
  std::vector<SubordinationAlgebra> out;
  std::vector<Elem> atom_val(atoms, 0);
  while (true) {
    std::vector<Elem> table(a.size(), 0);
    for (Elem e = 0; e < a.size(); ++e) {
      Elem v = 0;
      for (int i = 0; i < atoms; ++i)
        if (e >> i & 1) v = a.join(v, atom_val[i]);
      table[e] = v;
    }
    out.push_back(from_operator(a, table, OperatorColour::white));
    int i = 0;
    for (; i < atoms; ++i) {
      if (atom_val[i] + 1 < a.size()) { ++atom_val[i]; break; }
      atom_val[i] = 0;
    }
    if (i == atoms) break;
  }
  return out;
}

inline KripkeFrame random_frame(Rng& rng, int points, int edge_percent = 40) {
  KripkeFrame f = make_frame(points, {});
  for (int x = 0; x < points; ++x)
    for (int y = 0; y < points; ++y)
      if (rng_below(rng, 100) < static_cast<std::uint64_t>(edge_percent)) f.add_edge(x, y);
  return f;
}

inline SubordinationAlgebra random_subordination(Rng& rng, int atoms, int edge_percent = 40) {
  Algebra a = powerset_algebra(atoms);
  std::vector<Elem> atom_val(atoms, 0);
  for (int i = 0; i < atoms; ++i)
    for (int j = 0; j < atoms; ++j)
      if (rng_below(rng, 100) < static_cast<std::uint64_t>(edge_percent)) atom_val[i] |= Elem{1} << j;
  std::vector<Elem> table(a.size(), 0);
  for (Elem e = 0; e < a.size(); ++e) {
    Elem v = 0;
    for (int i = 0; i < atoms; ++i)
      if (e >> i & 1) v = a.join(v, atom_val[i]);
    table[e] = v;
  }
  return from_operator(a, table, OperatorColour::white);
}

/// All partitions of {0, ..., n-1} as restricted growth strings.
inline std::vector<std::vector<int>> all_set_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> rgs(n, 0);
  while (true) {
    out.push_back(rgs);
    int i = n - 1;
    for (; i > 0; --i) {
      int maxv = 0;
      for (int j = 0; j < i; ++j) maxv = std::max(maxv, rgs[j]);
      if (rgs[i] <= maxv) { ++rgs[i]; break; }
      rgs[i] = 0;
    }
    if (i == 0) break;
  }
  return out;
}

/// All Boolean subalgebras of a powerset algebra: one per partition of the
/// atom set, the subalgebra of the blocks' unions.
inline std::vector<std::vector<Elem>> all_boolean_subalgebras(const Algebra& a) {
  std::vector<std::vector<Elem>> out;
  for (auto& rgs : all_set_partitions(a.atoms)) {
    int classes = 0;
    for (int c : rgs) classes = std::max(classes, c + 1);
    std::vector<Elem> block(classes, 0);
    for (int i = 0; i < a.atoms; ++i) block[rgs[i]] |= Elem{1} << i;
    std::vector<Elem> members;
    for (Elem sel = 0; sel < (Elem{1} << classes); ++sel) {
      Elem v = 0;
      for (int c = 0; c < classes; ++c)
        if (sel >> c & 1) v |= block[c];
      members.push_back(v);
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

/// All Boolean morphisms between two powerset algebras; each is the preimage
/// map of a point map from target atoms to source atoms.
inline std::vector<BooleanMorphism> all_boolean_morphisms(const Algebra& src, const Algebra& dst) {
  std::vector<BooleanMorphism> out;
  std::vector<int> h(dst.atoms, 0);
  while (true) {
    BooleanMorphism f{src, dst, std::vector<Elem>(src.size(), 0)};
    for (Elem e = 0; e < src.size(); ++e) {
      Elem v = 0;
      for (int p = 0; p < dst.atoms; ++p)
        if (e >> h[p] & 1) v |= Elem{1} << p;
      f.map[e] = v;
    }
    out.push_back(std::move(f));
    int i = 0;
    for (; i < dst.atoms; ++i) {
      if (h[i] + 1 < src.atoms) { ++h[i]; break; }
      h[i] = 0;
    }
    if (i == dst.atoms) break;
  }
  return out;
}

inline BooleanMorphism random_boolean_morphism(Rng& rng, const Algebra& src, const Algebra& dst) {
  std::vector<int> h(dst.atoms, 0);
  for (int& v : h) v = static_cast<int>(rng_below(rng, src.atoms));
  BooleanMorphism f{src, dst, std::vector<Elem>(src.size(), 0)};
  for (Elem e = 0; e < src.size(); ++e) {
    Elem v = 0;
    for (int p = 0; p < dst.atoms; ++p)
      if (e >> h[p] & 1) v |= Elem{1} << p;
    f.map[e] = v;
  }
  return f;
}

}  // namespace subord

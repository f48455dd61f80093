#pragma once

// Finite Kripke frames. A finite frame doubles as a point space with the
// discrete topology, where every subset is clopen and every binary relation
// is closed, so the same type serves the topological and the discrete story.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "subord/algebra.hpp"
#include "subord/subordination.hpp"

namespace subord {

using PointMask = std::uint32_t;

inline constexpr int kMaxPoints = 16;

struct KripkeFrame {
  std::vector<std::string> points;
  std::vector<PointMask> succ;  // succ[x] has bit y set iff x R y

  int size() const { return static_cast<int>(points.size()); }
  PointMask all() const { return size() == 32 ? ~PointMask{0} : (PointMask{1} << size()) - 1; }
  bool edge(int x, int y) const { return succ[x] >> y & 1; }
  void add_edge(int x, int y) { succ[x] |= PointMask{1} << y; }

  /// Everything with an edge into E.
  PointMask pre_image(PointMask e) const {
    PointMask out = 0;
    for (int x = 0; x < size(); ++x)
      if (succ[x] & e) out |= PointMask{1} << x;
    return out;
  }
  /// Everything reachable from E in one step.
  PointMask post_image(PointMask e) const {
    PointMask out = 0;
    for (int x = 0; x < size(); ++x)
      if (e >> x & 1) out |= succ[x];
    return out;
  }

  int point_index(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (points[i] == name) return i;
    throw std::invalid_argument("unknown point: " + name);
  }

  bool operator==(const KripkeFrame& o) const { return points == o.points && succ == o.succ; }
};

inline KripkeFrame make_frame(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 0 || n > kMaxPoints) throw std::invalid_argument("make_frame: point count out of range");
  KripkeFrame f;
  for (int i = 0; i < n; ++i) f.points.push_back("p" + std::to_string(i));
  f.succ.assign(n, 0);
  for (auto [x, y] : edges) {
    if (x < 0 || x >= n || y < 0 || y >= n) throw std::invalid_argument("make_frame: edge out of range");
    f.add_edge(x, y);
  }
  return f;
}

inline KripkeFrame converse(const KripkeFrame& f) {
  KripkeFrame out{f.points, std::vector<PointMask>(f.points.size(), 0)};
  for (int x = 0; x < f.size(); ++x)
    for (int y = 0; y < f.size(); ++y)
      if (f.edge(x, y)) out.add_edge(y, x);
  return out;
}

inline KripkeFrame disjoint_union(const KripkeFrame& a, const KripkeFrame& b) {
  KripkeFrame out;
  for (auto& p : a.points) out.points.push_back("l." + p);
  for (auto& p : b.points) out.points.push_back("r." + p);
  out.succ.assign(out.points.size(), 0);
  for (int x = 0; x < a.size(); ++x) out.succ[x] = a.succ[x];
  for (int x = 0; x < b.size(); ++x) out.succ[a.size() + x] = static_cast<PointMask>(b.succ[x]) << a.size();
  return out;
}

/// Subframe on the points selected by `keep`, relabelled compactly.
inline KripkeFrame subframe(const KripkeFrame& f, PointMask keep) {
  KripkeFrame out;
  std::vector<int> idx(f.size(), -1);
  for (int x = 0; x < f.size(); ++x)
    if (keep >> x & 1) {
      idx[x] = out.size();
      out.points.push_back(f.points[x]);
    }
  out.succ.assign(out.points.size(), 0);
  for (int x = 0; x < f.size(); ++x)
    for (int y = 0; y < f.size(); ++y)
      if ((keep >> x & 1) && (keep >> y & 1) && f.edge(x, y)) out.add_edge(idx[x], idx[y]);
  return out;
}

// ---------------------------------------------------------------------------
// Frame morphisms

struct FrameMorphism {
  const KripkeFrame* source = nullptr;
  const KripkeFrame* target = nullptr;
  std::vector<int> map;  // point mapping

  int operator()(int x) const { return map.at(x); }
};

struct FrameMorphismReport {
  MorphismAxiomVerdict w, dia, bdia;
  bool satisfies(MorphismKind k) const {
    if (!w.holds) return false;
    switch (k) {
      case MorphismKind::weak: return true;
      case MorphismKind::white: return dia.holds;
      case MorphismKind::black: return bdia.holds;
      case MorphismKind::strong: return dia.holds && bdia.holds;
    }
    return false;
  }
};

/// Point-level counterparts of the morphism axioms: edge preservation, the
/// back condition for successors and the back condition for predecessors.
inline FrameMorphismReport check_frame_morphism(const KripkeFrame& src, const KripkeFrame& dst,
                                                const std::vector<int>& h) {
  if (h.size() != src.points.size()) throw std::invalid_argument("check_frame_morphism: not total");
  for (int v : h)
    if (v < 0 || v >= dst.size()) throw std::invalid_argument("check_frame_morphism: range error");

  FrameMorphismReport rep;
  for (int x = 0; x < src.size() && rep.w.holds; ++x)
    for (int y = 0; y < src.size() && rep.w.holds; ++y)
      if (src.edge(x, y) && !dst.edge(h[x], h[y])) {
        rep.w.holds = false;
        rep.w.witness = {Elem(x), Elem(y)};
      }

  for (int x = 0; x < src.size() && rep.dia.holds; ++x)
    for (int y = 0; y < dst.size() && rep.dia.holds; ++y) {
      if (!dst.edge(h[x], y)) continue;
      bool found = false;
      for (int z = 0; z < src.size() && !found; ++z)
        if (h[z] == y && src.edge(x, z)) found = true;
      if (!found) { rep.dia.holds = false; rep.dia.witness = {Elem(x), Elem(y)}; }
    }

  for (int x = 0; x < src.size() && rep.bdia.holds; ++x)
    for (int y = 0; y < dst.size() && rep.bdia.holds; ++y) {
      if (!dst.edge(y, h[x])) continue;
      bool found = false;
      for (int z = 0; z < src.size() && !found; ++z)
        if (h[z] == y && src.edge(z, x)) found = true;
      if (!found) { rep.bdia.holds = false; rep.bdia.witness = {Elem(x), Elem(y)}; }
    }

  return rep;
}

/// Exhaustive bijection search; intended for the small frames this library
/// works with (a handful of points), where canonical forms are overkill.
inline std::optional<std::vector<int>> frame_isomorphism(const KripkeFrame& a, const KripkeFrame& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::vector<int> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int x = 0; x < a.size() && ok; ++x)
      for (int y = 0; y < a.size() && ok; ++y)
        if (a.edge(x, y) != b.edge(perm[x], perm[y])) ok = false;
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

inline bool isomorphic(const KripkeFrame& a, const KripkeFrame& b) {
  return frame_isomorphism(a, b).has_value();
}

// ---------------------------------------------------------------------------
// Point congruences

/// Partition of the points of a frame, one class id per point.
struct PointPartition {
  std::vector<int> class_of;
  int classes = 0;
};

inline PointPartition partition_from_blocks(int n, const std::vector<std::vector<int>>& blocks) {
  PointPartition p;
  p.class_of.assign(n, -1);
  for (auto& blk : blocks) {
    for (int x : blk) {
      if (x < 0 || x >= n || p.class_of[x] != -1)
        throw std::invalid_argument("partition_from_blocks: not a partition");
      p.class_of[x] = p.classes;
    }
    ++p.classes;
  }
  for (int c : p.class_of)
    if (c == -1) throw std::invalid_argument("partition_from_blocks: does not cover");
  return p;
}

/// Finest partition extending the given pairs (reflexive-transitive closure).
inline PointPartition partition_generated_by(int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [x, y] : pairs) parent[find(x)] = find(y);
  PointPartition p;
  p.class_of.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    int r = find(x);
    if (p.class_of[r] == -1) p.class_of[r] = p.classes++;
    p.class_of[x] = p.class_of[r];
  }
  return p;
}

struct FrameCongruenceReport {
  bool white = true;  // forward zig-zag condition
  bool black = true;  // backward zig-zag condition
  std::vector<int> witness;  // offending (x, y, z)
};

/// Zig-zag conditions for a point partition to induce a quotient frame whose
/// projection has the corresponding morphism kind. On a finite discrete
/// space the Boolean separation condition is automatic.
inline FrameCongruenceReport check_frame_congruence(const KripkeFrame& f, const PointPartition& p) {
  FrameCongruenceReport rep;
  for (int x = 0; x < f.size(); ++x)
    for (int y = 0; y < f.size(); ++y) {
      if (p.class_of[x] != p.class_of[y]) continue;
      for (int z = 0; z < f.size(); ++z) {
        if (rep.white && f.edge(y, z)) {
          bool found = false;
          for (int u = 0; u < f.size() && !found; ++u)
            if (f.edge(x, u) && p.class_of[u] == p.class_of[z]) found = true;
          if (!found) { rep.white = false; rep.witness = {x, y, z}; }
        }
        if (rep.black && f.edge(z, y)) {
          bool found = false;
          for (int u = 0; u < f.size() && !found; ++u)
            if (f.edge(u, x) && p.class_of[u] == p.class_of[z]) found = true;
          if (!found && rep.black) {
            rep.black = false;
            if (rep.witness.empty()) rep.witness = {x, y, z};
          }
        }
      }
    }
  return rep;
}

/// Quotient frame: classes as points, an edge between classes iff some
/// representatives carry an edge.
inline KripkeFrame quotient_frame(const KripkeFrame& f, const PointPartition& p) {
  KripkeFrame out;
  out.points.assign(p.classes, "");
  out.succ.assign(p.classes, 0);
  for (int x = 0; x < f.size(); ++x) {
    std::string& name = out.points[p.class_of[x]];
    name = name.empty() ? f.points[x] : name + "+" + f.points[x];
  }
  for (int x = 0; x < f.size(); ++x)
    for (int y = 0; y < f.size(); ++y)
      if (f.edge(x, y)) out.add_edge(p.class_of[x], p.class_of[y]);
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

/// All frames with exactly n labelled points.
inline std::vector<KripkeFrame> all_frames(int n) {
  if (n > 3) throw std::invalid_argument("all_frames: exhaustive enumeration is capped at 3 points");
  std::vector<KripkeFrame> out;
  const int bits = n * n;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
    KripkeFrame f = make_frame(n, {});
    for (int i = 0; i < bits; ++i)
      if (code >> i & 1) f.add_edge(i / n, i % n);
    out.push_back(std::move(f));
  }
  return out;
}

/// All frames with 1..n labelled points.
inline std::vector<KripkeFrame> all_frames_up_to(int n) {
  std::vector<KripkeFrame> out;
  for (int k = 1; k <= n; ++k) {
    auto fs = all_frames(k);
    out.insert(out.end(), fs.begin(), fs.end());
  }
  return out;
}

}  // namespace subord

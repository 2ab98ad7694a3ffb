#pragma once

#include "catalog.hpp"
#include "polygon.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace reflexo {

struct MutationData {
  LatticePoint v;  // primitive, dual lattice
  LatticePoint w;  // primitive, <v, w> = 0; H = conv(0, w)
  friend bool operator==(const MutationData&, const MutationData&) = default;
};

inline std::string to_string(const MutationData& d) {
  return "v=" + to_string(d.v) + " w=" + to_string(d.w);
}

inline LatticePoint trop_map(LatticePoint m, const MutationData& d) {
  long s = std::min(0L, dot(m, d.w));
  return m - s * d.v;
}

namespace detail {

// Points of P at height h = <v, .>, doubled so half-integral points are exact.
inline std::vector<LatticePoint> doubled_slice(const Polygon& P, LatticePoint v, long h) {
  std::vector<LatticePoint> out;
  std::size_t n = P.size();
  for (std::size_t i = 0; i < n; ++i) {
    LatticePoint a = P[i], b = P[(i + 1) % n];
    long ha = dot(v, a), hb = dot(v, b);
    if (ha == h) out.push_back(2 * a);
    if ((ha < h && hb > h) || (ha > h && hb < h)) {
      // a + (b - a)(h - ha)/(hb - ha), doubled
      long num = 2 * (h - ha), den = hb - ha;
      LatticePoint d = b - a;
      if ((num * d.x) % den || (num * d.y) % den)
        throw std::logic_error("slice point is not half-integral");
      out.push_back(2 * a + LatticePoint{num * d.x / den, num * d.y / den});
    }
  }
  return out;
}

}  // namespace detail

inline Polygon mutate(const Polygon& P, const MutationData& d) {
  const LatticePoint v = d.v, w = d.w;
  if (dot(v, w) != 0) throw std::invalid_argument("w is not orthogonal to v");
  if (!is_primitive(v) || !is_primitive(w)) throw std::invalid_argument("v and w must be primitive");
  long lo = dot(v, P[0]), hi = lo;
  for (const auto& p : P.vertices()) lo = std::min(lo, dot(v, p)), hi = std::max(hi, dot(v, p));
  if (hi > 1) throw std::domain_error("slice above height 1 nonempty");
  if (lo != -1) throw std::domain_error("not mutable with this H");
  std::vector<LatticePoint> bottom;
  for (const auto& p : P.vertices())
    if (dot(v, p) == -1) bottom.push_back(p);
  if (bottom.size() != 2) throw std::domain_error("not mutable with this H");
  LatticePoint p = bottom[0], q = bottom[1];
  LatticePoint pq = q - p;
  long len = content(pq);
  if (LatticePoint{pq.x / len, pq.y / len} != w) std::swap(p, q), pq = q - p;
  if (LatticePoint{pq.x / len, pq.y / len} != w) throw std::domain_error("not mutable with this H");
  // P_-1 = R + H; R must start at p and stop one step of w short of q
  LatticePoint r0 = p, r1 = q - w;
  if (content(r1 - r0) != len - 1) throw std::logic_error("segment decomposition is not unique");
  std::vector<LatticePoint> pts{2 * r0, 2 * r1};
  for (const auto& x : detail::doubled_slice(P, v, 0)) pts.push_back(x);
  for (const auto& x : detail::doubled_slice(P, v, 1)) pts.push_back(x), pts.push_back(x + 2 * w);
  auto h = hull_points(pts);
  for (auto& x : h) {
    if (x.x % 2 || x.y % 2) throw std::logic_error("mutation produced a non-lattice vertex");
    x = {x.x / 2, x.y / 2};
  }
  Polygon out(h);
  if (!is_reflexive(out)) throw std::logic_error("mutation produced a non-reflexive polygon");
  return out;
}

inline std::vector<std::pair<MutationData, Polygon>> all_mutations(const Polygon& P) {
  std::vector<std::pair<MutationData, Polygon>> out;
  for (const auto& e : edges(P)) {
    LatticePoint v = e.inner_normal;
    for (LatticePoint w : {LatticePoint{-v.y, v.x}, LatticePoint{v.y, -v.x}}) {
      try {
        out.push_back({{v, w}, canonical_form(mutate(P, {v, w}))});
      } catch (const std::domain_error&) {
      }
    }
  }
  return out;
}

struct MutationGraph {
  std::vector<std::string> nodes;
  struct Arc {
    std::string from, to;
    MutationData data;
  };
  std::vector<Arc> arcs;
};

inline MutationGraph mutation_graph(const std::vector<NamedPolygon>& cat) {
  MutationGraph g;
  for (const auto& np : cat) g.nodes.push_back(np.name);
  for (const auto& np : cat)
    for (const auto& [d, Q] : all_mutations(np.polygon)) {
      auto target = name_of(cat, Q);
      if (!target) throw std::logic_error("mutation left the catalog from " + np.name);
      g.arcs.push_back({np.name, *target, d});
    }
  return g;
}

// Connected components of the mutation graph; each sorted, then sorted by
// first element.
inline std::vector<std::vector<std::string>> mutation_classes(const std::vector<NamedPolygon>& cat) {
  auto g = mutation_graph(cat);
  std::map<std::string, std::string> parent;
  for (const auto& n : g.nodes) parent[n] = n;
  std::function<std::string(const std::string&)> find = [&](const std::string& x) {
    if (parent[x] == x) return x;
    return parent[x] = find(parent[x]);
  };
  for (const auto& a : g.arcs) parent[find(a.from)] = find(a.to);
  std::map<std::string, std::vector<std::string>> groups;
  for (const auto& n : g.nodes) groups[find(n)].push_back(n);
  std::vector<std::vector<std::string>> out;
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end());
    out.push_back(members);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace reflexo

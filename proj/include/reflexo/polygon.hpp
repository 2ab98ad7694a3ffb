#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace reflexo {

struct LatticePoint {
  long x = 0, y = 0;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
  friend LatticePoint operator+(LatticePoint a, LatticePoint b) { return {a.x + b.x, a.y + b.y}; }
  friend LatticePoint operator-(LatticePoint a, LatticePoint b) { return {a.x - b.x, a.y - b.y}; }
  friend LatticePoint operator-(LatticePoint a) { return {-a.x, -a.y}; }
  friend LatticePoint operator*(long k, LatticePoint a) { return {k * a.x, k * a.y}; }
};

inline long dot(LatticePoint a, LatticePoint b) { return a.x * b.x + a.y * b.y; }
inline long cross(LatticePoint a, LatticePoint b) { return a.x * b.y - a.y * b.x; }
inline long content(LatticePoint a) { return std::gcd(std::labs(a.x), std::labs(a.y)); }
inline bool is_primitive(LatticePoint a) { return content(a) == 1; }

inline std::string to_string(LatticePoint p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

// 2x2 integer matrix acting on column vectors.
struct Mat2 {
  long a = 1, b = 0, c = 0, d = 1;
  long det() const { return a * d - b * c; }
  LatticePoint operator()(LatticePoint p) const { return {a * p.x + b * p.y, c * p.x + d * p.y}; }
  friend Mat2 operator*(const Mat2& m, const Mat2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c,
            m.c * n.b + m.d * n.d};
  }
};

struct Edge {
  LatticePoint tail, head;
  LatticePoint inner_normal;  // primitive, in the dual lattice
  long lattice_length = 0;
  LatticePoint direction() const {
    LatticePoint d = head - tail;
    return {d.x / lattice_length, d.y / lattice_length};
  }
};

// Strictly convex CCW lattice polygon.
class Polygon {
 public:
  Polygon() = default;
  explicit Polygon(std::vector<LatticePoint> vertices) : v_(std::move(vertices)) {
    if (v_.size() < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < v_.size(); ++i) {
      LatticePoint a = v_[i], b = v_[(i + 1) % v_.size()], c = v_[(i + 2) % v_.size()];
      if (cross(b - a, c - b) <= 0)
        throw std::invalid_argument("vertices are not strictly convex in CCW order");
    }
  }
  const std::vector<LatticePoint>& vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  const LatticePoint& operator[](std::size_t i) const { return v_[i]; }
  friend bool operator==(const Polygon&, const Polygon&) = default;
  friend auto operator<=>(const Polygon& a, const Polygon& b) { return a.v_ <=> b.v_; }

 private:
  std::vector<LatticePoint> v_;
};

inline std::string to_string(const Polygon& P) {
  std::string s = "[";
  for (std::size_t i = 0; i < P.size(); ++i) s += (i ? "," : "") + to_string(P[i]);
  return s + "]";
}

// CCW hull without collinear points; throws on degenerate input.
inline std::vector<LatticePoint> hull_points(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<LatticePoint> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 1]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 1]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

inline Polygon convex_hull(const std::vector<LatticePoint>& pts) {
  auto h = hull_points(pts);
  if (h.size() < 3) throw std::invalid_argument("degenerate polygon");
  return Polygon(std::move(h));
}

inline std::vector<Edge> edges(const Polygon& P) {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < P.size(); ++i) {
    LatticePoint a = P[i], b = P[(i + 1) % P.size()], d = b - a;
    long l = content(d);
    out.push_back({a, b, {-d.y / l, d.x / l}, l});
  }
  return out;
}

inline long volume(const Polygon& P) {
  long twice = 0;
  for (std::size_t i = 0; i < P.size(); ++i) twice += cross(P[i], P[(i + 1) % P.size()]);
  if (twice <= 0) throw std::invalid_argument("degenerate polygon");
  return twice;
}

inline bool contains_origin_strictly(const Polygon& P) {
  for (const auto& e : edges(P))
    if (dot(e.inner_normal, e.tail) >= 0) return false;
  return true;
}

inline bool is_reflexive(const Polygon& P) {
  for (const auto& e : edges(P))
    if (dot(e.inner_normal, e.tail) != -1) return false;
  return true;
}

inline Polygon polar_dual(const Polygon& P) {
  if (!is_reflexive(P)) throw std::domain_error("polar is not a lattice polygon");
  std::vector<LatticePoint> v;
  for (const auto& e : edges(P)) v.push_back(e.inner_normal);
  return Polygon(std::move(v));
}

// Boundary lattice points in CCW order starting at the first vertex.
inline std::vector<LatticePoint> boundary_points(const Polygon& P) {
  std::vector<LatticePoint> out;
  for (const auto& e : edges(P)) {
    LatticePoint d = e.direction();
    for (long k = 0; k < e.lattice_length; ++k) out.push_back(e.tail + k * d);
  }
  return out;
}

// #(mP ∩ Z^2)
inline long lattice_point_count(const Polygon& P, long m) {
  if (m < 0) throw std::invalid_argument("negative dilation");
  auto es = edges(P);
  long lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  for (const auto& p : P.vertices()) {
    lo_x = std::min(lo_x, m * p.x), hi_x = std::max(hi_x, m * p.x);
    lo_y = std::min(lo_y, m * p.y), hi_y = std::max(hi_y, m * p.y);
  }
  long n = 0;
  for (long x = lo_x; x <= hi_x; ++x)
    for (long y = lo_y; y <= hi_y; ++y) {
      bool in = true;
      for (const auto& e : es)
        if (dot(e.inner_normal, {x, y}) < m * dot(e.inner_normal, e.tail)) {
          in = false;
          break;
        }
      n += in;
    }
  return n;
}

inline Polygon transform(const Mat2& U, const Polygon& P) {
  if (std::labs(U.det()) != 1) throw std::invalid_argument("matrix is not unimodular");
  std::vector<LatticePoint> v;
  for (const auto& p : P.vertices()) v.push_back(U(p));
  if (U.det() < 0) std::reverse(v.begin(), v.end());
  return Polygon(std::move(v));
}

namespace detail {

// x, y with a*x + b*y = gcd(a, b) >= 0
inline std::array<long, 3> ext_gcd(long a, long b) {
  long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    long q = a / b;
    long t = a - q * b;
    a = b, b = t;
    t = x0 - q * x1, x0 = x1, x1 = t;
    t = y0 - q * y1, y0 = y1, y1 = t;
  }
  if (a < 0) a = -a, x0 = -x0, y0 = -y0;
  return {a, x0, y0};
}

inline long floor_mod(long a, long m) { return ((a % m) + m) % m; }

inline std::vector<LatticePoint> rotate_to_min(std::vector<LatticePoint> v) {
  auto it = std::min_element(v.begin(), v.end());
  std::rotate(v.begin(), it, v.end());
  return v;
}

}  // namespace detail

// Normal form under GL2(Z): each nonzero vertex v is sent to (g, 0) with
// g = content(v), both orientations are tried, and the remaining shear
// freedom is fixed by the next CCW vertex. The least vertex list wins.
inline Polygon canonical_form(const Polygon& P) {
  std::vector<LatticePoint> best;
  for (const auto& v : P.vertices()) {
    if (v.x == 0 && v.y == 0) continue;
    long g = content(v);
    LatticePoint u{v.x / g, v.y / g};
    auto [one, s, t] = detail::ext_gcd(u.x, u.y);
    Mat2 A{s, t, -u.y, u.x};
    for (long refl : {1L, -1L}) {
      Mat2 B = Mat2{1, 0, 0, refl} * A;
      std::vector<LatticePoint> img;
      for (const auto& p : P.vertices()) img.push_back(B(p));
      img = hull_points(img);
      auto at = std::find(img.begin(), img.end(), LatticePoint{g, 0});
      std::size_t i = static_cast<std::size_t>(at - img.begin());
      LatticePoint w{0, 0};
      for (std::size_t k = 1; k < img.size(); ++k) {
        w = img[(i + k) % img.size()];
        if (w.y != 0) break;
      }
      long b = std::labs(w.y);
      long target = detail::floor_mod(w.x, b);
      long shear = (target - w.x) / w.y;
      Mat2 S{1, shear, 0, 1};
      for (auto& p : img) p = S(p);
      img = detail::rotate_to_min(img);
      if (best.empty() || img < best) best = img;
    }
  }
  return Polygon(std::move(best));
}

inline bool equivalent(const Polygon& a, const Polygon& b) {
  return canonical_form(a) == canonical_form(b);
}

// All reflexive polygons with vertices in [-bound, bound]^2 up to GL2(Z).
// Consecutive vertices a, b of a reflexive polygon satisfy
// cross(a, b) = lattice length of [a, b], which drives a depth-first search
// over primitive points sorted by angle.
inline std::vector<Polygon> enumerate_reflexive(long bound) {
  if (bound < 1) throw std::invalid_argument("bound must be positive");
  std::vector<LatticePoint> pts;
  for (long x = -bound; x <= bound; ++x)
    for (long y = -bound; y <= bound; ++y)
      if ((x || y) && is_primitive({x, y})) pts.push_back({x, y});
  auto half = [](LatticePoint p) { return (p.y < 0 || (p.y == 0 && p.x < 0)) ? 1 : 0; };
  std::sort(pts.begin(), pts.end(), [&](LatticePoint a, LatticePoint b) {
    if (half(a) != half(b)) return half(a) < half(b);
    return cross(a, b) > 0;
  });
  auto edge_ok = [](LatticePoint a, LatticePoint b) {
    long c = cross(a, b);
    return c > 0 && c == content(b - a);
  };
  auto turn_ok = [](LatticePoint a, LatticePoint b, LatticePoint c) {
    return cross(b - a, c - b) > 0;
  };
  std::set<Polygon> found;
  std::vector<std::size_t> path;
  std::function<void(std::size_t)> dfs = [&](std::size_t next) {
    LatticePoint first = pts[path.front()], last = pts[path.back()];
    if (path.size() >= 3 && edge_ok(last, first) &&
        turn_ok(pts[path[path.size() - 2]], last, first) &&
        turn_ok(last, first, pts[path[1]])) {
      std::vector<LatticePoint> v;
      for (auto i : path) v.push_back(pts[i]);
      found.insert(canonical_form(Polygon(std::move(v))));
    }
    for (std::size_t j = next; j < pts.size(); ++j) {
      if (!edge_ok(last, pts[j])) continue;
      if (path.size() >= 2 && !turn_ok(pts[path[path.size() - 2]], last, pts[j])) continue;
      path.push_back(j);
      dfs(j + 1);
      path.pop_back();
    }
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    path = {i};
    dfs(i + 1);
  }
  return {found.begin(), found.end()};
}

}  // namespace reflexo

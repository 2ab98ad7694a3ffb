#pragma once

#include "algebra.hpp"
#include "laurent.hpp"

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace reflexo {

struct PowerSeries {
  std::vector<Rational> c;  // c_0 .. c_M
  std::size_t size() const { return c.size(); }
  Rational operator[](std::size_t m) const { return m < c.size() ? c[m] : Rational(0); }
};

// c_m = constant term of f^m, m = 0..M. Terms that can no longer return to
// the origin within the remaining multiplications are dropped.
inline PowerSeries period_coefficients(const LaurentPoly& f, std::size_t M) {
  PowerSeries s;
  s.c.assign(M + 1, Rational(0));
  s.c[0] = 1;
  if (M == 0 || f.is_zero()) return s;

  // f = g / den with g integral
  Integer den = 1;
  for (const auto& [u, c] : f.terms()) den = lcm(den, Integer(c.get_den()));
  std::vector<std::pair<LatticePoint, Integer>> g;
  for (const auto& [u, c] : f.terms()) g.push_back({u, Integer(c.get_num() * (den / c.get_den()))});

  auto hull = newton_hull(f);
  std::vector<std::pair<LatticePoint, long>> facets;  // <n, x> >= c on Newt(f)
  bool clip = hull.dimension == 2;
  if (clip) {
    Polygon Q(hull.vertices);
    if (!contains_origin_strictly(Q)) {
      // origin on the boundary or outside: fall back to no pruning unless
      // the origin is outside, where all constant terms vanish
      for (const auto& e : edges(Q))
        if (dot(e.inner_normal, e.tail) > 0) return s;
      clip = false;
    }
    for (const auto& e : edges(Q)) facets.push_back({e.inner_normal, dot(e.inner_normal, e.tail)});
  }
  long bx0 = 0, bx1 = 0, by0 = 0, by1 = 0;
  for (const auto& [u, c] : g)
    bx0 = std::min(bx0, u.x), bx1 = std::max(bx1, u.x), by0 = std::min(by0, u.y), by1 = std::max(by1, u.y);

  // dense grid indexed over the box k*[bx0,bx1] x k*[by0,by1]
  long K = static_cast<long>(M);
  long W = (bx1 - bx0) * K + 1, H = (by1 - by0) * K + 1;
  long ox = -bx0 * K, oy = -by0 * K;
  std::vector<Integer> cur(static_cast<std::size_t>(W * H)), nxt(cur.size());
  std::vector<long> live{ox + oy * W};
  cur[live[0]] = 1;
  std::vector<char> mark(cur.size(), 0);
  Integer denpow = 1;
  for (long k = 1; k <= K; ++k) {
    long remaining = K - k;
    std::vector<long> next_live;
    for (long idx : live) {
      if (cur[idx] == 0) continue;
      long x = idx % W - ox, y = idx / W - oy;
      for (const auto& [u, c] : g) {
        long nx = x + u.x, ny = y + u.y;
        if (clip) {
          bool ok = true;
          for (const auto& [n, h] : facets)
            if (-(n.x * nx + n.y * ny) < remaining * h) {
              ok = false;
              break;
            }
          if (!ok) continue;
        }
        long j = (nx + ox) + (ny + oy) * W;
        if (!mark[j]) mark[j] = 1, next_live.push_back(j);
        mpz_addmul(nxt[j].get_mpz_t(), cur[idx].get_mpz_t(), c.get_mpz_t());
      }
      cur[idx] = 0;
    }
    for (long j : next_live) mark[j] = 0;
    std::swap(cur, nxt);
    live = std::move(next_live);
    denpow *= den;
    s.c[k] = Rational(cur[ox + oy * W], denpow);
    s.c[k].canonicalize();
  }
  return s;
}

// L = sum_k p_k(t) D^k with D = t d/dt.
struct DiffOperator {
  std::vector<UniPoly> p;  // p_0 .. p_h
  int order() const { return static_cast<int>(p.size()) - 1; }
  int degree() const {
    int d = 0;
    for (const auto& q : p) d = std::max(d, q.degree());
    return d;
  }
  // coefficient of t^j D^k
  Rational coeff(int k, int j) const { return k < static_cast<int>(p.size()) ? p[k].coeff(j) : Rational(0); }
  // P_j(D) with L = sum_j t^j P_j(D)
  UniPoly dual(int j) const {
    std::vector<Rational> v;
    for (int k = 0; k <= order(); ++k) v.push_back(coeff(k, j));
    return UniPoly(std::move(v));
  }
  friend bool operator==(const DiffOperator&, const DiffOperator&) = default;
};

inline std::string to_string(const DiffOperator& L) {
  std::string s;
  for (int k = L.order(); k >= 0; --k) {
    if (L.p[k].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + to_string(L.p[k], "t") + ")";
    if (k >= 1) s += "*D";
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s.empty() ? "0" : s;
}

inline std::string to_string_dual(const DiffOperator& L) {
  std::string s;
  for (int j = 0; j <= L.degree(); ++j) {
    UniPoly P = L.dual(j);
    if (P.is_zero()) continue;
    if (!s.empty()) s += " + ";
    if (j >= 1) s += "t" + (j >= 2 ? "^" + std::to_string(j) : std::string()) + "*";
    s += "(" + to_string(P, "D") + ")";
  }
  return s.empty() ? "0" : s;
}

// (L s)_m for m = 0..M
inline PowerSeries apply_operator(const DiffOperator& L, const PowerSeries& s) {
  PowerSeries out;
  int h = L.order(), d = L.degree();
  for (std::size_t m = 0; m < s.size(); ++m) {
    Rational acc = 0;
    for (int j = 0; j <= d && j <= static_cast<int>(m); ++j) {
      Rational mj = static_cast<long>(m) - j;
      Rational pw = 1;
      for (int k = 0; k <= h; ++k) {
        acc += L.coeff(k, j) * pw * s.c[m - j];
        pw *= mj;
      }
    }
    out.c.push_back(acc);
  }
  return out;
}

struct PicardFuchsBounds {
  int max_order = 4;
  int max_degree = 12;
  int guard = 8;
  std::size_t required_terms() const {
    return static_cast<std::size_t>((max_order + 1) * (max_degree + 1) + guard);
  }
};

namespace detail {

// Kernel basis of a rational matrix via reduced row echelon form.
inline std::vector<std::vector<Rational>> kernel(std::vector<std::vector<Rational>> A, std::size_t n) {
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < A.size(); ++c) {
    std::size_t piv = r;
    while (piv < A.size() && is_zero(A[piv][c])) ++piv;
    if (piv == A.size()) continue;
    std::swap(A[r], A[piv]);
    Rational inv = Rational(1) / A[r][c];
    for (auto& x : A[r]) x *= inv;
    for (std::size_t i = 0; i < A.size(); ++i) {
      if (i == r || is_zero(A[i][c])) continue;
      Rational f = A[i][c];
      for (std::size_t k = c; k < n; ++k) A[i][k] -= f * A[r][k];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<char> is_pivot(n, 0);
  for (int c : pivot_col) is_pivot[c] = 1;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t fcol = 0; fcol < n; ++fcol) {
    if (is_pivot[fcol]) continue;
    std::vector<Rational> v(n, Rational(0));
    v[fcol] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -A[i][fcol];
    basis.push_back(v);
  }
  return basis;
}

inline DiffOperator normalize(DiffOperator L) {
  Integer den = 1, g = 0;
  for (const auto& q : L.p)
    for (const auto& c : q.coeffs()) den = lcm(den, Integer(c.get_den()));
  for (const auto& q : L.p)
    for (const auto& c : q.coeffs()) g = gcd(g, Integer(c.get_num() * (den / c.get_den())));
  Rational scale(den, g);
  scale.canonicalize();
  const UniPoly& ph = L.p.back();
  for (int j = 0; j <= ph.degree(); ++j)
    if (!is_zero(ph.coeff(j))) {
      if (sgn(ph.coeff(j)) < 0) scale = -scale;
      break;
    }
  for (auto& q : L.p) q = scale * q;
  return L;
}

}  // namespace detail

// Dimension of the space of operators of order <= h and degree <= d
// annihilating the first n coefficients.
inline std::vector<std::vector<Rational>> annihilator_space(const PowerSeries& s, int h, int d, std::size_t n) {
  std::size_t unknowns = static_cast<std::size_t>((h + 1) * (d + 1));
  std::vector<std::vector<Rational>> rows;
  for (std::size_t m = 0; m < n && m < s.size(); ++m) {
    std::vector<Rational> row(unknowns, Rational(0));
    bool nonzero = false;
    for (int j = 0; j <= d && j <= static_cast<int>(m); ++j) {
      const Rational& cm = s.c[m - j];
      if (is_zero(cm)) continue;
      Rational mj = static_cast<long>(m) - j, pw = 1;
      for (int k = 0; k <= h; ++k) {
        row[static_cast<std::size_t>(k * (d + 1) + j)] = pw * cm;
        pw *= mj;
        nonzero = true;
      }
    }
    if (nonzero) rows.push_back(std::move(row));
  }
  return detail::kernel(std::move(rows), unknowns);
}

inline DiffOperator find_picard_fuchs(const PowerSeries& s, const PicardFuchsBounds& b = {}) {
  if (s.size() < b.required_terms())
    throw std::invalid_argument("series too short for the requested bounds");
  std::size_t fit = s.size() - static_cast<std::size_t>(b.guard);
  for (int h = 1; h <= b.max_order; ++h)
    for (int d = 0; d <= b.max_degree; ++d) {
      for (const auto& v : annihilator_space(s, h, d, fit)) {
        DiffOperator L;
        for (int k = 0; k <= h; ++k) {
          std::vector<Rational> c(v.begin() + k * (d + 1), v.begin() + (k + 1) * (d + 1));
          L.p.emplace_back(std::move(c));
        }
        if (L.p.back().is_zero()) continue;
        auto r = apply_operator(L, s);
        bool ok = true;
        for (const auto& x : r.c)
          if (!is_zero(x)) ok = false;
        if (ok) return detail::normalize(L);
      }
    }
  throw std::runtime_error("no operator found (raise bounds)");
}

struct SingularLocus {
  RootDecomposition leading;  // of p_h(t)
  bool zero_listed = true;      // t = 0 and t = infinity are always listed,
  bool infinity_listed = true;  // never classified
};

inline SingularLocus operator_singular_locus(const DiffOperator& L) {
  if (L.p.empty() || L.p.back().is_zero()) throw std::invalid_argument("zero operator");
  return {squarefree_rational_roots(L.p.back()), true, true};
}

}  // namespace reflexo

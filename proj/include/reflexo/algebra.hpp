#pragma once

#include "poly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace reflexo {

// ---- univariate over Q ----

inline UniPoly monic(const UniPoly& p) {
  if (p.is_zero()) return p;
  Rational inv = Rational(1) / p.lc();
  return inv * p;
}

inline UniPoly gcd_poly(UniPoly a, UniPoly b) {
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
  while (!b.is_zero()) {
    UniPoly r = divmod(a, b).second;
    a = std::move(b);
    b = monic(r);
  }
  return monic(a);
}

inline UniPoly operator/(const UniPoly& a, const UniPoly& b) { return exact_div(a, b); }
inline UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

// Extended Euclid: returns (g, s) with s*a = g mod b, g monic.
inline std::pair<UniPoly, UniPoly> gcdex_half(UniPoly a, UniPoly b) {
  UniPoly s0(Rational(1)), s1;
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    UniPoly s2 = s0 - q * s1;
    a = std::move(b);
    b = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  Rational inv = Rational(1) / a.lc();
  return {inv * a, inv * s0};
}

// Integer polynomial with the same roots: cleared denominators, content 1,
// positive leading coefficient.
inline std::vector<Integer> primitive_integer_model(const UniPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("zero polynomial");
  Integer den = 1;
  for (const auto& c : p.coeffs()) den = lcm(den, Integer(c.get_den()));
  std::vector<Integer> z;
  Integer g = 0;
  for (const auto& c : p.coeffs()) {
    Integer v = Integer(c.get_num()) * (den / Integer(c.get_den()));
    g = gcd(g, v);
    z.push_back(v);
  }
  if (z.back() < 0) g = -g;
  for (auto& v : z) v /= g;
  return z;
}

inline UniPoly from_integers(const std::vector<Integer>& z) {
  std::vector<Rational> v;
  for (const auto& c : z) v.emplace_back(c);
  return UniPoly(std::move(v));
}

// Yun's algorithm: monic squarefree factors with multiplicities.
inline std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("squarefree decomposition of zero");
  std::vector<std::pair<UniPoly, int>> out;
  if (p.is_constant()) return out;
  UniPoly f = monic(p), df = f.derivative();
  UniPoly a0 = gcd_poly(f, df);
  UniPoly b = f / a0, c = df / a0, d = c - b.derivative();
  int i = 1;
  while (!b.is_constant()) {
    UniPoly a = gcd_poly(b, d);
    if (!a.is_constant()) out.emplace_back(a, i);
    b = b / a;
    c = d / a;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

inline UniPoly squarefree_part(const UniPoly& p) {
  UniPoly r(Rational(1));
  for (const auto& [f, m] : squarefree_decomposition(p)) r *= f;
  return r;
}

// Rational roots of p (each listed once), ascending.
inline std::vector<Rational> rational_roots(const UniPoly& p) {
  std::vector<Rational> roots;
  if (p.is_zero()) throw std::invalid_argument("roots of zero polynomial");
  UniPoly q = squarefree_part(p);
  if (q.is_constant()) return roots;
  if (is_zero(q.constant_term())) {
    roots.emplace_back(0);
    q = q / UniPoly::var();
  }
  while (!q.is_constant()) {
    auto z = primitive_integer_model(q);
    auto num = divisors(z.front()), den = divisors(z.back());
    std::vector<Rational> cand;
    for (const auto& a : num)
      for (const auto& b : den) cand.push_back(make_rational(a, b));
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    bool found = false;
    for (const auto& c : cand) {
      for (int s : {1, -1}) {
        Rational r = s * c;
        if (is_zero(q(r))) {
          roots.push_back(r);
          q = q / UniPoly(std::vector<Rational>{-r, 1});
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found) break;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

struct RootDecomposition {
  std::vector<std::pair<Rational, int>> roots;     // ascending
  std::vector<std::pair<UniPoly, int>> residual;   // monic, rational-root-free
};

inline RootDecomposition squarefree_rational_roots(const UniPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("squarefree_rational_roots of zero");
  RootDecomposition out;
  for (const auto& [f, m] : squarefree_decomposition(p)) {
    UniPoly rest = f;
    for (const auto& r : rational_roots(f)) {
      out.roots.emplace_back(r, m);
      rest = rest / UniPoly(std::vector<Rational>{-r, 1});
    }
    if (!rest.is_constant()) out.residual.emplace_back(monic(rest), m);
  }
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

// ---- bivariate: polynomials in x with coefficients in Q[y] ----

inline UniPoly content(const BiPoly& p) {
  UniPoly g;
  for (const auto& c : p.coeffs()) g = g.is_zero() ? monic(c) : gcd_poly(g, c);
  return g;
}

inline BiPoly primitive_part(const BiPoly& p) {
  if (p.is_zero()) return p;
  UniPoly c = content(p);
  return map_coeffs(p, [&](const UniPoly& u) { return u / c; });
}

// Normalize so the leading coefficient's leading coefficient is 1.
inline BiPoly normalize(const BiPoly& p) {
  if (p.is_zero()) return p;
  Rational inv = Rational(1) / p.lc().lc();
  return map_coeffs(p, [&](const UniPoly& u) { return inv * u; });
}

inline BiPoly gcd_poly(const BiPoly& a, const BiPoly& b) {
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  UniPoly c = gcd_poly(content(a), content(b));
  BiPoly u = primitive_part(a), v = primitive_part(b);
  if (u.degree() < v.degree()) std::swap(u, v);
  while (!v.is_zero() && v.degree() > 0) {
    BiPoly r = pseudo_remainder(u, v);
    u = std::move(v);
    v = r.is_zero() ? r : primitive_part(r);
  }
  BiPoly g = v.is_zero() ? u : BiPoly(UniPoly(Rational(1)));
  return normalize(BiPoly(c) * primitive_part(g));
}

// Swap the roles of x (outer) and y (inner).
inline BiPoly swap_vars(const BiPoly& p) {
  int dy = 0;
  for (const auto& c : p.coeffs()) dy = std::max(dy, c.degree());
  std::vector<UniPoly> out;
  for (int j = 0; j <= dy; ++j) {
    std::vector<Rational> v;
    for (int i = 0; i <= p.degree(); ++i) v.push_back(p.coeff(i).coeff(j));
    out.emplace_back(std::move(v));
  }
  return BiPoly(std::move(out));
}

inline BiPoly diff_y(const BiPoly& p) {
  return map_coeffs(p, [](const UniPoly& u) { return u.derivative(); });
}

// ---- arithmetic in K = Q[y]/(s) ----

inline UniPoly reduce_mod(const UniPoly& a, const UniPoly& s) { return a % s; }

inline BiPoly reduce_mod(const BiPoly& a, const UniPoly& s) {
  return map_coeffs(a, [&](const UniPoly& c) { return c % s; });
}

// A branch of a triangular decomposition: points (x, y) with s(y) = 0 and
// g(x, y) = 0, g monic in x over Q[y]/(s).
struct TriangularBranch {
  UniPoly modulus;
  BiPoly fiber;
};

namespace detail {

// Splits s along the zero set of c: returns (s1, s2) with c = 0 mod s1 and c
// invertible mod s2; either may be 1.
inline std::pair<UniPoly, UniPoly> split_on(const UniPoly& c, const UniPoly& s) {
  UniPoly cr = c % s;
  if (cr.is_zero()) return {s, UniPoly(Rational(1))};
  UniPoly g = gcd_poly(cr, s);
  return {g, s / g};
}

inline BiPoly make_monic(const BiPoly& a, const UniPoly& s) {
  UniPoly inv = gcdex_half(a.lc(), s).second;
  return reduce_mod(map_coeffs(a, [&](const UniPoly& c) { return c * inv; }), s);
}

// Remainder of a by b over K, lc(b) invertible mod s.
inline BiPoly rem_mod(BiPoly a, const BiPoly& b, const UniPoly& s) {
  UniPoly inv = gcdex_half(b.lc(), s).second;
  while (!a.is_zero() && a.degree() >= b.degree()) {
    UniPoly c = (a.lc() * inv) % s;
    a = reduce_mod(a - BiPoly::monomial(c, a.degree() - b.degree()) * b, s);
  }
  return a;
}

// Makes lc(a) invertible by splitting; calls k(s_i, a_i) on each piece.
inline void with_invertible_lc(const UniPoly& s, BiPoly a,
                               const std::function<void(const UniPoly&, const BiPoly&)>& k) {
  a = reduce_mod(a, s);
  if (a.is_zero()) {
    k(s, a);
    return;
  }
  auto [s0, s1] = split_on(a.lc(), s);
  if (s1.degree() > 0) k(s1, a);
  if (s0.degree() > 0) {
    std::vector<UniPoly> rest(a.coeffs().begin(), a.coeffs().end() - 1);
    with_invertible_lc(s0, BiPoly(std::move(rest)), k);
  }
}

inline void gcd_branches(const UniPoly& s, const BiPoly& a, const BiPoly& b,
                         std::vector<TriangularBranch>& out) {
  with_invertible_lc(s, b, [&](const UniPoly& sb, const BiPoly& bb) {
    if (bb.is_zero()) {
      with_invertible_lc(sb, a, [&](const UniPoly& sa, const BiPoly& aa) {
        if (aa.is_zero())
          throw std::domain_error("gcd of zero polynomials over residue ring");
        out.push_back({sa, make_monic(aa, sa)});
      });
      return;
    }
    BiPoly r = rem_mod(reduce_mod(a, sb), bb, sb);
    gcd_branches(sb, bb, r, out);
  });
}

}  // namespace detail

// Monic gcd in x of a and b over Q[y]/(s), splitting s where a leading
// coefficient is a zero divisor. Branch moduli partition s.
inline std::vector<TriangularBranch> gcd_over_residue(const UniPoly& s, const BiPoly& a,
                                                      const BiPoly& b) {
  std::vector<TriangularBranch> out;
  detail::gcd_branches(monic(s), a, b, out);
  return out;
}

// Refine branches by removing the factor x from each fiber (torus points only).
inline std::vector<TriangularBranch> strip_x_factor(const std::vector<TriangularBranch>& in) {
  std::vector<TriangularBranch> out;
  std::vector<TriangularBranch> work = in;
  while (!work.empty()) {
    TriangularBranch br = work.back();
    work.pop_back();
    if (br.fiber.degree() <= 0) {
      out.push_back(br);
      continue;
    }
    auto [s0, s1] = detail::split_on(br.fiber.coeff(0), br.modulus);
    if (s1.degree() > 0) out.push_back({s1, reduce_mod(br.fiber, s1)});
    if (s0.degree() > 0) {
      std::vector<UniPoly> v(br.fiber.coeffs().begin() + 1, br.fiber.coeffs().end());
      work.push_back({s0, reduce_mod(BiPoly(std::move(v)), s0)});
    }
  }
  return out;
}

// Squarefree part of each fiber in x over its residue ring.
inline std::vector<TriangularBranch> squarefree_fibers(const std::vector<TriangularBranch>& in) {
  std::vector<TriangularBranch> out;
  for (const auto& br : in) {
    if (br.fiber.degree() <= 0) {
      out.push_back(br);
      continue;
    }
    for (const auto& g : gcd_over_residue(br.modulus, br.fiber, br.fiber.derivative())) {
      BiPoly f = reduce_mod(br.fiber, g.modulus);
      // g is monic, so the quotient is computed by plain long division over K
      BiPoly q;
      BiPoly r = f;
      while (!r.is_zero() && r.degree() >= g.fiber.degree()) {
        UniPoly c = r.lc() % g.modulus;
        BiPoly t = BiPoly::monomial(c, r.degree() - g.fiber.degree());
        q += t;
        r = reduce_mod(r - t * g.fiber, g.modulus);
      }
      if (!r.is_zero()) throw std::logic_error("squarefree_fibers: inexact division");
      out.push_back({g.modulus, reduce_mod(q, g.modulus)});
    }
  }
  return out;
}

// Number of geometric points of a branch.
inline int point_count(const TriangularBranch& br) {
  return br.modulus.degree() * std::max(0, br.fiber.degree());
}

// Evaluate the outer variable's polynomial ring element at y = c.
inline UniPoly eval_inner(const BiPoly& p, const Rational& c) {
  return map_coeffs(p, [&](const UniPoly& u) { return u(c); });
}

}  // namespace reflexo

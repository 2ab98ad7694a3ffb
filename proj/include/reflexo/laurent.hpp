#pragma once

#include "algebra.hpp"
#include "polygon.hpp"

#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace reflexo {

class LaurentPoly {
 public:
  using Terms = std::map<LatticePoint, Rational>;

  LaurentPoly() = default;
  explicit LaurentPoly(const Rational& c) {
    if (!reflexo::is_zero(c)) t_[{0, 0}] = c;
  }
  static LaurentPoly monomial(LatticePoint u, const Rational& c = Rational(1)) {
    LaurentPoly f;
    if (!reflexo::is_zero(c)) f.t_[u] = c;
    return f;
  }

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  Rational coeff(LatticePoint u) const {
    auto it = t_.find(u);
    return it == t_.end() ? Rational(0) : it->second;
  }
  Rational constant_term() const { return coeff({0, 0}); }
  std::vector<LatticePoint> support() const {
    std::vector<LatticePoint> s;
    for (const auto& [u, c] : t_) s.push_back(u);
    return s;
  }

  void add(LatticePoint u, const Rational& c) {
    Rational& slot = t_[u];
    slot += c;
    if (reflexo::is_zero(slot)) t_.erase(u);
  }
  void set(LatticePoint u, const Rational& c) {
    if (reflexo::is_zero(c))
      t_.erase(u);
    else
      t_[u] = c;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [u, c] : o.t_) add(u, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [u, c] : o.t_) add(u, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [u, c] : a.t_)
      for (const auto& [w, d] : b.t_) r.add(u + w, c * d);
    return r;
  }
  friend LaurentPoly operator*(const Rational& s, const LaurentPoly& a) {
    LaurentPoly r;
    for (const auto& [u, c] : a.t_) r.set(u, s * c);
    return r;
  }
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  Terms t_;
};

inline LaurentPoly pow(const LaurentPoly& f, unsigned e) {
  LaurentPoly r(Rational(1)), b = f;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

// Terms "c*x^a*y^b" joined by " + ", ordered by exponent.
inline std::string to_string(const LaurentPoly& f) {
  if (f.is_zero()) return "0";
  std::string s;
  for (const auto& [u, c] : f.terms()) {
    if (!s.empty()) s += " + ";
    s += to_string(c) + "*x^" + std::to_string(u.x) + "*y^" + std::to_string(u.y);
  }
  return s;
}

// f_P: binomial coefficients along each edge, zero at the origin.
inline LaurentPoly build_fP(const Polygon& P) {
  LaurentPoly f;
  for (const auto& e : edges(P)) {
    LatticePoint d = e.direction();
    for (long k = 0; k <= e.lattice_length; ++k)
      f.set(e.tail + k * d, Rational(binomial(static_cast<unsigned long>(e.lattice_length),
                                              static_cast<unsigned long>(k))));
  }
  return f;
}

struct NewtonHull {
  std::vector<LatticePoint> vertices;  // CCW for a polygon, endpoints for a segment
  int dimension = 0;
};

inline NewtonHull newton_hull(const LaurentPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("empty support");
  auto h = hull_points(f.support());
  if (h.size() >= 3) return {h, 2};
  return {h, static_cast<int>(h.size()) - 1};
}

inline Polygon newton_polygon(const LaurentPoly& f) {
  auto h = newton_hull(f);
  if (h.dimension < 2) throw std::invalid_argument("Newton polygon is not full-dimensional");
  return Polygon(h.vertices);
}

// Two dual vectors r1, r2 with det = +-1; chi^u maps to x^<r1,u> y^<r2,u>.
struct ChartBasis {
  LatticePoint r1, r2;
  long det() const { return cross(r1, r2); }
};

// f (+ lambda) in chart coordinates times the least monomial x^a y^b making
// it a polynomial. Coefficient ring Q[lambda]; x outer, y middle.
struct ChartPolynomial {
  TriPoly poly;
  LatticePoint shift;  // (a, b)
  ChartBasis basis;
};

inline ChartPolynomial chart_polynomial(const LaurentPoly& f, const ChartBasis& basis,
                                        bool include_lambda) {
  if (std::labs(basis.det()) != 1) throw std::invalid_argument("chart basis is not unimodular");
  std::vector<std::pair<LatticePoint, UniPoly>> mono;
  for (const auto& [u, c] : f.terms()) mono.push_back({{dot(basis.r1, u), dot(basis.r2, u)}, UniPoly(c)});
  if (include_lambda) {
    bool merged = false;
    for (auto& [e, c] : mono)
      if (e == LatticePoint{0, 0}) c += UniPoly::var(), merged = true;
    if (!merged) mono.push_back({{0, 0}, UniPoly::var()});
  }
  long a = std::numeric_limits<long>::max(), b = a;
  for (const auto& [e, c] : mono) a = std::min(a, e.x), b = std::min(b, e.y);
  TriPoly F;
  for (const auto& [e, c] : mono) {
    BiPoly yc = BiPoly::monomial(c, static_cast<int>(e.y - b));
    F += TriPoly::monomial(yc, static_cast<int>(e.x - a));
  }
  return {F, {-a, -b}, basis};
}

// Inverse substitution of a chart polynomial without lambda.
inline LaurentPoly from_chart(const BiPoly& F, const ChartBasis& basis, LatticePoint shift) {
  // solve <r1,u> = i - a, <r2,u> = j - b
  long det = basis.det();
  LaurentPoly f;
  for (int i = 0; i <= F.degree(); ++i)
    for (int j = 0; j <= F.coeff(i).degree(); ++j) {
      Rational c = F.coeff(i).coeff(j);
      if (is_zero(c)) continue;
      long p = i - shift.x, q = j - shift.y;
      LatticePoint u{(p * basis.r2.y - q * basis.r1.y) / det, (q * basis.r1.x - p * basis.r2.x) / det};
      f.add(u, c);
    }
  return f;
}

// lambda-free part of a chart polynomial
inline BiPoly lambda_value(const TriPoly& F, const Rational& lambda) {
  return map_coeffs(F, [&](const BiPoly& yc) {
    return map_coeffs(yc, [&](const UniPoly& lc) { return lc(lambda); });
  });
}

namespace detail {

// Coordinate k of u along w on the line through base: u = base + k*w.
inline long along(LatticePoint u, LatticePoint base, LatticePoint w) {
  LatticePoint d = u - base;
  return w.x != 0 ? d.x / w.x : d.y / w.y;
}

}  // namespace detail

// x^u -> x^u (1 + x^w)^<u,v>, so the slice at height -1 shrinks by
// conv(0, w) and the slice at height +1 grows by it.
inline LaurentPoly algebraic_mutation(const LaurentPoly& f, LatticePoint v, LatticePoint w) {
  if (dot(v, w) != 0) throw std::invalid_argument("w is not orthogonal to v");
  if (!is_primitive(v) || !is_primitive(w)) throw std::invalid_argument("v and w must be primitive");
  std::map<long, std::vector<std::pair<LatticePoint, Rational>>> slices;
  for (const auto& [u, c] : f.terms()) slices[dot(u, v)].push_back({u, c});
  LaurentPoly h = LaurentPoly(Rational(1)) + LaurentPoly::monomial(w);
  LaurentPoly out;
  for (const auto& [d, terms] : slices) {
    LaurentPoly slice;
    for (const auto& [u, c] : terms) slice.set(u, c);
    if (d >= 0) {
      out += slice * pow(h, static_cast<unsigned>(d));
      continue;
    }
    LatticePoint base = terms.front().first;
    long lo = 0;
    for (const auto& [u, c] : terms) lo = std::min(lo, detail::along(u, base, w));
    UniPoly g;
    for (const auto& [u, c] : terms) g.add_term(c, static_cast<int>(detail::along(u, base, w) - lo));
    UniPoly div = pow(UniPoly(std::vector<Rational>{1, 1}), static_cast<unsigned>(-d));
    auto [q, r] = divmod(g, div);
    if (!r.is_zero()) throw std::domain_error("mutation not admissible for this factor");
    for (int k = 0; k <= q.degree(); ++k)
      if (!is_zero(q.coeff(k))) out.add(base + (lo + k) * w, q.coeff(k));
  }
  return out;
}

}  // namespace reflexo

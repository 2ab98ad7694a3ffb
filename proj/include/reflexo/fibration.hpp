#pragma once

#include "algebra.hpp"
#include "laurent.hpp"
#include "polygon.hpp"

#include <algorithm>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace reflexo {

enum class KodairaKind { I, Istar, II, III, IV, IVstar, IIIstar, IIstar };

struct KodairaType {
  KodairaKind kind = KodairaKind::I;
  int n = 0;  // index of I_n and I_n*

  static KodairaType In(int n) { return {KodairaKind::I, n}; }
  static KodairaType Instar(int n) { return {KodairaKind::Istar, n}; }

  int chi() const {
    switch (kind) {
      case KodairaKind::I: return n;
      case KodairaKind::Istar: return n + 6;
      case KodairaKind::II: return 2;
      case KodairaKind::III: return 3;
      case KodairaKind::IV: return 4;
      case KodairaKind::IVstar: return 8;
      case KodairaKind::IIIstar: return 9;
      case KodairaKind::IIstar: return 10;
    }
    return 0;
  }
  int r() const {
    switch (kind) {
      case KodairaKind::I: return n == 0 ? 0 : n - 1;
      case KodairaKind::Istar: return n + 4;
      case KodairaKind::II: return 0;
      case KodairaKind::III: return 1;
      case KodairaKind::IV: return 2;
      case KodairaKind::IVstar: return 6;
      case KodairaKind::IIIstar: return 7;
      case KodairaKind::IIstar: return 8;
    }
    return 0;
  }
  std::string name() const {
    switch (kind) {
      case KodairaKind::I: return "I" + std::to_string(n);
      case KodairaKind::Istar: return "I" + std::to_string(n) + "*";
      case KodairaKind::II: return "II";
      case KodairaKind::III: return "III";
      case KodairaKind::IV: return "IV";
      case KodairaKind::IVstar: return "IV*";
      case KodairaKind::IIIstar: return "III*";
      case KodairaKind::IIstar: return "II*";
    }
    return "?";
  }
  static KodairaType parse(const std::string& s) {
    if (s == "II") return {KodairaKind::II, 0};
    if (s == "III") return {KodairaKind::III, 0};
    if (s == "IV") return {KodairaKind::IV, 0};
    if (s == "IV*") return {KodairaKind::IVstar, 0};
    if (s == "III*") return {KodairaKind::IIIstar, 0};
    if (s == "II*") return {KodairaKind::IIstar, 0};
    if (s.size() >= 2 && s[0] == 'I') {
      bool star = s.back() == '*';
      int n = std::stoi(s.substr(1, s.size() - 1 - (star ? 1 : 0)));
      return {star ? KodairaKind::Istar : KodairaKind::I, n};
    }
    throw std::invalid_argument("unknown Kodaira type " + s);
  }
  friend bool operator==(const KodairaType&, const KodairaType&) = default;
};

// Where a fibre sits: lambda = infinity, a rational lambda, or the roots of a
// rational-root-free factor q(lambda).
struct Location {
  enum class Kind { Infinity, Value, Factor } kind = Kind::Infinity;
  Rational value;
  UniPoly factor;

  static Location infinity() { return {}; }
  static Location at(const Rational& v) { return {Kind::Value, v, {}}; }
  static Location roots_of(const UniPoly& q) { return {Kind::Factor, 0, q}; }
  int degree() const { return kind == Kind::Factor ? factor.degree() : 1; }
  std::string to_string() const {
    switch (kind) {
      case Kind::Infinity: return "infinity";
      case Kind::Value: return reflexo::to_string(value);
      case Kind::Factor: return reflexo::to_string(factor, "l");
    }
    return "?";
  }
};

struct SingularValue {
  Location location;
  int torus_nodes = 0;     // per root
  bool nonreduced = false;
  int absorbed_curves = 0;  // (-2)-curves from base-point towers
  bool morse = true;       // every torus singular point is an ordinary node
};

struct BasePointTower {
  Edge edge;
  long chain_length = 0;
  // lambda of the member containing E_1 .. E_{l-1}; nullopt marks a curve
  // lying over infinity
  std::vector<std::optional<Rational>> assignments;
  bool node_at_base_point = true;  // member through E_1 has a node at p_e
};

struct MemberStructure {
  bool nonreduced = false;
  int max_multiplicity = 1;
  std::vector<std::pair<BiPoly, int>> factors;  // chart coordinates
};

struct FibreEntry {
  Location where;
  KodairaType type;
  int count = 1;
};

struct FibreConfiguration {
  std::vector<FibreEntry> entries;
  int chi_sum() const {
    int s = 0;
    for (const auto& e : entries) s += e.count * e.type.chi();
    return s;
  }
  int r_sum() const {
    int s = 0;
    for (const auto& e : entries) s += e.count * e.type.r();
    return s;
  }
  // fibre types with multiplicity, infinity first
  std::vector<KodairaType> types() const {
    std::vector<KodairaType> t;
    for (const auto& e : entries)
      for (int i = 0; i < e.count; ++i) t.push_back(e.type);
    return t;
  }
};

class classification_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

KodairaType fibre_at_infinity(const Polygon& P);

// ---- bivariate helpers ----

namespace detail {

inline BiPoly theta_x(const BiPoly& p) {
  std::vector<UniPoly> v;
  for (int i = 0; i <= p.degree(); ++i) v.push_back(Rational(i) * p.coeff(i));
  return BiPoly(std::move(v));
}

inline BiPoly theta_y(const BiPoly& p) {
  return map_coeffs(p, [](const UniPoly& u) { return u.derivative().shift(1); });
}

inline BiPoly strip_monomials(BiPoly p) {
  if (p.is_zero()) return p;
  int k = 0;
  while (p.coeff(k).is_zero()) ++k;
  std::vector<UniPoly> v(p.coeffs().begin() + k, p.coeffs().end());
  p = BiPoly(std::move(v));
  int j = std::numeric_limits<int>::max();
  for (const auto& c : p.coeffs()) {
    if (c.is_zero()) continue;
    int t = 0;
    while (is_zero(c.coeff(t))) ++t;
    j = std::min(j, t);
  }
  return map_coeffs(p, [&](const UniPoly& c) {
    std::vector<Rational> w(c.coeffs().begin() + std::min<std::size_t>(j, c.size()), c.coeffs().end());
    return UniPoly(std::move(w));
  });
}

// constant in lambda
inline TriPoly lift(const BiPoly& p) {
  return map_coeffs(p, [](const UniPoly& u) { return map_coeffs(u, [](const Rational& q) { return UniPoly(q); }); });
}

inline BiPoly lift(const UniPoly& p) {
  return map_coeffs(p, [](const Rational& q) { return UniPoly(q); });
}

// F(x, y) -> F(y, x) keeping the innermost variable
inline TriPoly swap_outer(const TriPoly& F) {
  int dy = 0;
  for (const auto& c : F.coeffs()) dy = std::max(dy, c.degree());
  std::vector<BiPoly> out;
  for (int j = 0; j <= dy; ++j) {
    std::vector<UniPoly> v;
    for (int i = 0; i <= F.degree(); ++i) v.push_back(F.coeff(i).coeff(j));
    out.emplace_back(std::move(v));
  }
  return TriPoly(std::move(out));
}

// gcd of the coefficients of a polynomial over Q[lambda]
inline UniPoly coefficient_gcd(const BiPoly& p) {
  UniPoly g;
  for (const auto& c : p.coeffs())
    if (!c.is_zero()) g = g.is_zero() ? monic(c) : gcd_poly(g, c);
  return g;
}

inline BiPoly diff_x(const BiPoly& p) { return p.derivative(); }

// Squarefree decomposition of a bivariate polynomial over Q.
inline std::vector<std::pair<BiPoly, int>> squarefree_bivariate(const BiPoly& F) {
  std::vector<std::pair<BiPoly, int>> out;
  UniPoly c = content(F);
  for (const auto& [f, m] : squarefree_decomposition(c)) out.push_back({BiPoly(f), m});
  BiPoly pp = primitive_part(F);
  if (pp.degree() <= 0) return out;
  BiPoly a0 = gcd_poly(pp, diff_x(pp));
  BiPoly b = exact_div(pp, a0), cc = exact_div(diff_x(pp), a0), d = cc - diff_x(b);
  int i = 1;
  while (b.degree() > 0) {
    BiPoly a = gcd_poly(b, d);
    if (a.degree() > 0) out.push_back({a, i});
    b = exact_div(b, a);
    cc = exact_div(d, a);
    d = cc - diff_x(b);
    ++i;
  }
  return out;
}

inline long ext_inverse_row(LatticePoint r, LatticePoint& out) {
  auto [g, s, t] = reflexo::detail::ext_gcd(r.x, r.y);
  out = {-t, s};
  return g;
}

}  // namespace detail

// ---- pencil data ----

// Chart used for the torus computations: the first smooth cone of the
// resolved normal fan in CCW order.
inline ChartBasis fibration_chart(const Polygon& P) {
  auto b = boundary_points(polar_dual(P));
  return {b[0], b[1]};
}

struct CriticalPoints {
  ChartPolynomial chart;                  // F~ = N + lambda x^a y^b
  BiPoly N;                               // lambda-free part
  BiPoly curve;                           // gcd of the log partials (1 if none)
  std::vector<TriangularBranch> points;   // isolated torus critical points
  UniPoly values;      // prod (lambda + f(p)) over isolated points, monic
  UniPoly degenerate;  // same, over points with singular Hessian
  UniPoly curve_values;  // lambda with F_lambda containing a critical curve
};

namespace detail {

// prod over branch points of F~(p) as a polynomial in lambda
inline UniPoly branch_values(const TriangularBranch& br, const TriPoly& F) {
  BiPoly r = resultant(lift(br.fiber), F);
  return resultant(lift(br.modulus), r);
}

// prod over branch points of H(p), H free of lambda
inline Rational branch_scalar(const TriangularBranch& br, const BiPoly& H) {
  UniPoly r = resultant(br.fiber, H);
  return resultant(br.modulus, r);
}

}  // namespace detail

inline CriticalPoints critical_points(const Polygon& P) {
  CriticalPoints cp;
  LaurentPoly f = build_fP(P);
  cp.chart = chart_polynomial(f, fibration_chart(P), true);
  const TriPoly& F = cp.chart.poly;
  cp.N = lambda_value(F, 0);
  const long a = cp.chart.shift.x, b = cp.chart.shift.y;
  BiPoly A = detail::strip_monomials(detail::theta_x(cp.N) - Rational(a) * cp.N);
  BiPoly B = detail::strip_monomials(detail::theta_y(cp.N) - Rational(b) * cp.N);
  BiPoly C = detail::strip_monomials(gcd_poly(A, B));
  cp.curve = C;

  cp.curve_values = UniPoly(Rational(1));
  if (!(C.degree() <= 0 && C.coeff(0).degree() <= 0)) {
    UniPoly cy = content(C);
    BiPoly cx = primitive_part(C);
    if (cx.degree() > 0) {
      BiPoly r = resultant(detail::lift(cx), F);
      cp.curve_values *= detail::coefficient_gcd(r);
    }
    if (cy.degree() > 0) {
      TriPoly cy3 = map_coeffs(cy, [](const Rational& q) { return BiPoly(UniPoly(q)); });
      BiPoly r = resultant(cy3, detail::swap_outer(F));
      cp.curve_values *= detail::coefficient_gcd(r);
    }
  }

  BiPoly A1 = exact_div(A, C), B1 = exact_div(B, C);
  UniPoly r;
  if (A1.degree() <= 0)
    r = A1.coeff(0);
  else if (B1.degree() <= 0)
    r = B1.coeff(0);
  else
    r = resultant(A1, B1);
  if (r.is_zero()) throw std::logic_error("elimination identically zero");
  cp.values = UniPoly(Rational(1));
  cp.degenerate = UniPoly(Rational(1));
  UniPoly s = squarefree_part(r);
  while (!s.is_constant() && is_zero(s.coeff(0))) s = s / UniPoly::var();
  if (s.is_constant()) return cp;

  auto branches = squarefree_fibers(strip_x_factor(gcd_over_residue(s, A1, B1)));
  BiPoly Ax = detail::theta_x(A), Ay = detail::theta_y(A), Bx = detail::theta_x(B), By = detail::theta_y(B);
  BiPoly hess = Ax * By - Ay * Bx;
  for (const auto& br : branches) {
    if (br.fiber.degree() <= 0) continue;
    cp.points.push_back(br);
    UniPoly v = detail::branch_values(br, F);
    if (v.degree() != point_count(br)) throw std::logic_error("critical value polynomial has wrong degree");
    cp.values *= monic(v);
    if (!is_zero(detail::branch_scalar(br, hess))) continue;
    for (const auto& sub : gcd_over_residue(br.modulus, br.fiber, reduce_mod(hess, br.modulus)))
      if (sub.fiber.degree() > 0) cp.degenerate *= monic(detail::branch_values(sub, F));
  }
  return cp;
}

inline MemberStructure member_structure(const Polygon& P, const Rational& lambda) {
  auto chart = chart_polynomial(build_fP(P), fibration_chart(P), true);
  BiPoly F = lambda_value(chart.poly, lambda);
  MemberStructure ms;
  ms.factors = detail::squarefree_bivariate(F);
  for (const auto& [g, m] : ms.factors) ms.max_multiplicity = std::max(ms.max_multiplicity, m);
  ms.nonreduced = ms.max_multiplicity >= 2;
  return ms;
}

inline bool member_is_nonreduced(const Polygon& P, const Rational& lambda) {
  return member_structure(P, lambda).nonreduced;
}

// ---- base-point towers ----

namespace detail {

// Coefficient of x^i v^j as a polynomial in lambda.
inline UniPoly coeff_at(const TriPoly& G, int i, int j) { return G.coeff(i).coeff(j); }

// F~(x, v - 1)
inline TriPoly translate_y(const TriPoly& F) {
  BiPoly vm1 = BiPoly::var() - BiPoly(UniPoly(Rational(1)));
  return map_coeffs(F, [&](const BiPoly& p) {
    BiPoly acc;
    for (int j = p.degree(); j >= 0; --j) acc = acc * vm1 + BiPoly(p.coeff(j));
    return acc;
  });
}

}  // namespace detail

// Blow up l(e) times above p_e via x = s v^k and read off the pencil on each
// exceptional curve E_k = {v = 0}.
inline BasePointTower tower_for_edge(const LaurentPoly& f, const Edge& e) {
  BasePointTower t;
  t.edge = e;
  t.chain_length = e.lattice_length;
  LatticePoint r2;
  detail::ext_inverse_row(e.inner_normal, r2);
  auto chart = chart_polynomial(f, {e.inner_normal, r2}, true);
  TriPoly G = detail::translate_y(chart.poly);
  const long l = e.lattice_length;
  for (long k = 1; k <= l; ++k) {
    // restrict G(s v^k, v) / v^k to v = 0
    std::vector<Rational> alpha, beta;
    for (int i = 0; i <= G.degree(); ++i)
      for (int j = 0; j <= G.coeff(i).degree(); ++j) {
        UniPoly c = detail::coeff_at(G, i, j);
        if (c.is_zero()) continue;
        long ord = j + k * i - k;
        if (ord < 0) throw std::logic_error("base point multiplicity too small");
        if (ord == 0) {
          if (alpha.size() <= static_cast<std::size_t>(i)) alpha.resize(i + 1), beta.resize(i + 1);
          alpha[i] = c.coeff(0);
          beta[i] = c.coeff(1);
        }
      }
    UniPoly A(alpha), B(beta);  // pencil on E_k: A(s) + lambda B(s)
    bool constant = true;
    std::optional<Rational> lam;
    if (B.is_zero()) {
      constant = !A.is_zero();
    } else {
      // A = c B ?
      Rational c = A.coeff(B.degree()) / B.lc();
      constant = A == c * B;
      lam = -c;
    }
    if (k < l) {
      if (!constant) throw std::logic_error("non-constant pencil on an intermediate exceptional curve");
      t.assignments.push_back(lam);
    } else if (constant) {
      throw std::logic_error("last exceptional curve is not a section");
    }
  }
  if (l >= 2 && !t.assignments.empty() && t.assignments.front()) {
    const Rational lam = *t.assignments.front();
    auto at = [&](int i, int j) { return detail::coeff_at(G, i, j)(lam); };
    if (!is_zero(at(1, 0)) || !is_zero(at(0, 1))) throw std::logic_error("tower member not singular at p_e");
    Rational disc = at(1, 1) * at(1, 1) - 4 * at(2, 0) * at(0, 2);
    t.node_at_base_point = !is_zero(disc);
  }
  return t;
}

inline std::vector<BasePointTower> base_point_towers(const Polygon& P) {
  if (!is_reflexive(P)) throw std::invalid_argument("polygon is not reflexive");
  LaurentPoly f = build_fP(P);
  std::vector<BasePointTower> out;
  for (const auto& e : edges(P)) out.push_back(tower_for_edge(f, e));
  return out;
}

// ---- assembly ----

inline KodairaType fibre_at_infinity(const Polygon& P) {
  if (!is_reflexive(P)) throw std::invalid_argument("polygon is not reflexive");
  return KodairaType::In(static_cast<int>(12 - volume(P)));
}

struct PencilAnalysis {
  CriticalPoints critical;
  RootDecomposition value_roots;  // of critical.values
  std::vector<BasePointTower> towers;
  std::vector<SingularValue> singular;  // torus and nonreduced locations
  FibreConfiguration config;
};

inline std::vector<SingularValue> singular_values_from(const CriticalPoints& cp,
                                                       const RootDecomposition& rd,
                                                       const std::vector<BasePointTower>& towers) {
  std::vector<SingularValue> out;
  auto absorbed = [&](const Rational& v) {
    int n = 0;
    for (const auto& t : towers)
      for (const auto& a : t.assignments)
        if (a && *a == v) ++n;
    return n;
  };
  std::vector<Rational> nonreduced;
  if (!cp.curve_values.is_constant()) {
    auto nr = squarefree_rational_roots(cp.curve_values);
    if (!nr.residual.empty()) throw classification_error("additive type unresolved");
    for (const auto& [v, m] : nr.roots) nonreduced.push_back(v);
  }
  auto is_nonreduced = [&](const Rational& v) {
    return std::find(nonreduced.begin(), nonreduced.end(), v) != nonreduced.end();
  };
  for (const auto& [v, m] : rd.roots) {
    SingularValue sv;
    sv.location = Location::at(v);
    sv.torus_nodes = m;
    sv.nonreduced = is_nonreduced(v);
    sv.absorbed_curves = absorbed(v);
    sv.morse = cp.degenerate.is_constant() || !is_zero(cp.degenerate(v));
    out.push_back(sv);
  }
  for (const auto& [q, m] : rd.residual) {
    SingularValue sv;
    sv.location = Location::roots_of(q);
    sv.torus_nodes = m;
    sv.morse = gcd_poly(q, cp.degenerate).is_constant();
    out.push_back(sv);
  }
  for (const auto& v : nonreduced) {
    bool seen = false;
    for (const auto& sv : out)
      if (sv.location.kind == Location::Kind::Value && sv.location.value == v) seen = true;
    if (seen) continue;
    SingularValue sv;
    sv.location = Location::at(v);
    sv.nonreduced = true;
    sv.absorbed_curves = absorbed(v);
    out.push_back(sv);
  }
  return out;
}

inline PencilAnalysis analyze_pencil(const Polygon& P) {
  if (!is_reflexive(P)) throw std::invalid_argument("polygon is not reflexive");
  PencilAnalysis pa;
  pa.critical = critical_points(P);
  // the minus sign: F_lambda = f + lambda, so the roots are -f(p)
  pa.value_roots = squarefree_rational_roots(pa.critical.values);
  pa.towers = base_point_towers(P);
  pa.singular = singular_values_from(pa.critical, pa.value_roots, pa.towers);
  for (const auto& sv : pa.singular)
    if (sv.nonreduced && !member_is_nonreduced(P, sv.location.value))
      throw std::logic_error("critical curve without a nonreduced member");

  // finite locations: torus ones plus tower-only ones
  struct Finite {
    Location where;
    int nodes = 0;
    bool nonreduced = false, morse = true;
    int tower_length = 0;
    bool tower_nodes = true;
  };
  std::vector<Finite> fin;
  for (const auto& sv : pa.singular) fin.push_back({sv.location, sv.torus_nodes, sv.nonreduced, sv.morse, 0, true});
  for (const auto& t : pa.towers) {
    if (t.assignments.empty()) continue;
    const auto& lam = t.assignments.front();
    if (!lam) throw classification_error("additive type unresolved");
    auto it = std::find_if(fin.begin(), fin.end(), [&](const Finite& x) {
      return x.where.kind == Location::Kind::Value && x.where.value == *lam;
    });
    if (it == fin.end()) {
      fin.push_back({Location::at(*lam), 0, false, true, 0, true});
      it = fin.end() - 1;
    }
    it->tower_length += static_cast<int>(t.chain_length);
    it->tower_nodes = it->tower_nodes && t.node_at_base_point;
  }

  FibreConfiguration& cfg = pa.config;
  cfg.entries.push_back({Location::infinity(), fibre_at_infinity(P), 1});
  std::vector<FibreEntry> finite;
  const Finite* additive = nullptr;
  for (const auto& x : fin) {
    if (x.nonreduced) {
      if (additive) throw classification_error("additive type unresolved");
      additive = &x;
      continue;
    }
    if (!x.morse || !x.tower_nodes) throw classification_error("additive type unresolved");
    int k = x.nodes + x.tower_length;
    finite.push_back({x.where, KodairaType::In(k), x.where.degree()});
  }
  if (additive) {
    int budget = static_cast<int>(volume(P));
    for (const auto& e : finite) budget -= e.count * e.type.chi();
    int mult = member_structure(P, additive->where.value).max_multiplicity;
    KodairaType t;
    if (budget == 7 && mult == 2)
      t = KodairaType::Instar(1);
    else if (budget == 8 && mult == 3)
      t = {KodairaKind::IVstar, 0};
    else
      throw classification_error("additive type unresolved");
    finite.push_back({additive->where, t, 1});
  }
  std::stable_sort(finite.begin(), finite.end(), [](const FibreEntry& a, const FibreEntry& b) {
    if (a.type.chi() != b.type.chi()) return a.type.chi() > b.type.chi();
    bool av = a.where.kind == Location::Kind::Value, bv = b.where.kind == Location::Kind::Value;
    if (av != bv) return av;
    if (av) return a.where.value < b.where.value;
    return a.where.factor < b.where.factor;
  });
  for (auto& e : finite) cfg.entries.push_back(e);
  if (cfg.chi_sum() != 12) throw classification_error("classification inconsistent");
  if (cfg.r_sum() > 8) throw classification_error("classification inconsistent");
  return pa;
}

inline std::vector<SingularValue> singular_lambda_values(const Polygon& P) {
  auto cp = critical_points(P);
  auto rd = squarefree_rational_roots(cp.values);
  return singular_values_from(cp, rd, base_point_towers(P));
}

inline FibreConfiguration classify_fibres(const Polygon& P) { return analyze_pencil(P).config; }

// Raw elimination Res_y(Res_x(F~, x F~_x), Res_x(F~, y F~_y)) after removing
// the common factor of the two inner resultants.
inline UniPoly raw_elimination(const Polygon& P) {
  auto chart = chart_polynomial(build_fP(P), fibration_chart(P), true);
  const TriPoly& F = chart.poly;
  TriPoly Fx, Fy;
  for (int i = 0; i <= F.degree(); ++i) {
    Fx += TriPoly::monomial(UniPoly(Rational(i)) * F.coeff(i), i);
    Fy += TriPoly::monomial(F.coeff(i).derivative().shift(1), i);
  }
  BiPoly r1 = resultant(F, Fx), r2 = resultant(F, Fy);
  BiPoly g = gcd_poly(r1, r2);
  if (g.degree() > 0) r1 = exact_div(r1, g), r2 = exact_div(r2, g);
  return resultant(r1, r2);
}

}  // namespace reflexo

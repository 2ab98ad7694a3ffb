// Acceptance gate: one PASS/FAIL line per criterion with runtime and limit.
#include <reflexo/report.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace reflexo;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) ok = false, detail = what;
  }
};

const Polygon& poly(const std::string& n) { return find_by_name(builtin_catalog(), n)->polygon; }

UniPoly P(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.push_back(Rational(x));
  return UniPoly(v);
}

Outcome enumeration() {
  Outcome o;
  auto all = enumerate_reflexive(3);
  std::vector<long> vols;
  for (const auto& p : all) vols.push_back(volume(p));
  std::sort(vols.begin(), vols.end());
  o.require(all.size() == 16, std::to_string(all.size()) + " classes");
  o.require(vols == std::vector<long>{3, 4, 4, 4, 5, 5, 6, 6, 6, 6, 7, 7, 8, 8, 8, 9}, "volume multiset");
  return o;
}

Outcome duality() {
  Outcome o;
  const auto& cat = builtin_catalog();
  std::map<std::string, std::string> pairs = {{"3", "9"},   {"4a", "8a"}, {"4b", "8b"}, {"4c", "8c"},
                                              {"5a", "7a"}, {"5b", "7b"}, {"6a", "6a"}, {"6b", "6b"},
                                              {"6c", "6c"}, {"6d", "6d"}};
  for (const auto& np : cat) {
    Polygon D = polar_dual(np.polygon);
    o.require(volume(np.polygon) + volume(D) == 12, np.name + " volume sum");
    o.require(canonical_form(polar_dual(D)).vertices() == canonical_form(np.polygon).vertices(), np.name + " double dual");
  }
  for (const auto& [a, b] : pairs) {
    o.require(name_of(cat, polar_dual(poly(a))) == b, "dual of " + a);
    o.require(name_of(cat, polar_dual(poly(b))) == a, "dual of " + b);
  }
  return o;
}

Outcome mutation() {
  Outcome o;
  auto cls = mutation_classes(builtin_catalog());
  std::vector<std::vector<std::string>> expect = {{"3"},  {"4a", "4c"},           {"4b"},       {"5a", "5b"},
                                                  {"6a", "6b", "6c", "6d"}, {"7a", "7b"}, {"8a", "8b", "8c"}, {"9"}};
  o.require(cls == expect, std::to_string(cls.size()) + " classes, partition differs");
  return o;
}

Outcome table() {
  Outcome o;
  RunConfig cfg;
  auto t = table2(builtin_catalog(), cfg);
  std::string bad;
  for (const auto& n : t.mismatches) bad += " " + n;
  o.require(t.mismatches.empty(), "mismatch:" + bad);
  return o;
}

Outcome elimination() {
  Outcome o;
  auto a4 = analyze_pencil(poly("4a"));
  std::vector<Rational> r4;
  for (const auto& [v, m] : a4.value_roots.roots) r4.push_back(v);
  o.require(r4 == std::vector<Rational>{Rational(-4), Rational(0), Rational(4)} && a4.value_roots.residual.empty(),
            "4a factors");
  bool two = false;
  for (const auto& s : a4.singular)
    if (s.location.kind == Location::Kind::Value && s.location.value == 0) two = s.torus_nodes == 2;
  o.require(two, "4a two nodes over 0");
  auto a5 = analyze_pencil(poly("5a"));
  o.require(a5.value_roots.roots.size() == 1 && a5.value_roots.roots[0] == std::pair<Rational, int>{1, 2}, "5a (l-1)^2");
  o.require(a5.value_roots.residual.size() == 1 && a5.value_roots.residual[0].first == P({43, -18, -1, 1}),
            "5a cubic");
  auto a6 = analyze_pencil(poly("6c"));
  std::vector<Rational> r6;
  for (const auto& [v, m] : a6.value_roots.roots) r6.push_back(v);
  o.require(r6 == std::vector<Rational>{Rational(-6), Rational(2), Rational(3)} && a6.value_roots.residual.empty(),
            "6c roots");
  auto a7 = analyze_pencil(poly("7a"));
  o.require(a7.value_roots.roots.size() == 1 && a7.value_roots.roots[0].first == 3, "7a root 3");
  o.require(a7.value_roots.residual.size() == 1 && a7.value_roots.residual[0].first == P({-25, 5, 1}),
            "7a quadratic");
  return o;
}

Outcome heights() {
  Outcome o;
  auto H = height_matrix(poly("4b"), classify_fibres(poly("4b")));
  RationalMatrix expect = {{4, 2, 6}, {2, 1, 3}, {6, 3, 9}};
  for (auto& row : expect)
    for (auto& x : row) x /= 8;
  o.require(H == expect, "4b matrix");
  o.require(matrix_rank(H) == 1, "4b rank");
  auto H3 = height_matrix(poly("3"), classify_fibres(poly("3")));
  for (std::size_t i = 0; i < H3.size(); ++i) o.require(H3[i][i] == 0, "3 height nonzero");
  return o;
}

Outcome periods() {
  Outcome o;
  PicardFuchsBounds b;
  auto s = period_coefficients(build_fP(poly("3")), b.required_terms() - 1);
  for (unsigned long j = 0; j <= 13; ++j) {
    Integer e = factorial(3 * j) / (factorial(j) * factorial(j) * factorial(j));
    o.require(s.c[3 * j] == Rational(e), "coefficient of t^" + std::to_string(3 * j));
  }
  DiffOperator L = find_picard_fuchs(s, b);
  // D^2 - 27 t^3 (D+2)(D+1)
  o.require(L.order() == 2 && L.degree() == 3, "operator shape");
  o.require(L.dual(0) == P({0, 0, 1}) && L.dual(3) == Rational(-27) * (P({2, 1}) * P({1, 1})), "operator");
  auto loc = operator_singular_locus(L);
  UniPoly lead(Rational(1));
  for (const auto& [t, m] : loc.leading.roots) lead *= P({0, 1}) - UniPoly(t);
  for (const auto& [q, m] : loc.leading.residual) lead *= q;
  o.require(lead == monic(P({-1, 0, 0, 27})), "singular locus");
  return o;
}

Outcome invariance() {
  Outcome o;
  PicardFuchsBounds b;
  for (const auto& cls : mutation_classes(builtin_catalog())) {
    auto ref = period_coefficients(build_fP(poly(cls.front())), b.required_terms() - 1);
    DiffOperator Lref = find_picard_fuchs(ref, b);
    for (const auto& n : cls) {
      auto s = period_coefficients(build_fP(poly(n)), b.required_terms() - 1);
      o.require(std::equal(s.c.begin(), s.c.begin() + 21, ref.c.begin()), n + " periods through t^20");
      o.require(find_picard_fuchs(s, b) == Lref, n + " operator");
    }
  }
  return o;
}

UniPoly random_poly(std::mt19937& rng, int max_deg, int bound) {
  std::uniform_int_distribution<int> deg(1, max_deg), co(-bound, bound);
  int d = deg(rng);
  std::vector<Rational> v;
  for (int k = 0; k <= d; ++k) v.push_back(Rational(co(rng)));
  if (v.back() == 0) v.back() = 1;
  return UniPoly(v);
}

Outcome properties() {
  Outcome o;
  for (const auto& np : builtin_catalog()) {
    auto c = classify_fibres(np.polygon);
    auto mw = mw_group(np.polygon, c);
    o.require(c.chi_sum() == 12, np.name + " chi sum");
    o.require(mw.rank + c.r_sum() == 8, np.name + " Shioda-Tate");
  }
  std::mt19937 rng(99);
  for (int i = 0; i < 1000; ++i) {
    UniPoly f = random_poly(rng, 3, 5), g = random_poly(rng, 3, 5), h = random_poly(rng, 3, 5);
    o.require(resultant(f * g, h) == resultant(f, h) * resultant(g, h), "resultant multiplicativity");
    UniPoly fh = f * h, gh = g * h, d = gcd_poly(fh, gh);
    o.require((fh % d).is_zero() && (gh % d).is_zero() && (d % monic(h)).is_zero(), "gcd round trip");
    UniPoly p = f * f * g, prod(Rational(1));
    for (const auto& [q, m] : squarefree_decomposition(p))
      for (int k = 0; k < m; ++k) prod *= q;
    o.require(prod == monic(p), "squarefree round trip");
  }
  auto c3 = classify_fibres(poly("3"));
  auto m3 = miranda_identities(c3, 3, {{9, 3}});
  o.require(m3.first && m3.second, "Miranda for 3");
  auto c4 = classify_fibres(poly("4a"));
  o.require(miranda_assignments(c4, 4, 2).size() == 1 && miranda_assignments(c4, 2, 4).size() == 1, "Miranda for 4a");
  return o;
}

struct Criterion {
  int id;
  std::string name;
  double limit_s;  // 0: no runtime bound
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  std::vector<Criterion> all = {
      {1, "enumeration: 16 classes with volumes 3..9", 30, enumeration},
      {2, "duality: volume sum 12, double dual, dual pairs", 0, duality},
      {3, "mutation classes: 8 classes, 4a and 4b apart", 10, mutation},
      {4, "table2 regression: fibres and MW groups", 120, table},
      {5, "elimination factors for 4a, 5a, 6c, 7a", 0, elimination},
      {6, "height pairing: 4b matrix rank 1, 3 torsion", 0, heights},
      {7, "periods and Picard-Fuchs operator of 3", 20, periods},
      {8, "period invariance within mutation classes", 0, invariance},
      {9, "property suites: chi, Shioda-Tate, algebra, Miranda", 0, properties},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false, o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && secs > c.limit_s) o.require(false, "over time limit");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f s", secs);
    std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << c.id << "  " << c.name << "  [" << buf;
    if (c.limit_s > 0) std::cout << ", limit " << c.limit_s << " s";
    std::cout << "]";
    if (!o.ok) std::cout << "  " << o.detail;
    std::cout << std::endl;
    failed += !o.ok;
  }
  std::cout << (all.size() - failed) << "/" << all.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}

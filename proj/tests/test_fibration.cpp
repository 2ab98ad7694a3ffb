#include <reflexo/catalog.hpp>
#include <reflexo/fibration.hpp>

#include <gtest/gtest.h>

#include <complex>
#include <map>
#include <random>

using namespace reflexo;

namespace {

const Polygon& poly(const std::string& n) { return find_by_name(builtin_catalog(), n)->polygon; }

UniPoly P(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.push_back(Rational(x));
  return UniPoly(v);
}

std::vector<std::string> type_names(const FibreConfiguration& c) {
  std::vector<std::string> out;
  for (const auto& t : c.types()) out.push_back(t.name());
  return out;
}

using cd = std::complex<double>;

cd eval(const UniPoly& p, cd z) {
  cd acc = 0;
  for (int k = p.degree(); k >= 0; --k) acc = acc * z + p.coeff(k).get_d();
  return acc;
}

double scale(const UniPoly& p, cd z) {
  double s = 0;
  for (int k = 0; k <= p.degree(); ++k) s += std::abs(p.coeff(k).get_d()) * std::pow(std::abs(z), k);
  return s;
}

// Torus critical points of f by damped Newton on (x f_x, y f_y) in log
// coordinates from random starts.
std::vector<std::pair<cd, cd>> numeric_critical_points(const LaurentPoly& f, int starts) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::vector<std::pair<cd, cd>> found;
  for (int s = 0; s < starts; ++s) {
    cd X(u(rng), u(rng)), Y(u(rng), u(rng));  // logs
    bool ok = false;
    for (int it = 0; it < 200; ++it) {
      cd g1 = 0, g2 = 0, h11 = 0, h12 = 0, h22 = 0;
      for (const auto& [e, c] : f.terms()) {
        cd m = c.get_d() * std::exp(double(e.x) * X + double(e.y) * Y);
        g1 += double(e.x) * m, g2 += double(e.y) * m;
        h11 += double(e.x * e.x) * m, h12 += double(e.x * e.y) * m, h22 += double(e.y * e.y) * m;
      }
      cd det = h11 * h22 - h12 * h12;
      if (std::abs(det) < 1e-14) break;
      cd dX = (h22 * g1 - h12 * g2) / det, dY = (h11 * g2 - h12 * g1) / det;
      X -= dX, Y -= dY;
      if (std::abs(X.real()) > 12 || std::abs(Y.real()) > 12) break;
      if (std::abs(dX) + std::abs(dY) < 1e-13) {
        ok = true;
        break;
      }
    }
    if (!ok) continue;
    cd x = std::exp(X), y = std::exp(Y);
    bool dup = false;
    for (const auto& [a, b] : found) dup = dup || (std::abs(a - x) + std::abs(b - y) < 1e-7);
    if (!dup) found.push_back({x, y});
  }
  return found;
}

cd eval(const LaurentPoly& f, cd x, cd y) {
  cd acc = 0;
  for (const auto& [e, c] : f.terms()) acc += c.get_d() * std::pow(x, double(e.x)) * std::pow(y, double(e.y));
  return acc;
}

}  // namespace

TEST(Kodaira, EulerNumbersAndComponents) {
  EXPECT_EQ(KodairaType::parse("I9").chi(), 9);
  EXPECT_EQ(KodairaType::parse("I1*").chi(), 7);
  EXPECT_EQ(KodairaType::parse("I1*").r(), 5);
  EXPECT_EQ(KodairaType::parse("IV*").chi(), 8);
  EXPECT_EQ(KodairaType::parse("IV*").r(), 6);
  EXPECT_EQ(KodairaType::parse("I1").r(), 0);
  EXPECT_THROW(KodairaType::parse("V"), std::invalid_argument);
}

TEST(Fibration, FibreAtInfinityComplementsVolume) {
  for (const auto& np : builtin_catalog())
    EXPECT_EQ(fibre_at_infinity(np.polygon), KodairaType::In(12 - static_cast<int>(volume(np.polygon)))) << np.name;
}

TEST(Fibration, ConfigurationsOfAllSixteen) {
  std::map<std::string, std::vector<std::string>> expect = {
      {"3", {"I9", "I1", "I1", "I1"}},        {"4a", {"I8", "I2", "I1", "I1"}},      {"4b", {"I8", "I1", "I1", "I1", "I1"}},
      {"4c", {"I8", "I2", "I1", "I1"}},       {"5a", {"I7", "I2", "I1", "I1", "I1"}}, {"5b", {"I7", "I2", "I1", "I1", "I1"}},
      {"6a", {"I6", "I3", "I2", "I1"}},       {"6b", {"I6", "I3", "I2", "I1"}},      {"6c", {"I6", "I3", "I2", "I1"}},
      {"6d", {"I6", "I3", "I2", "I1"}},       {"7a", {"I5", "I5", "I1", "I1"}},      {"7b", {"I5", "I5", "I1", "I1"}},
      {"8a", {"I4", "I1*", "I1"}},            {"8b", {"I4", "I1*", "I1"}},           {"8c", {"I4", "I1*", "I1"}},
      {"9", {"I3", "IV*", "I1"}}};
  for (const auto& np : builtin_catalog()) {
    auto c = classify_fibres(np.polygon);
    EXPECT_EQ(type_names(c), expect.at(np.name)) << np.name;
    EXPECT_EQ(c.chi_sum(), 12) << np.name;
  }
}

TEST(Fibration, LocationsForSelectedPolygons) {
  auto c4a = classify_fibres(poly("4a"));
  ASSERT_EQ(c4a.entries.size(), 4u);
  EXPECT_EQ(c4a.entries[1].where.to_string(), "0");
  EXPECT_EQ(c4a.entries[1].type.name(), "I2");
  auto c6b = classify_fibres(poly("6b"));
  EXPECT_EQ(c6b.entries[1].where.to_string(), "2");
  EXPECT_EQ(c6b.entries[2].where.to_string(), "3");
  EXPECT_EQ(c6b.entries[3].where.to_string(), "-6");
  auto c9 = classify_fibres(poly("9"));
  EXPECT_EQ(c9.entries[1].type.name(), "IV*");
  EXPECT_EQ(c9.entries[1].where.to_string(), "6");
  EXPECT_EQ(c9.entries[2].where.to_string(), "-21");
  auto c8 = classify_fibres(poly("8a"));
  EXPECT_EQ(c8.entries[1].where.to_string(), "4");
  EXPECT_EQ(c8.entries[2].where.to_string(), "-12");
}

TEST(Fibration, EliminationFactors) {
  // 4a: lambda^2 (lambda - 4)(lambda + 4), two nodes over 0
  auto a4 = analyze_pencil(poly("4a"));
  EXPECT_EQ(a4.critical.values, P({0, 0, -16, 0, 1}));
  auto node0 = std::find_if(a4.singular.begin(), a4.singular.end(), [](const SingularValue& s) {
    return s.location.kind == Location::Kind::Value && s.location.value == 0;
  });
  ASSERT_NE(node0, a4.singular.end());
  EXPECT_EQ(node0->torus_nodes, 2);
  // 5a: (lambda - 1)^2 (lambda^3 - lambda^2 - 18 lambda + 43)
  auto a5 = analyze_pencil(poly("5a"));
  EXPECT_EQ(a5.critical.values, P({1, -1}) * P({1, -1}) * P({43, -18, -1, 1}));
  // 6c: roots 2, 3, -6 only
  auto a6 = analyze_pencil(poly("6c"));
  std::vector<Rational> r6;
  for (const auto& [v, m] : a6.value_roots.roots) r6.push_back(v);
  EXPECT_EQ(r6, (std::vector<Rational>{Rational(-6), Rational(2), Rational(3)}));
  EXPECT_TRUE(a6.value_roots.residual.empty());
  // 7a: root 3 and a quadratic with root sum -5, product -25
  auto a7 = analyze_pencil(poly("7a"));
  ASSERT_EQ(a7.value_roots.roots.size(), 1u);
  EXPECT_EQ(a7.value_roots.roots[0].first, 3);
  ASSERT_EQ(a7.value_roots.residual.size(), 1u);
  EXPECT_EQ(a7.value_roots.residual[0].first, P({-25, 5, 1}));
}

TEST(Fibration, CriticalValuesMatchNumericCriticalPoints) {
  for (const auto& np : builtin_catalog()) {
    LaurentPoly f = build_fP(np.polygon);
    auto cp = critical_points(np.polygon);
    int isolated = 0;
    for (const auto& [x, y] : numeric_critical_points(f, 300)) {
      cd lambda = -eval(f, x, y);
      bool on_curve = cp.curve_values.degree() > 0 &&
                      std::abs(eval(cp.curve_values, lambda)) < 1e-6 * (1 + scale(cp.curve_values, lambda));
      if (on_curve) continue;
      EXPECT_LT(std::abs(eval(cp.values, lambda)), 1e-6 * (1 + scale(cp.values, lambda)))
          << np.name << " lambda=" << lambda;
      ++isolated;
    }
    // isolated points sharing a value with a critical curve are not separable numerically
    UniPoly apart = cp.values;
    for (UniPoly g = gcd_poly(apart, cp.curve_values); !g.is_constant(); g = gcd_poly(apart, cp.curve_values))
      apart = apart / g;
    EXPECT_EQ(isolated, std::max(0, apart.degree())) << np.name;
  }
}

TEST(Fibration, NonreducedMembersOnlyForLargeVolume) {
  for (const auto& np : builtin_catalog()) {
    auto a = analyze_pencil(np.polygon);
    bool any = false;
    for (const auto& s : a.singular) any = any || s.nonreduced;
    EXPECT_EQ(any, volume(np.polygon) >= 8) << np.name;
  }
  EXPECT_TRUE(member_is_nonreduced(poly("9"), Rational(6)));
  EXPECT_FALSE(member_is_nonreduced(poly("9"), Rational(-21)));
}

TEST(Fibration, TowersSumToFibreAtInfinityLength) {
  for (const auto& np : builtin_catalog()) {
    long total = 0;
    for (const auto& t : base_point_towers(np.polygon)) total += t.chain_length;
    EXPECT_EQ(total, volume(np.polygon)) << np.name;
  }
}

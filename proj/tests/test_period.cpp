#include <reflexo/catalog.hpp>
#include <reflexo/mutation.hpp>
#include <reflexo/period.hpp>

#include <gtest/gtest.h>

using namespace reflexo;

namespace {

const Polygon& poly(const std::string& n) { return find_by_name(builtin_catalog(), n)->polygon; }

UniPoly P(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.push_back(Rational(x));
  return UniPoly(v);
}

}  // namespace

TEST(Period, TriangleClosedForm) {
  auto s = period_coefficients(build_fP(poly("3")), 39);
  for (unsigned long m = 0; m <= 39; ++m) {
    Integer expect = 0;
    if (m % 3 == 0) {
      unsigned long j = m / 3;
      expect = factorial(3 * j) / (factorial(j) * factorial(j) * factorial(j));
    }
    EXPECT_EQ(s.c[m], Rational(expect)) << m;
  }
}

TEST(Period, ClippedExpansionMatchesFullPowers) {
  for (const auto& np : builtin_catalog()) {
    LaurentPoly f = build_fP(np.polygon);
    auto s = period_coefficients(f, 8);
    LaurentPoly g(Rational(1));
    for (int m = 0; m <= 8; ++m) {
      EXPECT_EQ(s.c[m], g.constant_term()) << np.name << " m=" << m;
      g = g * f;
    }
  }
}

TEST(Period, TrianglePicardFuchs) {
  PicardFuchsBounds b;
  auto s = period_coefficients(build_fP(poly("3")), b.required_terms() - 1);
  DiffOperator L = find_picard_fuchs(s, b);
  DiffOperator expect{{P({0, 0, 0, -54}), P({0, 0, 0, -81}), P({1, 0, 0, -27})}};
  EXPECT_EQ(L, expect);
  EXPECT_EQ(to_string(L), "(-27*t^3+1)*D^2 + (-81*t^3)*D + (-54*t^3)");
  EXPECT_EQ(to_string_dual(L), "(D^2) + t^3*(-27*D^2-81*D-54)");
  // D^2 - 27 t^3 (D+2)(D+1)
  EXPECT_EQ(L.dual(0), P({0, 0, 1}));
  EXPECT_EQ(L.dual(3), Rational(-27) * (P({2, 1}) * P({1, 1})));
  auto loc = operator_singular_locus(L);
  ASSERT_EQ(loc.leading.roots.size(), 1u);
  EXPECT_EQ(loc.leading.roots[0].first, make_rational(1, 3));
  ASSERT_EQ(loc.leading.residual.size(), 1u);
  EXPECT_EQ(loc.leading.residual[0].first * P({-1, 3}), Rational(1, 9) * P({-1, 0, 0, 27}));
}

TEST(Period, OperatorsAnnihilateBeyondFitWindow) {
  PicardFuchsBounds b;
  for (const auto& np : builtin_catalog()) {
    LaurentPoly f = build_fP(np.polygon);
    DiffOperator L = find_picard_fuchs(period_coefficients(f, b.required_terms() - 1), b);
    auto longer = period_coefficients(f, b.required_terms() + 30);
    auto r = apply_operator(L, longer);
    for (std::size_t m = 0; m + static_cast<std::size_t>(L.degree()) < r.size(); ++m)
      EXPECT_EQ(r.c[m], 0) << np.name << " m=" << m;
  }
}

TEST(Period, ShortSeriesRejected) {
  auto s = period_coefficients(build_fP(poly("3")), 10);
  EXPECT_THROW(find_picard_fuchs(s), std::invalid_argument);
}

TEST(Period, InvariantUnderMutation) {
  for (const auto& cls : mutation_classes(builtin_catalog())) {
    auto ref = period_coefficients(build_fP(poly(cls.front())), 20);
    for (const auto& n : cls) EXPECT_EQ(period_coefficients(build_fP(poly(n)), 20).c, ref.c) << n;
  }
}

TEST(Period, AlgebraicMutationKeepsConstantTerms) {
  LaurentPoly f = build_fP(poly("6a"));
  for (const auto& [d, Q] : all_mutations(poly("6a"))) {
    LaurentPoly g = algebraic_mutation(f, d.v, d.w);
    EXPECT_EQ(period_coefficients(g, 12).c, period_coefficients(f, 12).c) << to_string(d);
  }
}

#include <reflexo/catalog.hpp>
#include <reflexo/polygon.hpp>

#include <gtest/gtest.h>

#include <algorithm>

using namespace reflexo;

namespace {

// Lattice points of m*P by scanning the bounding box.
long brute_count(const Polygon& P, long m) {
  long xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  for (const auto& v : P.vertices())
    xmin = std::min(xmin, v.x), xmax = std::max(xmax, v.x), ymin = std::min(ymin, v.y), ymax = std::max(ymax, v.y);
  auto E = edges(P);
  long n = 0;
  for (long x = m * xmin; x <= m * xmax; ++x)
    for (long y = m * ymin; y <= m * ymax; ++y) {
      bool in = true;
      for (const auto& e : E) in = in && cross(e.head - e.tail, LatticePoint{x, y} - m * e.tail) >= 0;
      n += in;
    }
  return n;
}

}  // namespace

TEST(Polygon, RejectsNonConvexInput) {
  EXPECT_THROW(Polygon({{0, 0}, {1, 1}, {2, 0}}), std::invalid_argument);
  EXPECT_THROW(Polygon({{1, 0}, {0, 0}, {2, 0}}), std::invalid_argument);
}

TEST(Polygon, HullDropsCollinearAndInteriorPoints) {
  Polygon P = convex_hull({{1, 0}, {0, 1}, {-1, -1}, {0, 0}, {1, 0}});
  EXPECT_EQ(P.vertices().size(), 3u);
  EXPECT_EQ(volume(P), 3);
}

TEST(Polygon, CatalogIsReflexiveWithExpectedVolumes) {
  for (const auto& np : builtin_catalog()) {
    EXPECT_TRUE(is_reflexive(np.polygon)) << np.name;
    EXPECT_EQ(volume(np.polygon), std::stol(np.name.substr(0, 1))) << np.name;
    EXPECT_EQ(static_cast<long>(boundary_points(np.polygon).size()), volume(np.polygon)) << np.name;
  }
}

TEST(Polygon, EhrhartCountMatchesBruteForce) {
  for (const auto& np : builtin_catalog())
    for (long m = 1; m <= 3; ++m) EXPECT_EQ(lattice_point_count(np.polygon, m), brute_count(np.polygon, m)) << np.name;
}

TEST(Polygon, PolarDualOfTriangle) {
  const auto& cat = builtin_catalog();
  Polygon D = polar_dual(find_by_name(cat, "3")->polygon);
  EXPECT_EQ(volume(D), 9);
  EXPECT_EQ(name_of(cat, D), "9");
  EXPECT_THROW(polar_dual(Polygon({{2, 0}, {0, 2}, {-2, -2}})), std::domain_error);
}

TEST(Polygon, CanonicalFormIsGL2Invariant) {
  const Mat2 moves[] = {{1, 1, 0, 1}, {0, -1, 1, 0}, {1, 0, 0, -1}, {2, 1, 1, 1}};
  for (const auto& np : builtin_catalog())
    for (const auto& U : moves) {
      Polygon Q = transform(U, np.polygon);
      EXPECT_EQ(canonical_form(Q).vertices(), canonical_form(np.polygon).vertices()) << np.name;
      EXPECT_TRUE(equivalent(Q, np.polygon));
    }
}

TEST(Polygon, CatalogEntriesPairwiseInequivalent) {
  const auto& cat = builtin_catalog();
  for (std::size_t i = 0; i < cat.size(); ++i)
    for (std::size_t j = i + 1; j < cat.size(); ++j)
      EXPECT_FALSE(equivalent(cat[i].polygon, cat[j].polygon)) << cat[i].name << " " << cat[j].name;
}

TEST(Polygon, EnumerationFindsSixteenClasses) {
  auto all = enumerate_reflexive(3);
  ASSERT_EQ(all.size(), 16u);
  for (const auto& P : all) EXPECT_TRUE(name_of(builtin_catalog(), P).has_value());
}

TEST(Catalog, JsonRoundTrip) {
  const auto& cat = builtin_catalog();
  auto path = std::filesystem::temp_directory_path() / "reflexo_catalog_test.json";
  {
    std::ofstream out(path);
    out << catalog_json(cat).dump();
  }
  auto back = load_catalog(path.string());
  ASSERT_EQ(back.size(), cat.size());
  for (std::size_t i = 0; i < cat.size(); ++i) {
    EXPECT_EQ(back[i].name, cat[i].name);
    EXPECT_EQ(back[i].polygon.vertices(), cat[i].polygon.vertices());
  }
  std::filesystem::remove(path);
}

TEST(Catalog, BundledFileMatchesBuiltin) {
  auto file = load_catalog(REFLEXO_DEFAULT_CATALOG);
  const auto& cat = builtin_catalog();
  ASSERT_EQ(file.size(), cat.size());
  for (std::size_t i = 0; i < cat.size(); ++i) EXPECT_EQ(file[i].polygon.vertices(), cat[i].polygon.vertices());
}

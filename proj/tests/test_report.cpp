#include <reflexo/report.hpp>
#include <reflexo/svg.hpp>

#include <gtest/gtest.h>

using namespace reflexo;

namespace {

std::filesystem::path fresh_dir(const std::string& tag) {
  auto d = std::filesystem::temp_directory_path() / ("reflexo_test_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(d);
  return d;
}

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

}  // namespace

TEST(Report, RenderedRows) {
  const auto& cat = builtin_catalog();
  RunConfig cfg;
  cfg.period_terms = 10;
  auto r3 = analyze(cat, "3", cfg);
  EXPECT_EQ(r3.json["table2"], "I9, 3×I1 | Z/3Z");
  auto r8 = analyze(cat, "8c", cfg);
  EXPECT_EQ(r8.json["table2"], "I4, I1*, I1 | Z/4Z");
  auto r5 = analyze(cat, "5b", cfg);
  EXPECT_EQ(r5.json["table2"], "I7, I2, 3×I1 | Z");
}

TEST(Report, JsonUsesExactStrings) {
  RunConfig cfg;
  cfg.period_terms = 10;
  auto j = analyze(builtin_catalog(), "4b", cfg).json;
  EXPECT_EQ(j["mw"]["height_matrix"][0][0], "1/2");
  EXPECT_EQ(j["mw"]["height_matrix"][1][1], "1/8");
  EXPECT_EQ(j["mw"]["rank"], 1);
  EXPECT_EQ(j["volume"].get<long>() + j["dual_volume"].get<long>(), 12);
  auto j3 = analyze(builtin_catalog(), "3", cfg).json;
  std::vector<std::string> coeffs = j3["period"]["coefficients"];
  EXPECT_EQ(coeffs, (std::vector<std::string>{"1", "0", "0", "6", "0", "0", "90", "0", "0", "1680"}));
  EXPECT_EQ(j3["picard_fuchs"]["operator"], "(-27*t^3+1)*D^2 + (-81*t^3)*D + (-54*t^3)");
  auto j9 = analyze(builtin_catalog(), "9", cfg).json;
  EXPECT_EQ(j9["fibres"][0]["type"], "I3");
  EXPECT_EQ(j9["fibres"][1]["type"], "IV*");
  EXPECT_EQ(j9["fibres"][1]["where"], "6");
}

TEST(Report, UnknownNameThrows) {
  EXPECT_THROW(analyze(builtin_catalog(), "10", RunConfig{}), std::invalid_argument);
}

TEST(Report, CacheIsByteIdentical) {
  RunConfig cfg;
  cfg.period_terms = 12;
  cfg.picard_fuchs = false;
  cfg.cache_dir = fresh_dir("cache").string();
  const auto& cat = builtin_catalog();
  std::string fresh = analyze(cat, "6b", cfg).json.dump();
  std::string first = analyze_cached(cat, "6b", cfg).dump();
  std::string second = analyze_cached(cat, "6b", cfg).dump();
  EXPECT_EQ(fresh, first);
  EXPECT_EQ(first, second);
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(cfg.cache_dir)) {
    EXPECT_EQ(e.path().extension(), ".json");
    ++files;
  }
  EXPECT_EQ(files, 1u);
  // a different configuration is a different key
  cfg.period_terms = 13;
  EXPECT_NE(analyze_cached(cat, "6b", cfg).dump(), first);
  std::filesystem::remove_all(cfg.cache_dir);
}

TEST(Report, CorruptCacheEntryIsRecomputed) {
  RunConfig cfg;
  cfg.period_terms = 5;
  cfg.picard_fuchs = false;
  cfg.cache_dir = fresh_dir("corrupt").string();
  const auto& cat = builtin_catalog();
  std::string key = cache_key(cat, "3", cfg);
  auto path = cache_file(cfg, "3", key);
  std::filesystem::create_directories(path.parent_path());
  std::ofstream(path) << "{not json";
  EXPECT_EQ(analyze_cached(cat, "3", cfg).dump(), analyze(cat, "3", cfg).json.dump());
  std::filesystem::remove_all(cfg.cache_dir);
}

TEST(Report, Table2HasNoMismatches) {
  RunConfig cfg;
  cfg.parallelism = 4;
  auto t = table2(builtin_catalog(), cfg);
  EXPECT_TRUE(t.mismatches.empty());
  EXPECT_EQ(t.rows.size(), 16u);
}

TEST(Svg, PolygonAndDual) {
  const auto& cat = builtin_catalog();
  const Polygon& P = find_by_name(cat, "3")->polygon;
  std::string s = svg_polygon(P, "3");
  EXPECT_EQ(s.rfind("<svg", 0), 0u);
  EXPECT_EQ(count(s, "</svg>"), 1u);
  EXPECT_EQ(count(s, "r=\"5\""), 3u);  // boundary points
  EXPECT_EQ(count(s, "stroke=\"#c0392b\""), 1u);
  std::string d = svg_polygon(polar_dual(P), "dual");
  EXPECT_EQ(count(d, "r=\"5\""), 9u);
}

TEST(Svg, FibreDiagramLabels) {
  auto c = classify_fibres(find_by_name(builtin_catalog(), "6b")->polygon);
  std::string s = svg_fibres(c, "6b");
  for (const char* t : {"I6 @", "I3 @", "I2 @", "I1 @"}) EXPECT_EQ(count(s, t), 1u) << t;
  EXPECT_EQ(count(s, "<g>"), count(s, "</g>"));
}

#pragma once

#include "catalog.hpp"
#include "fibration.hpp"
#include "mordell_weil.hpp"
#include "mutation.hpp"
#include "period.hpp"

#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace reflexo {

inline constexpr const char* kVersion = "reflexo 1.0.0";

struct RunConfig {
  std::string catalog_path;
  std::string cache_dir;
  std::size_t period_terms = 40;
  bool picard_fuchs = true;
  PicardFuchsBounds bounds;
  unsigned parallelism = 0;  // 0: hardware concurrency
};

inline std::string default_cache_dir() {
  if (const char* e = std::getenv("REFLEXO_CACHE"); e && *e) return e;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::string(x) + "/reflexo";
  if (const char* h = std::getenv("HOME"); h && *h) return std::string(h) + "/.cache/reflexo";
  return (std::filesystem::temp_directory_path() / "reflexo").string();
}

// Expected rows of the summary table: fibres, group, Oguiso-Shioda number.
struct Table2Row {
  std::string fibres;
  std::string group;
  int number;
};

inline const std::map<std::string, Table2Row>& expected_table2() {
  static const std::map<std::string, Table2Row> t = [] {
    std::map<std::string, Table2Row> m;
    auto put = [&](std::initializer_list<const char*> names, Table2Row row) {
      for (const char* n : names) m[n] = row;
    };
    put({"3"}, {"I9, 3×I1", "Z/3Z", 63});
    put({"4a", "4c"}, {"I8, I2, 2×I1", "Z/4Z", 70});
    put({"4b"}, {"I8, 4×I1", "Z", 45});
    put({"5a", "5b"}, {"I7, I2, 3×I1", "Z", 47});
    put({"6a", "6b", "6c", "6d"}, {"I6, I3, I2, I1", "Z/6Z", 66});
    put({"7a", "7b"}, {"2×I5, 2×I1", "Z/5Z", 67});
    put({"8a", "8b", "8c"}, {"I4, I1*, I1", "Z/4Z", 72});
    put({"9"}, {"I3, IV*, I1", "Z/3Z", 69});
    return m;
  }();
  return t;
}

// "I9, 3×I1": identical types grouped, in order of first appearance.
inline std::string render_fibres(const FibreConfiguration& c) {
  std::vector<std::pair<std::string, int>> groups;
  for (const auto& t : c.types()) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == t.name(); });
    if (it == groups.end())
      groups.push_back({t.name(), 1});
    else
      ++it->second;
  }
  std::string s;
  for (const auto& [n, k] : groups) {
    if (!s.empty()) s += ", ";
    s += (k > 1 ? std::to_string(k) + "×" : "") + n;
  }
  return s;
}

inline std::string render_group(const MWReport& mw) {
  std::string s;
  if (mw.rank == 1) s = "Z";
  if (mw.rank > 1) s = "Z^" + std::to_string(mw.rank);
  if (mw.torsion_order > 1) s += (s.empty() ? "" : " + ") + std::string("Z/") + std::to_string(mw.torsion_order) + "Z";
  return s.empty() ? "0" : s;
}

inline nlohmann::json rational_matrix_json(const RationalMatrix& M) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& row : M) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& x : row) r.push_back(to_string(x));
    j.push_back(r);
  }
  return j;
}

inline nlohmann::json location_json(const Location& l) {
  if (l.kind == Location::Kind::Factor) return {{"factor", l.to_string()}};
  return l.to_string();
}

inline nlohmann::json fibres_json(const FibreConfiguration& c) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& e : c.entries) {
    nlohmann::json x{{"where", location_json(e.where)}, {"type", e.type.name()}};
    if (e.where.kind == Location::Kind::Factor) x["count"] = e.count;
    j.push_back(x);
  }
  return j;
}

inline nlohmann::json mw_json(const MWReport& mw) {
  nlohmann::json j{{"rank", mw.rank},
                   {"torsion", mw.torsion_order},
                   {"group", mw.group},
                   {"detT", to_long(mw.det_trivial_lattice)},
                   {"positions", mw.positions}};
  if (mw.heights) j["height_matrix"] = rational_matrix_json(*mw.heights);
  return j;
}

inline nlohmann::json operator_json(const DiffOperator& L) {
  nlohmann::json p = nlohmann::json::array();
  for (const auto& q : L.p) p.push_back(to_string(q, "t"));
  auto sing = operator_singular_locus(L);
  nlohmann::json roots = nlohmann::json::array(), residual = nlohmann::json::array();
  for (const auto& [t, m] : sing.leading.roots) roots.push_back({{"t", to_string(t)}, {"multiplicity", m}});
  for (const auto& [q, m] : sing.leading.residual) residual.push_back({{"factor", to_string(q, "t")}, {"multiplicity", m}});
  return {{"operator", to_string(L)},
          {"dual_form", to_string_dual(L)},
          {"order", L.order()},
          {"degree", L.degree()},
          {"p", p},
          {"leading_rational_roots", roots},
          {"leading_residual_factors", residual},
          {"also_singular", {"t=0", "t=infinity"}},
          {"lambda_convention", "t = -1/lambda"}};
}

struct AnalysisReport {
  std::string name;
  nlohmann::json json;
  FibreConfiguration config;
  MWReport mw;
};

inline AnalysisReport analyze(const std::vector<NamedPolygon>& cat, const std::string& name, const RunConfig& cfg) {
  const NamedPolygon* np = find_by_name(cat, name);
  if (!np) throw std::invalid_argument("unknown polygon " + name);
  const Polygon& P = np->polygon;
  AnalysisReport r;
  r.name = name;
  auto& j = r.json;
  j["polygon"] = name;
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& v : P.vertices()) verts.push_back({v.x, v.y});
  j["vertices"] = verts;
  j["volume"] = volume(P);
  auto dual = name_of(cat, polar_dual(P));
  j["dual"] = dual ? *dual : std::string("?");
  j["dual_volume"] = volume(polar_dual(P));
  for (const auto& cls : mutation_classes(cat))
    if (std::find(cls.begin(), cls.end(), name) != cls.end()) j["mutation_class"] = cls;
  LaurentPoly f = build_fP(P);
  j["laurent"] = to_string(f);

  PencilAnalysis pa = analyze_pencil(P);
  r.config = pa.config;
  j["fibres"] = fibres_json(pa.config);
  nlohmann::json elim{{"polynomial", to_string(pa.critical.values, "l")}};
  nlohmann::json roots = nlohmann::json::array(), residual = nlohmann::json::array();
  for (const auto& [v, m] : pa.value_roots.roots) roots.push_back({{"lambda", to_string(v)}, {"multiplicity", m}});
  for (const auto& [q, m] : pa.value_roots.residual) residual.push_back({{"factor", to_string(q, "l")}, {"multiplicity", m}});
  elim["rational_roots"] = roots;
  elim["residual_factors"] = residual;
  if (!pa.critical.curve_values.is_constant()) elim["critical_curve_values"] = to_string(pa.critical.curve_values, "l");
  j["elimination"] = elim;
  nlohmann::json towers = nlohmann::json::array();
  for (const auto& t : pa.towers) {
    if (t.chain_length < 2) continue;
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : t.assignments) a.push_back(x ? to_string(*x) : std::string("infinity"));
    towers.push_back({{"edge", {{t.edge.tail.x, t.edge.tail.y}, {t.edge.head.x, t.edge.head.y}}},
                      {"length", t.chain_length},
                      {"absorbed_at", a}});
  }
  j["base_point_towers"] = towers;

  r.mw = mw_group(P, pa.config);
  j["mw"] = mw_json(r.mw);
  j["mw"]["no"] = expected_table2().count(name) ? expected_table2().at(name).number : 0;

  std::size_t need = cfg.picard_fuchs ? std::max(cfg.period_terms, cfg.bounds.required_terms()) : cfg.period_terms;
  PowerSeries s = period_coefficients(f, need == 0 ? 0 : need - 1);
  nlohmann::json coeffs = nlohmann::json::array();
  for (std::size_t m = 0; m < cfg.period_terms && m < s.size(); ++m) coeffs.push_back(to_string(s.c[m]));
  j["period"] = {{"terms", cfg.period_terms}, {"coefficients", coeffs}};
  if (cfg.picard_fuchs) j["picard_fuchs"] = operator_json(find_picard_fuchs(s, cfg.bounds));
  j["table2"] = render_fibres(pa.config) + " | " + render_group(r.mw);
  j["version"] = kVersion;
  return r;
}

// ---- cache ----

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  return h;
}

inline std::string cache_key(const std::vector<NamedPolygon>& cat, const std::string& name, const RunConfig& cfg) {
  std::ostringstream os;
  os << kVersion << '|' << name << '|' << catalog_json(cat).dump() << '|' << cfg.period_terms << '|'
     << cfg.picard_fuchs << '|' << cfg.bounds.max_order << ',' << cfg.bounds.max_degree << ','
     << cfg.bounds.guard;
  return os.str();
}

inline std::filesystem::path cache_file(const RunConfig& cfg, const std::string& name, const std::string& key) {
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(key)));
  return std::filesystem::path(cfg.cache_dir) / (name + "-" + hex + ".json");
}

inline std::optional<nlohmann::json> cache_load(const std::filesystem::path& p, const std::string& key) {
  std::ifstream in(p);
  if (!in) return std::nullopt;
  try {
    nlohmann::json j;
    in >> j;
    if (j.at("key").get<std::string>() != key) return std::nullopt;
    return j.at("report");
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

inline void cache_store(const std::filesystem::path& p, const std::string& key, const nlohmann::json& report) {
  std::error_code ec;
  std::filesystem::create_directories(p.parent_path(), ec);
  if (ec) return;
  auto tmp = p;
  tmp += ".tmp." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << nlohmann::json{{"key", key}, {"report", report}}.dump();
    if (!out) return;
  }
  std::filesystem::rename(tmp, p, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

// Report JSON, served from the cache when the key matches.
inline nlohmann::json analyze_cached(const std::vector<NamedPolygon>& cat, const std::string& name,
                                     const RunConfig& cfg) {
  std::string key = cache_key(cat, name, cfg);
  auto path = cache_file(cfg, name, key);
  if (!cfg.cache_dir.empty())
    if (auto hit = cache_load(path, key)) return *hit;
  auto j = analyze(cat, name, cfg).json;
  if (!cfg.cache_dir.empty()) cache_store(path, key, j);
  return j;
}

// ---- summary table ----

struct Table2Result {
  std::vector<std::string> names, rows;
  std::vector<std::string> mismatches;
};

template <class F>
void parallel_for(std::size_t n, unsigned workers, F f) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i; (i = next++) < n;) f(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline Table2Result table2(const std::vector<NamedPolygon>& cat, const RunConfig& cfg) {
  Table2Result res;
  res.names = catalog_names(cat);
  res.rows.resize(cat.size());
  RunConfig light = cfg;
  light.picard_fuchs = false;
  light.period_terms = 0;
  parallel_for(cat.size(), cfg.parallelism, [&](std::size_t i) {
    try {
      res.rows[i] = analyze_cached(cat, cat[i].name, light).at("table2").get<std::string>();
    } catch (const std::exception& e) {
      res.rows[i] = std::string("error: ") + e.what();
    }
  });
  const auto& exp = expected_table2();
  for (std::size_t i = 0; i < cat.size(); ++i) {
    auto it = exp.find(cat[i].name);
    if (it == exp.end() || res.rows[i] != it->second.fibres + " | " + it->second.group)
      res.mismatches.push_back(cat[i].name);
  }
  return res;
}

}  // namespace reflexo

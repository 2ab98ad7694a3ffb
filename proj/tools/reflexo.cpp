#include <reflexo/report.hpp>
#include <reflexo/svg.hpp>

#include <CLI11.hpp>

#include <iostream>

using namespace reflexo;

namespace {

constexpr int kMismatch = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const NamedPolygon& lookup(const std::vector<NamedPolygon>& cat, const std::string& name) {
  if (const auto* np = find_by_name(cat, name)) return *np;
  std::string valid;
  for (const auto& n : catalog_names(cat)) valid += (valid.empty() ? "" : ", ") + n;
  throw UsageError("unknown polygon '" + name + "'; valid names: " + valid);
}

std::vector<NamedPolygon> open_catalog(const std::string& path) {
  if (!path.empty()) return load_catalog(path);
  std::error_code ec;
  if (std::filesystem::exists(REFLEXO_DEFAULT_CATALOG, ec)) return load_catalog(REFLEXO_DEFAULT_CATALOG);
  return builtin_catalog();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reflexive polygons, Laurent pencils and rational elliptic surfaces"};
  app.require_subcommand(1);
  RunConfig cfg;
  cfg.cache_dir = default_cache_dir();
  bool no_cache = false;
  app.add_option("--catalog", cfg.catalog_path, "Polygon catalog JSON (default: bundled catalog)");
  app.add_option("-j,--jobs", cfg.parallelism, "Worker threads for table2 (0 = all cores)");
  app.add_flag("--no-cache", no_cache, "Do not read or write the result cache");

  std::string name, what;
  std::size_t terms = 0;
  bool no_pf = false, check = false;

  auto* c_catalog = app.add_subcommand("catalog", "List polygons with vertices, volume and dual");
  auto* c_analyze = app.add_subcommand("analyze", "Full analysis as JSON");
  c_analyze->add_option("name", name)->required();
  c_analyze->add_option("--period", cfg.period_terms, "Number of period coefficients")->capture_default_str();
  c_analyze->add_flag("--no-pf", no_pf, "Skip the Picard-Fuchs fit");
  auto* c_table2 = app.add_subcommand("table2", "Singular fibres and Mordell-Weil group of every polygon");
  c_table2->add_flag("--check", check, "Exit 1 unless every row matches the expected table");
  auto* c_period = app.add_subcommand("period", "Period coefficients, one per line");
  c_period->add_option("name", name)->required();
  c_period->add_option("-n", terms, "Number of coefficients")->required();
  auto* c_pf = app.add_subcommand("pf", "Picard-Fuchs operator of the period");
  c_pf->add_option("name", name)->required();
  auto* c_mut = app.add_subcommand("mutations", "All one-step combinatorial mutations");
  c_mut->add_option("name", name)->required();
  auto* c_classes = app.add_subcommand("classes", "Mutation classes, one per line");
  auto* c_svg = app.add_subcommand("svg", "SVG diagram on stdout");
  c_svg->add_option("name", name)->required();
  c_svg->add_option("what", what, "polygon, dual or fibres")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }
  if (no_cache) cfg.cache_dir.clear();

  try {
    auto cat = open_catalog(cfg.catalog_path);

    if (*c_catalog) {
      for (const auto& np : cat) {
        std::cout << np.name << "  vol=" << volume(np.polygon) << "  vertices=";
        for (const auto& v : np.polygon.vertices()) std::cout << to_string(v);
        auto d = name_of(cat, polar_dual(np.polygon));
        std::cout << "  dual=" << (d ? *d : "?") << '\n';
      }
    } else if (*c_analyze) {
      lookup(cat, name);
      cfg.picard_fuchs = !no_pf;
      std::cout << analyze_cached(cat, name, cfg).dump(2) << '\n';
    } else if (*c_table2) {
      auto t = table2(cat, cfg);
      const auto& exp = expected_table2();
      for (std::size_t i = 0; i < t.names.size(); ++i) {
        std::cout << t.names[i] << "  " << t.rows[i];
        if (check) {
          auto it = exp.find(t.names[i]);
          bool ok = std::find(t.mismatches.begin(), t.mismatches.end(), t.names[i]) == t.mismatches.end();
          std::cout << "  No. " << (it != exp.end() ? it->second.number : 0) << (ok ? "  ok" : "  MISMATCH");
        }
        std::cout << '\n';
      }
      if (check && !t.mismatches.empty()) {
        std::cerr << "mismatch:";
        for (const auto& n : t.mismatches) std::cerr << ' ' << n;
        std::cerr << '\n';
        return kMismatch;
      }
    } else if (*c_period) {
      const auto& np = lookup(cat, name);
      if (terms == 0) return 0;
      auto s = period_coefficients(build_fP(np.polygon), terms - 1);
      for (const auto& c : s.c) std::cout << to_string(c) << '\n';
    } else if (*c_pf) {
      const auto& np = lookup(cat, name);
      auto s = period_coefficients(build_fP(np.polygon), cfg.bounds.required_terms() - 1);
      auto L = find_picard_fuchs(s, cfg.bounds);
      std::cout << to_string(L) << '\n' << to_string_dual(L) << '\n';
    } else if (*c_mut) {
      const auto& np = lookup(cat, name);
      for (const auto& [d, Q] : all_mutations(np.polygon)) {
        auto n = name_of(cat, Q);
        std::cout << to_string(d) << "  -> " << (n ? *n : "?") << "  vertices=";
        for (const auto& v : Q.vertices()) std::cout << to_string(v);
        std::cout << '\n';
      }
    } else if (*c_classes) {
      for (const auto& cls : mutation_classes(cat)) {
        for (std::size_t i = 0; i < cls.size(); ++i) std::cout << (i ? "," : "") << cls[i];
        std::cout << '\n';
      }
    } else if (*c_svg) {
      const auto& np = lookup(cat, name);
      if (what == "polygon") {
        std::cout << svg_polygon(np.polygon, "P " + name);
      } else if (what == "dual") {
        auto d = name_of(cat, polar_dual(np.polygon));
        std::cout << svg_polygon(polar_dual(np.polygon), "dual of " + name + (d ? " (" + *d + ")" : ""));
      } else if (what == "fibres") {
        std::cout << svg_fibres(analyze_pencil(np.polygon).config, "singular fibres of " + name);
      } else {
        throw UsageError("unknown svg mode '" + what + "'; expected polygon, dual or fibres");
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kMismatch;
  }
  return 0;
}

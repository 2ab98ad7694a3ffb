#pragma once

#include "polygon.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace reflexo {

struct NamedPolygon {
  std::string name;
  Polygon polygon;
};

// The 16 reflexive polygons with the coordinates used throughout: these
// reproduce the chart equations of the worked cases (4b uses x4 = (0,-1)).
inline const std::vector<NamedPolygon>& builtin_catalog() {
  static const std::vector<NamedPolygon> cat = [] {
    auto P = [](std::vector<LatticePoint> v) { return Polygon(std::move(v)); };
    return std::vector<NamedPolygon>{
        {"3", P({{1, 0}, {0, 1}, {-1, -1}})},
        {"4a", P({{1, 0}, {0, 1}, {-1, 0}, {0, -1}})},
        {"4b", P({{1, 0}, {0, 1}, {-1, 1}, {0, -1}})},
        {"4c", P({{0, -1}, {1, 1}, {-1, 1}})},
        {"5a", P({{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}})},
        {"5b", P({{0, -1}, {1, 1}, {-1, 1}, {-1, 0}})},
        {"6a", P({{1, -1}, {1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}})},
        {"6b", P({{0, -1}, {1, 1}, {-1, 1}, {-1, -1}})},
        {"6c", P({{1, 0}, {1, 1}, {-1, 1}, {-1, 0}, {0, -1}})},
        {"6d", P({{-1, -1}, {2, 1}, {-1, 1}})},
        {"7a", P({{-1, -1}, {0, -1}, {1, 0}, {1, 1}, {-1, 1}})},
        {"7b", P({{-1, -1}, {1, 0}, {2, 1}, {-1, 1}})},
        {"8a", P({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}})},
        {"8b", P({{-1, -1}, {0, -1}, {2, 1}, {-1, 1}})},
        {"8c", P({{0, -1}, {2, 1}, {-2, 1}})},
        {"9", P({{-1, -1}, {2, -1}, {-1, 2}})},
    };
  }();
  return cat;
}

inline std::vector<NamedPolygon> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open catalog " + path);
  nlohmann::json j;
  in >> j;
  std::vector<NamedPolygon> out;
  for (const auto& e : j) {
    std::vector<LatticePoint> v;
    for (const auto& p : e.at("vertices")) v.push_back({p.at(0).get<long>(), p.at(1).get<long>()});
    out.push_back({e.at("name").get<std::string>(), Polygon(std::move(v))});
  }
  return out;
}

inline nlohmann::json catalog_json(const std::vector<NamedPolygon>& cat) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& np : cat) {
    nlohmann::json v = nlohmann::json::array();
    for (const auto& p : np.polygon.vertices()) v.push_back({p.x, p.y});
    j.push_back({{"name", np.name}, {"vertices", v}});
  }
  return j;
}

inline const NamedPolygon* find_by_name(const std::vector<NamedPolygon>& cat, const std::string& name) {
  for (const auto& np : cat)
    if (np.name == name) return &np;
  return nullptr;
}

inline std::optional<std::string> name_of(const std::vector<NamedPolygon>& cat, const Polygon& P) {
  Polygon c = canonical_form(P);
  for (const auto& np : cat)
    if (canonical_form(np.polygon) == c) return np.name;
  return std::nullopt;
}

inline std::vector<std::string> catalog_names(const std::vector<NamedPolygon>& cat) {
  std::vector<std::string> out;
  for (const auto& np : cat) out.push_back(np.name);
  return out;
}

}  // namespace reflexo

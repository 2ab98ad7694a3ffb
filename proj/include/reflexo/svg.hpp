#pragma once

#include "fibration.hpp"
#include "mordell_weil.hpp"
#include "polygon.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace reflexo {

namespace detail {

inline std::string svg_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else out += c;
  }
  return out;
}

}  // namespace detail

// Lattice dots in the bounding box, the hull, and a marker at the origin.
inline std::string svg_polygon(const Polygon& P, const std::string& title) {
  const int unit = 40, pad = 30;
  long xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  for (const auto& v : P.vertices()) {
    xmin = std::min(xmin, v.x), xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y), ymax = std::max(ymax, v.y);
  }
  long w = (xmax - xmin) * unit + 2 * pad, h = (ymax - ymin) * unit + 2 * pad + 20;
  auto X = [&](long x) { return pad + (x - xmin) * unit; };
  auto Y = [&](long y) { return pad + 20 + (ymax - y) * unit; };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
     << ' ' << h << "\">\n";
  os << "<text x=\"" << pad << "\" y=\"18\" font-family=\"sans-serif\" font-size=\"14\">" << detail::svg_escape(title)
     << "</text>\n";
  os << "<polygon points=\"";
  for (const auto& v : P.vertices()) os << X(v.x) << ',' << Y(v.y) << ' ';
  os << "\" fill=\"#dde8f6\" stroke=\"#1f4e8c\" stroke-width=\"2\"/>\n";
  for (long x = xmin; x <= xmax; ++x)
    for (long y = ymin; y <= ymax; ++y)
      os << "<circle cx=\"" << X(x) << "\" cy=\"" << Y(y) << "\" r=\"3\" fill=\"#999\"/>\n";
  for (const auto& p : boundary_points(P))
    os << "<circle cx=\"" << X(p.x) << "\" cy=\"" << Y(p.y) << "\" r=\"5\" fill=\"#1f4e8c\"/>\n";
  os << "<circle cx=\"" << X(0) << "\" cy=\"" << Y(0) << "\" r=\"6\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n";
  os << "</svg>\n";
  return os.str();
}

// One dual graph per singular fibre, nodes on a circle, labeled by type
// and location. Component 0 is drawn filled.
inline std::string svg_fibres(const FibreConfiguration& c, const std::string& title) {
  const int cell = 160, r = 50;
  std::vector<std::pair<KodairaType, std::string>> fibres;
  for (const auto& e : c.entries)
    for (int k = 0; k < e.count; ++k) fibres.push_back({e.type, e.where.to_string()});
  int w = cell * static_cast<int>(std::max<std::size_t>(1, fibres.size())), h = cell + 50;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
     << ' ' << h << "\">\n";
  os << "<text x=\"10\" y=\"18\" font-family=\"sans-serif\" font-size=\"14\">" << detail::svg_escape(title)
     << "</text>\n";
  for (std::size_t f = 0; f < fibres.size(); ++f) {
    const auto& [t, where] = fibres[f];
    int nodes = 0;
    auto edges = detail::fibre_graph(t, nodes);
    double cx = cell * (f + 0.5), cy = 30 + cell / 2.0;
    auto px = [&](int i) { return cx + (nodes == 1 ? 0 : r * std::sin(2 * std::numbers::pi * i / nodes)); };
    auto py = [&](int i) { return cy - (nodes == 1 ? 0 : r * std::cos(2 * std::numbers::pi * i / nodes)); };
    os << "<g>\n";
    for (auto [a, b] : edges)
      os << "<line x1=\"" << px(a) << "\" y1=\"" << py(a) << "\" x2=\"" << px(b) << "\" y2=\"" << py(b)
         << "\" stroke=\"#444\" stroke-width=\"2\"/>\n";
    if (t.kind == KodairaKind::I && t.n == 1)
      os << "<circle cx=\"" << cx << "\" cy=\"" << cy - 14 << "\" r=\"14\" fill=\"none\" stroke=\"#444\" stroke-width=\"2\"/>\n";
    for (int i = 0; i < nodes; ++i)
      os << "<circle cx=\"" << px(i) << "\" cy=\"" << py(i) << "\" r=\"6\" fill=\"" << (i == 0 ? "#1f4e8c" : "#fff")
         << "\" stroke=\"#1f4e8c\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << cx << "\" y=\"" << cy + r + 30
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
       << detail::svg_escape(t.name() + " @ " + where) << "</text>\n";
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace reflexo

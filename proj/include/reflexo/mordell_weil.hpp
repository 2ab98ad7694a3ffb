#pragma once

#include "fibration.hpp"
#include "polygon.hpp"

#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace reflexo {

struct SectionData {
  int position = 0;  // component of the fibre at infinity
  bool is_zero_section = false;
};

// Sections sit at the vertices of the boundary walk of the dual polygon
// (gaps = edge lengths of the dual). The zero section is placed right after
// the shortest gap; remaining ties go to the lexicographically least list.
inline std::vector<SectionData> section_positions(const Polygon& P) {
  Polygon D = polar_dual(P);
  std::vector<int> gaps;
  for (const auto& e : edges(D)) gaps.push_back(static_cast<int>(e.lattice_length));
  const int k = static_cast<int>(gaps.size());
  std::vector<int> best;
  int best_last = 0;
  for (int dir : {1, -1})
    for (int start = 0; start < k; ++start) {
      std::vector<int> pos{0};
      int acc = 0, last = 0;
      for (int i = 0; i < k; ++i) {
        int g = dir == 1 ? gaps[(start + i) % k] : gaps[((start - 1 - i) % k + k) % k];
        acc += g;
        if (i + 1 < k)
          pos.push_back(acc);
        else
          last = g;
      }
      if (best.empty() || last < best_last || (last == best_last && pos < best)) best = pos, best_last = last;
    }
  std::vector<SectionData> out;
  for (int p : best) out.push_back({p, p == 0});
  return out;
}

inline Rational contribution(int n, int i, int j) {
  if (n <= 0 || i < 0 || j < 0 || i >= n || j >= n) throw std::invalid_argument("component index out of range");
  if (i > j) std::swap(i, j);
  return make_rational(static_cast<long>(i) * (n - j), n);
}

using RationalMatrix = std::vector<std::vector<Rational>>;

inline RationalMatrix height_matrix(const Polygon& P, const FibreConfiguration& config) {
  for (std::size_t k = 1; k < config.entries.size(); ++k)
    if (config.entries[k].type.r() > 0) throw std::domain_error("section/component incidence unknown");
  int m = config.entries.front().type.n;
  std::vector<int> pos;
  for (const auto& s : section_positions(P))
    if (!s.is_zero_section) pos.push_back(s.position);
  RationalMatrix H(pos.size(), std::vector<Rational>(pos.size()));
  for (std::size_t a = 0; a < pos.size(); ++a)
    for (std::size_t b = 0; b < pos.size(); ++b)
      H[a][b] = (a == b ? Rational(2) : Rational(1)) - contribution(m, pos[a], pos[b]);
  return H;
}

inline int matrix_rank(RationalMatrix A) {
  int rank = 0;
  std::size_t cols = A.empty() ? 0 : A[0].size();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(A.size()); ++c) {
    std::size_t piv = rank;
    while (piv < A.size() && is_zero(A[piv][c])) ++piv;
    if (piv == A.size()) continue;
    std::swap(A[rank], A[piv]);
    for (std::size_t i = rank + 1; i < A.size(); ++i) {
      Rational f = A[i][c] / A[rank][c];
      for (std::size_t k = c; k < cols; ++k) A[i][k] -= f * A[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline int shioda_tate_rank(const FibreConfiguration& config) {
  int r = config.r_sum();
  if (r > 8) throw std::domain_error("fibre components exceed the rank of the Neron-Severi lattice");
  return 8 - r;
}

namespace detail {

inline Integer bareiss_det(std::vector<std::vector<Integer>> A) {
  const std::size_t n = A.size();
  if (n == 0) return 1;
  Integer prev = 1, sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && A[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(A[k], A[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev;
    prev = A[k][k];
  }
  return sign * A[n - 1][n - 1];
}

// Dual graph of the full fibre (component 0 meets the zero section).
inline std::vector<std::pair<int, int>> fibre_graph(const KodairaType& t, int& nodes) {
  std::vector<std::pair<int, int>> e;
  auto chain = [&](int from, int len) {
    for (int i = 0; i + 1 < len; ++i) e.push_back({from + i, from + i + 1});
  };
  switch (t.kind) {
    case KodairaKind::I:
      nodes = std::max(1, t.n);
      if (t.n >= 2) {
        chain(0, t.n);
        if (t.n >= 3) e.push_back({t.n - 1, 0});
      }
      break;
    case KodairaKind::II: nodes = 1; break;
    case KodairaKind::III: nodes = 2; e = {{0, 1}}; break;  // tangent pair
    case KodairaKind::IV: nodes = 3; e = {{0, 1}, {1, 2}, {0, 2}}; break;  // concurrent lines
    case KodairaKind::Istar: {
      // leaves 0, 1 on c_0; chain c_0 .. c_n at 2 .. n+2; leaves n+3, n+4 on c_n
      int n = t.n;
      nodes = n + 5;
      chain(2, n + 1);
      e.push_back({0, 2});
      e.push_back({1, 2});
      e.push_back({n + 3, n + 2});
      e.push_back({n + 4, n + 2});
      break;
    }
    case KodairaKind::IVstar:
      // center 6, arms 0-3-6, 1-4-6, 2-5-6
      nodes = 7;
      e = {{0, 3}, {3, 6}, {1, 4}, {4, 6}, {2, 5}, {5, 6}};
      break;
    case KodairaKind::IIIstar:
      // chain 0-1-2-3-4-5-6, leaf 7 on 3
      nodes = 8;
      chain(0, 7);
      e.push_back({7, 3});
      break;
    case KodairaKind::IIstar:
      // chain 0-1-...-7, leaf 8 on 5
      nodes = 9;
      chain(0, 8);
      e.push_back({8, 5});
      break;
  }
  return e;
}

}  // namespace detail

// Intersection matrix of the non-identity components, negated to be
// positive definite.
inline std::vector<std::vector<Integer>> fibre_root_matrix(const KodairaType& t) {
  int nodes = 0;
  auto e = detail::fibre_graph(t, nodes);
  if (nodes <= 1) return {};
  std::vector<std::vector<Integer>> M(nodes - 1, std::vector<Integer>(nodes - 1, 0));
  for (int i = 1; i < nodes; ++i) M[i - 1][i - 1] = 2;
  for (auto [a, b] : e) {
    if (a == 0 || b == 0) continue;
    M[a - 1][b - 1] -= 1;
    M[b - 1][a - 1] -= 1;
  }
  return M;
}

inline Integer fibre_lattice_determinant(const KodairaType& t) {
  auto M = fibre_root_matrix(t);
  if (M.empty()) return 1;
  return detail::bareiss_det(M);
}

struct MWReport {
  int rank = 0;
  int torsion_order = 1;
  int torsion_lower = 1, torsion_upper = 1;
  std::string group;  // "Z/3", "Z", "Z^2 + Z/2", "0"
  Integer det_trivial_lattice = 1;
  std::vector<int> positions;
  std::optional<RationalMatrix> heights;
};

class torsion_error : public std::runtime_error {
 public:
  torsion_error(int lo, int hi)
      : std::runtime_error("torsion undetermined (lower " + std::to_string(lo) + ", upper " + std::to_string(hi) + ")"),
        lower(lo),
        upper(hi) {}
  int lower, upper;
};

inline std::string group_name(int rank, int torsion) {
  std::string s;
  if (rank == 1) s = "Z";
  if (rank > 1) s = "Z^" + std::to_string(rank);
  if (torsion > 1) s += (s.empty() ? "" : " + ") + std::string("Z/") + std::to_string(torsion);
  return s.empty() ? "0" : s;
}

inline int cyclic_order(int m, int p) { return m / std::gcd(m, p); }

inline MWReport mw_group(const Polygon& P, const FibreConfiguration& config) {
  MWReport r;
  r.rank = shioda_tate_rank(config);
  const int m = config.entries.front().type.n;
  for (const auto& s : section_positions(P)) r.positions.push_back(s.position);
  for (const auto& t : config.types()) r.det_trivial_lattice *= fibre_lattice_determinant(t);
  int upper = 1;
  for (int n = 1; Integer(n) * n <= r.det_trivial_lattice; ++n)
    if (r.det_trivial_lattice % (Integer(n) * n) == 0) upper = n;
  r.torsion_upper = upper;
  try {
    r.heights = height_matrix(P, config);
  } catch (const std::domain_error&) {
  }
  int g = m;
  if (r.rank == 0) {
    for (int p : r.positions) g = std::gcd(g, p);
  } else if (r.heights) {
    for (std::size_t i = 0, k = 0; i < r.positions.size(); ++i) {
      if (r.positions[i] == 0) continue;
      if (is_zero((*r.heights)[k][k])) g = std::gcd(g, r.positions[i]);
      ++k;
    }
  } else if (upper > 1) {
    throw torsion_error(1, upper);
  }
  r.torsion_lower = m / g;
  if (r.torsion_lower > upper || (r.rank == 0 && r.torsion_lower != upper))
    throw torsion_error(r.torsion_lower, upper);
  r.torsion_order = r.torsion_lower;
  r.group = group_name(r.rank, r.torsion_order);
  return r;
}

// ---- Miranda's identities for a torsion section ----

struct ComponentHit {
  int fibre_size = 1;  // m_v of I_{m_v}
  int component = 0;   // m_j(v)
};

struct MirandaCheck {
  Rational first_sum;   // sum m_j (m_v - m_j) / m_v, expected 2
  long second_sum = 0;  // sum of m_j normalised to <= m_v / 2, expected 4 or 3
  bool first = false, second = false;
};

inline MirandaCheck miranda_identities(const FibreConfiguration& config, int order,
                                       const std::vector<ComponentHit>& hits) {
  for (const auto& e : config.entries)
    if (e.type.kind != KodairaKind::I) throw std::domain_error("semistable only");
  MirandaCheck c;
  for (const auto& h : hits) {
    c.first_sum += make_rational(static_cast<long>(h.component) * (h.fibre_size - h.component), h.fibre_size);
    c.second_sum += std::min(h.component, h.fibre_size - h.component);
  }
  c.first = c.first_sum == 2;
  c.second = c.second_sum == (order == 2 ? 4 : 3);
  return c;
}

// Component assignments on the finite reducible fibres satisfying both
// identities, given the component hit on the fibre at infinity.
inline std::vector<std::vector<ComponentHit>> miranda_assignments(const FibreConfiguration& config, int order,
                                                                  int infinity_component) {
  std::vector<int> sizes;
  for (std::size_t k = 1; k < config.entries.size(); ++k)
    for (int c = 0; c < config.entries[k].count; ++c)
      if (config.entries[k].type.n >= 2) sizes.push_back(config.entries[k].type.n);
  std::vector<std::vector<ComponentHit>> out;
  std::vector<ComponentHit> cur{{config.entries.front().type.n, infinity_component}};
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == sizes.size()) {
      auto c = miranda_identities(config, order, cur);
      if (c.first && c.second) out.push_back(cur);
      return;
    }
    for (int j = 0; j < sizes[i]; ++j) {
      cur.push_back({sizes[i], j});
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace reflexo

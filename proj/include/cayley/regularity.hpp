#pragma once

// Regularity of triangulations of Delta^2 x Delta^{k-1} and of planar
// subdivisions of T_k, decided by the exact LP.

#include "cayley/census.hpp"
#include "cayley/minkowski.hpp"
#include "cayley/ratlp.hpp"
#include "cayley/triangulation.hpp"

#include <functional>

namespace cayley {

namespace detail {

/// Solves B X = R for a square integer B by fraction-free Gauss-Jordan.
/// Returns (common denominator > 0, numerators), or nullopt if B is singular.
inline std::optional<std::pair<std::int64_t, std::vector<std::vector<std::int64_t>>>> solve_integer(
    std::vector<std::vector<std::int64_t>> b, std::vector<std::vector<std::int64_t>> r) {
  const std::size_t n = b.size();
  const std::size_t w = r.empty() ? 0 : r[0].size();
  for (std::size_t i = 0; i < n; ++i) b[i].insert(b[i].end(), r[i].begin(), r[i].end());
  std::int64_t prev = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && b[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(b[p], b[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      for (std::size_t j = 0; j < n + w; ++j)
        if (j != c) b[i][j] = ff_update(b[i][j], b[c][c], b[i][c], b[c][j], prev);
      b[i][c] = 0;
    }
    prev = b[c][c];
  }
  // Every diagonal entry now equals the last pivot.
  std::int64_t den = b[n - 1][n - 1];
  const std::int64_t sign = den < 0 ? -1 : 1;
  std::vector<std::vector<std::int64_t>> x(n, std::vector<std::int64_t>(w));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < w; ++j) x[i][j] = sign * b[i][n + j];
  return std::pair{den * sign, x};
}

}  // namespace detail

/// One row per (simplex s, vertex p outside s) over the 3k vertex heights:
/// d h(p) - sum_v d lambda_v h(v) > 0, where p = sum lambda_v v affinely.
inline IntMatrix cayley_constraints(const Triangulation& t) {
  const int k = t.k;
  const int n = 3 * k;
  IntMatrix rows;
  for (const Simplex& s : t.simplices) {
    std::vector<char> in(n, 0);
    for (const CayleyVertex& v : s) in[vertex_id(v)] = 1;
    std::vector<int> outside;
    for (int p = 0; p < n; ++p)
      if (!in[p]) outside.push_back(p);
    // Columns of B are the homogenized vertices of s.
    const std::size_t dim = s.size();
    std::vector<std::vector<std::int64_t>> b(dim, std::vector<std::int64_t>(dim));
    std::vector<std::vector<std::int64_t>> r(dim, std::vector<std::int64_t>(outside.size()));
    for (std::size_t c = 0; c < dim; ++c) {
      const auto e = embed(s[c], k);
      for (int i = 0; i <= k; ++i) b[i][c] = e[i];
      b[k + 1][c] = 1;
    }
    for (std::size_t c = 0; c < outside.size(); ++c) {
      const auto e = embed(vertex_of(outside[c]), k);
      for (int i = 0; i <= k; ++i) r[i][c] = e[i];
      r[k + 1][c] = 1;
    }
    auto sol = detail::solve_integer(b, r);
    if (!sol) throw DomainError("degenerate simplex in triangulation");
    const auto& [den, lambda] = *sol;
    for (std::size_t c = 0; c < outside.size(); ++c) {
      std::vector<BigInt> row(n, 0);
      row[outside[c]] = den;
      for (std::size_t v = 0; v < dim; ++v) row[vertex_id(s[v])] -= lambda[v][c];
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

inline Certificate check_regular_triangulation(const Triangulation& t) {
  return strict_feasible(cayley_constraints(t), {}, static_cast<std::size_t>(3 * t.k));
}

inline Certificate check_regular_triangulation(const LabeledTiling& lt) {
  return check_regular_triangulation(to_triangulation(lt));
}

/// Lattice point ids of T_k: (x,y) with x+y <= k, row-major.
inline int lattice_point_count(int k) { return (k + 1) * (k + 2) / 2; }

struct PlanarSystem {
  IntMatrix walls;      // strict: convex bend across an edge between two cells
  IntMatrix flat;       // equal: both triangles of an edge inside one cell
};

/// For every UP/DOWN pair sharing an edge: the DOWN triangle's far corner q
/// against the plane of the UP triangle.
inline PlanarSystem planar_constraints(const Subdivision& s) {
  const int k = s.k;
  const auto map = cell_map(s);
  const int n = lattice_point_count(k);
  PlanarSystem sys;
  for (const GridCoord& u : up_cells(k))
    for (Dir edge : {Dir::Hyp, Dir::E, Dir::N}) {
      const GridCoord d = down_across(u, edge);
      if (!in_grid(d, k)) continue;
      const auto uc = corners(u);
      std::array<int, 2> q{};
      for (auto p : corners(d))
        if (std::find(uc.begin(), uc.end(), p) == uc.end()) q = p;
      // Affine coordinates of q in the unimodular triangle uc.
      const int ax = uc[1][0] - uc[0][0], ay = uc[1][1] - uc[0][1];
      const int bx = uc[2][0] - uc[0][0], by = uc[2][1] - uc[0][1];
      const int qx = q[0] - uc[0][0], qy = q[1] - uc[0][1];
      const int det = ax * by - ay * bx;
      const int l1 = (qx * by - qy * bx) / det;
      const int l2 = (ax * qy - ay * qx) / det;
      const int l0 = 1 - l1 - l2;
      std::vector<BigInt> row(n, 0);
      row[detail::point_id(k, q[0], q[1])] += 1;
      row[detail::point_id(k, uc[0][0], uc[0][1])] -= l0;
      row[detail::point_id(k, uc[1][0], uc[1][1])] -= l1;
      row[detail::point_id(k, uc[2][0], uc[2][1])] -= l2;
      if (map[cell_index(k, u)] == map[cell_index(k, d)])
        sys.flat.push_back(std::move(row));
      else
        sys.walls.push_back(std::move(row));
    }
  return sys;
}

/// Regularity of the subdivision as a planar polyhedral subdivision; a
/// NON_REGULAR verdict here forces NON_REGULAR for the Cayley triangulation,
/// but not conversely.
inline Certificate check_regular_planar(const Subdivision& s) {
  const PlanarSystem sys = planar_constraints(s);
  return strict_feasible(sys.walls, sys.flat, static_cast<std::size_t>(lattice_point_count(s.k)));
}

inline Certificate check_regular_planar(const Tiling& t) { return check_regular_planar(subdivision_of(t)); }

inline constexpr std::size_t kDefaultLpBudget = 100'000;

struct RegularitySweep {
  int k = 1;
  std::uint64_t regular = 0;
  std::uint64_t non_regular = 0;
  std::uint64_t lps = 0;
  bool complete = true;
  std::vector<LabeledTiling> witnesses;  // non-regular tilings, up to the kept limit
};

/// One LP per tiling (default labels): the S_k action permutes heights, so
/// every labeling of a tiling shares its verdict.
inline RegularitySweep regularity_sweep(int k, std::size_t max_lps = kDefaultLpBudget,
                                        std::size_t keep_witnesses = 16,
                                        const std::function<void(const LabeledTiling&, const Certificate&)>& on_result = {}) {
  RegularitySweep out;
  out.k = k;
  for_each_tiling(k, [&](const Tiling& t) {
    if (out.lps >= max_lps) {
      out.complete = false;
      return false;
    }
    const LabeledTiling lt = with_default_labels(t);
    const Certificate c = check_regular_triangulation(lt);
    ++out.lps;
    if (c.regular()) {
      ++out.regular;
    } else {
      ++out.non_regular;
      if (out.witnesses.size() < keep_witnesses) out.witnesses.push_back(lt);
    }
    if (on_result) on_result(lt, c);
    return true;
  });
  return out;
}

}  // namespace cayley

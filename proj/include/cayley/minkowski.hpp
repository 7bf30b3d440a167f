#pragma once

// Minkowski cells of kΔ², zones and mixed-subdivision labelings.
//
// A convex union of unit triangles is a possibly degenerate hexagon
//   x0 <= x <= x1,  y0 <= y <= y1,  s0 <= x + y <= s1
// and a face of the unit triangle a = (0,0), b = (1,0), c = (0,1) is one of
// the seven nonempty vertex subsets, stored as a bitmask (a = 1, b = 2, c = 4).

#include "cayley/trigrid.hpp"

#include <json.hpp>

#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace cayley {

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotDecomposable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotLabelable : public std::runtime_error {
 public:
  NotLabelable(int cell, const std::string& why)
      : std::runtime_error("cell " + std::to_string(cell) + " cannot be labeled: " + why),
        cell_(cell) {}
  int cell() const { return cell_; }

 private:
  int cell_;
};

// ---------------------------------------------------------------------------
// Summands

using Summand = std::uint8_t;
inline constexpr Summand kA = 1, kB = 2, kC = 4;
inline constexpr Summand kAB = kA | kB, kBC = kB | kC, kCA = kC | kA, kABC = 7;

inline int summand_dim(Summand s) { return std::popcount(static_cast<unsigned>(s)) - 1; }

inline std::string summand_name(Summand s) {
  switch (s) {
    case kA: return "a";
    case kB: return "b";
    case kC: return "c";
    case kAB: return "ab";
    case kBC: return "bc";
    case kCA: return "ca";
    case kABC: return "abc";
  }
  throw DomainError("not a face of the triangle");
}

/// Accepts the letters a, b, c in any order ("ac" and "ca" are the same face).
inline std::optional<Summand> parse_summand(std::string_view text) {
  Summand s = 0;
  for (char ch : text) {
    if (ch < 'a' || ch > 'c') return std::nullopt;
    const Summand bit = static_cast<Summand>(1u << (ch - 'a'));
    if (s & bit) return std::nullopt;
    s |= bit;
  }
  if (s == 0) return std::nullopt;
  return s;
}

/// Summand of a zone arm, keyed by the edge type that the arm crosses.
inline Summand arm_summand(Dir edge) {
  switch (edge) {
    case Dir::N: return kAB;   // horizontal edges, heading for side ab
    case Dir::E: return kCA;   // vertical edges, heading for side ca
    case Dir::Hyp: return kBC;  // diagonal edges, heading for side bc
  }
  return kABC;
}

// ---------------------------------------------------------------------------
// Hexagons

struct Hex {
  int x0 = 0, x1 = -1, y0 = 0, y1 = -1, s0 = 0, s1 = -1;

  static Hex empty_hex() { return {}; }

  static Hex point(int x, int y) { return {x, x, y, y, x + y, x + y}; }

  /// Smallest hexagon containing the given lattice points.
  template <class Points>
  static Hex hull(const Points& pts) {
    Hex h{INT32_MAX, INT32_MIN, INT32_MAX, INT32_MIN, INT32_MAX, INT32_MIN};
    bool any = false;
    for (const auto& p : pts) {
      any = true;
      h.x0 = std::min(h.x0, p[0]);
      h.x1 = std::max(h.x1, p[0]);
      h.y0 = std::min(h.y0, p[1]);
      h.y1 = std::max(h.y1, p[1]);
      h.s0 = std::min(h.s0, p[0] + p[1]);
      h.s1 = std::max(h.s1, p[0] + p[1]);
    }
    return any ? h : empty_hex();
  }

  bool empty() const { return x0 > x1 || y0 > y1 || s0 > s1; }

  /// Makes every bound attained, or returns the canonical empty hexagon.
  Hex tightened() const {
    Hex h = *this;
    for (int iter = 0; iter < 16; ++iter) {
      if (h.empty()) return empty_hex();
      const Hex before = h;
      h.x0 = std::max(h.x0, h.s0 - h.y1);
      h.x1 = std::min(h.x1, h.s1 - h.y0);
      h.y0 = std::max(h.y0, h.s0 - h.x1);
      h.y1 = std::min(h.y1, h.s1 - h.x0);
      h.s0 = std::max(h.s0, h.x0 + h.y0);
      h.s1 = std::min(h.s1, h.x1 + h.y1);
      if (h == before) break;
    }
    return h.empty() ? empty_hex() : h;
  }

  bool contains(int x, int y) const {
    return x0 <= x && x <= x1 && y0 <= y && y <= y1 && s0 <= x + y && x + y <= s1;
  }

  bool contains(const GridCoord& c) const {
    for (auto [x, y] : corners(c))
      if (!contains(x, y)) return false;
    return true;
  }

  /// 2 for a polygon, 1 for a segment, 0 for a point, -1 when empty.
  int dimension() const {
    const Hex h = tightened();
    if (h.empty()) return -1;
    if (h.x0 < h.x1 && h.y0 < h.y1 && h.s0 < h.s1) return 2;
    return h.x0 == h.x1 && h.y0 == h.y1 ? 0 : 1;
  }

  /// Unit triangles inside, row-major.
  std::vector<GridCoord> cells() const {
    std::vector<GridCoord> out;
    if (empty()) return out;
    for (int y = y0; y < y1; ++y)
      for (int x = x0; x < x1; ++x) {
        if (contains(up(x, y))) out.push_back(up(x, y));
        if (contains(down(x, y))) out.push_back(down(x, y));
      }
    return out;
  }

  /// Face minimising one of the six edge normals: 0 bottom, 1 top, 2 left,
  /// 3 right, 4 lower diagonal, 5 upper diagonal.
  Hex face(int side) const {
    Hex h = tightened();
    if (h.empty()) return h;
    switch (side) {
      case 0: h.y1 = h.y0; break;
      case 1: h.y0 = h.y1; break;
      case 2: h.x1 = h.x0; break;
      case 3: h.x0 = h.x1; break;
      case 4: h.s1 = h.s0; break;
      case 5: h.s0 = h.s1; break;
    }
    return h.tightened();
  }

  friend bool operator==(const Hex&, const Hex&) = default;

  /// Minkowski sum (exact for tightened operands).
  friend Hex operator+(const Hex& p, const Hex& q) {
    if (p.empty() || q.empty()) return empty_hex();
    return {p.x0 + q.x0, p.x1 + q.x1, p.y0 + q.y0, p.y1 + q.y1, p.s0 + q.s0, p.s1 + q.s1};
  }

  friend Hex intersect(const Hex& p, const Hex& q) {
    return Hex{std::max(p.x0, q.x0), std::min(p.x1, q.x1), std::max(p.y0, q.y0),
               std::min(p.y1, q.y1), std::max(p.s0, q.s0), std::min(p.s1, q.s1)}
        .tightened();
  }
};

/// True when f is a (nonempty) face of the polygon p, including p itself.
inline bool is_face_of(const Hex& f, const Hex& p) {
  const Hex ft = f.tightened(), pt = p.tightened();
  if (ft.empty()) return false;
  if (ft == pt) return true;
  for (int i = 0; i < 6; ++i) {
    const Hex e = pt.face(i);
    if (ft == e) return true;
    for (int j = 0; j < 6; ++j)
      if (ft == e.face(j)) return true;
  }
  return false;
}

inline Hex face_hex(Summand s) {
  std::vector<std::array<int, 2>> pts;
  if (s & kA) pts.push_back({0, 0});
  if (s & kB) pts.push_back({1, 0});
  if (s & kC) pts.push_back({0, 1});
  return Hex::hull(pts);
}

inline Hex minkowski_hex(std::span<const Summand> summands) {
  Hex h = Hex::point(0, 0);
  for (Summand s : summands) h = h + face_hex(s);
  return h;
}

// ---------------------------------------------------------------------------
// Regions

/// A set of unit triangles, kept sorted and duplicate-free.
using Region = std::vector<GridCoord>;

inline Region make_region(std::vector<GridCoord> cells) {
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

inline bool region_contains(const Region& r, const GridCoord& c) {
  return std::binary_search(r.begin(), r.end(), c);
}

/// #UP - #DOWN.
inline int excess(const Region& r) {
  int e = 0;
  for (const GridCoord& c : r) e += c.orient == Orient::Up ? 1 : -1;
  return e;
}

inline Hex hull_of(const Region& r) {
  std::vector<std::array<int, 2>> pts;
  for (const GridCoord& c : r)
    for (auto p : corners(c)) pts.push_back(p);
  return Hex::hull(pts);
}

/// The hexagon of a convex region; ShapeError when the region is empty or
/// not the full set of unit triangles inside its hull.
inline Hex region_hex(const Region& r) {
  if (r.empty()) throw ShapeError("empty region");
  const Hex h = hull_of(r);
  if (h.cells() != r) throw ShapeError("region is not a convex union of unit triangles");
  return h;
}

inline bool is_convex(const Region& r) {
  return !r.empty() && hull_of(r).cells() == r;
}

/// Edge neighbours of a unit triangle (possibly outside T_k).
inline std::array<GridCoord, 3> neighbours(const GridCoord& c) {
  if (c.orient == Orient::Up) return {down(c.x, c.y), down(c.x - 1, c.y), down(c.x, c.y - 1)};
  return {up(c.x, c.y), up(c.x + 1, c.y), up(c.x, c.y + 1)};
}

inline bool is_connected(const Region& r) {
  if (r.empty()) return false;
  std::vector<char> seen(r.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (const GridCoord& n : neighbours(r[i])) {
      auto it = std::lower_bound(r.begin(), r.end(), n);
      if (it == r.end() || *it != n) continue;
      const auto j = static_cast<std::size_t>(it - r.begin());
      if (!seen[j]) {
        seen[j] = 1;
        ++count;
        stack.push_back(j);
      }
    }
  }
  return count == r.size();
}

// ---------------------------------------------------------------------------
// Face decomposition

struct SideLengths {
  int bottom, top, left, right, diag_low, diag_high;
};

inline SideLengths side_lengths(const Hex& hex) {
  const Hex h = hex.tightened();
  return {std::min(h.x1, h.s1 - h.y0) - std::max(h.x0, h.s0 - h.y0),
          std::min(h.x1, h.s1 - h.y1) - std::max(h.x0, h.s0 - h.y1),
          std::min(h.y1, h.s1 - h.x0) - std::max(h.y0, h.s0 - h.x0),
          std::min(h.y1, h.s1 - h.x1) - std::max(h.y0, h.s0 - h.x1),
          std::min(h.x1, h.s0 - h.y0) - std::max(h.x0, h.s0 - h.y1),
          std::min(h.x1, h.s1 - h.y0) - std::max(h.x0, h.s1 - h.y1)};
}

/// e copies of abc, and ab / bc / ca edge counts. b and c count the vertex
/// summands {b} and {c}, which fix the cell's position; the number of {a}
/// summands is whatever remains out of k.
struct FaceDecomposition {
  int e = 0, ab = 0, bc = 0, ca = 0;
  int b = 0, c = 0;

  int a(int k) const { return k - e - ab - bc - ca - b - c; }

  /// The k summands sorted by mask, or DomainError if the cell needs more.
  std::vector<Summand> summands(int k) const {
    if (a(k) < 0) throw DomainError("cell does not fit in T_k");
    std::vector<Summand> out;
    out.insert(out.end(), a(k), kA);
    out.insert(out.end(), b, kB);
    out.insert(out.end(), ab, kAB);
    out.insert(out.end(), c, kC);
    out.insert(out.end(), ca, kCA);
    out.insert(out.end(), bc, kBC);
    out.insert(out.end(), e, kABC);
    return out;
  }

  friend bool operator==(const FaceDecomposition&, const FaceDecomposition&) = default;
};

inline FaceDecomposition decompose_cell(const Region& region) {
  const Hex h = region_hex(region);
  const SideLengths s = side_lengths(h);
  const int e = s.bottom - s.top;
  if (e < 0) throw NotDecomposable("longer side opposite an outer normal of the unit triangle");
  return {e, s.top, s.diag_low, s.right, h.x0, h.y0};
}

/// Conditions for a region to be a Minkowski cell, each evaluated independently.
struct MinkowskiCheck {
  bool sum_of_faces = false;  // (1) equals a Minkowski sum of faces
  bool tileable = false;      // (2) tiled by lozenges and UP triangles
  bool enough_up = false;     // (3) #UP >= #DOWN
  bool sides = false;         // (4) side-length inequalities

  bool agree() const {
    return sum_of_faces == tileable && tileable == enough_up && enough_up == sides;
  }
  explicit operator bool() const { return sum_of_faces && tileable && enough_up && sides; }
};

namespace detail {

/// Tries to match every DOWN triangle of the region to an adjacent UP one.
inline bool has_down_matching(const Region& r) {
  std::vector<int> downs, ups;
  std::map<GridCoord, int> up_id;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i].orient == Orient::Up) {
      up_id[r[i]] = static_cast<int>(ups.size());
      ups.push_back(static_cast<int>(i));
    } else {
      downs.push_back(static_cast<int>(i));
    }
  }
  std::vector<std::vector<int>> adj(downs.size());
  for (std::size_t d = 0; d < downs.size(); ++d)
    for (const GridCoord& n : neighbours(r[downs[d]]))
      if (auto it = up_id.find(n); it != up_id.end()) adj[d].push_back(it->second);
  std::vector<int> owner(ups.size(), -1);
  std::vector<char> visited;
  std::function<bool(int)> augment = [&](int d) {
    for (int u : adj[d]) {
      if (visited[u]) continue;
      visited[u] = 1;
      if (owner[u] < 0 || augment(owner[u])) {
        owner[u] = d;
        return true;
      }
    }
    return false;
  };
  for (std::size_t d = 0; d < downs.size(); ++d) {
    visited.assign(ups.size(), 0);
    if (!augment(static_cast<int>(d))) return false;
  }
  return true;
}

}  // namespace detail

inline MinkowskiCheck is_minkowski_cell(const Region& region) {
  const Hex h = region_hex(region);
  MinkowskiCheck m;
  const SideLengths s = side_lengths(h);
  m.sides = s.bottom >= s.top && s.left >= s.right && s.diag_high >= s.diag_low;
  m.enough_up = excess(region) >= 0;
  m.tileable = detail::has_down_matching(region);
  if (m.sides) {
    const FaceDecomposition f = decompose_cell(region);
    const int k = h.s1;
    m.sum_of_faces = minkowski_hex(f.summands(k)).tightened() == h.tightened();
  }
  return m;
}

// ---------------------------------------------------------------------------
// Subdivisions

/// A partition of T_k's unit triangles into edge-connected cells.
struct Subdivision {
  int k = 1;
  std::vector<Region> cells;
};

/// For every unit triangle (cell_index order), the cell holding it.
/// MalformedInput unless the cells partition T_k into connected pieces.
inline std::vector<int> cell_map(const Subdivision& s) {
  if (s.k < 1) throw DomainError("k must be >= 1");
  std::vector<int> map(static_cast<std::size_t>(s.k) * s.k, -1);
  for (std::size_t i = 0; i < s.cells.size(); ++i) {
    if (!is_connected(s.cells[i]))
      throw MalformedInput("cell " + std::to_string(i) + " is empty or not edge-connected");
    for (const GridCoord& c : s.cells[i]) {
      if (!in_grid(c, s.k)) throw MalformedInput(to_string(c) + " outside T_k");
      int& slot = map[cell_index(s.k, c)];
      if (slot >= 0) throw MalformedInput(to_string(c) + " belongs to two cells");
      slot = static_cast<int>(i);
    }
  }
  for (const GridCoord& c : all_cells(s.k))
    if (map[cell_index(s.k, c)] < 0) throw MalformedInput(to_string(c) + " belongs to no cell");
  return map;
}

inline void sort_cells(std::vector<Region>& cells) {
  std::sort(cells.begin(), cells.end(), [](const Region& p, const Region& q) { return p[0] < q[0]; });
}

/// Lozenges and free triangles as cells, ordered by their first triangle.
inline Subdivision subdivision_of(const Tiling& t) {
  Subdivision s{t.k(), {}};
  for (const GridCoord& d : down_cells(t.k())) s.cells.push_back(make_region({d, t.partner(d)}));
  for (const GridCoord& u : free_triangles(t)) s.cells.push_back({u});
  sort_cells(s.cells);
  return s;
}

inline Subdivision trivial_subdivision(int k) {
  return Subdivision{k, {make_region(all_cells(k))}};
}

/// Cells are merged into one wherever `group` gives the same id.
inline Subdivision coarsen(const Subdivision& s, const std::vector<int>& group) {
  std::map<int, Region> merged;
  for (std::size_t i = 0; i < s.cells.size(); ++i) {
    Region& r = merged[group[i]];
    r.insert(r.end(), s.cells[i].begin(), s.cells[i].end());
  }
  Subdivision out{s.k, {}};
  for (auto& [id, r] : merged) out.cells.push_back(make_region(std::move(r)));
  sort_cells(out.cells);
  return out;
}

// ---------------------------------------------------------------------------
// Refinements

/// Calls fn(dirs) for every lozenge tiling of the region, where dirs[i]
/// is the direction of the i-th DOWN triangle of the region.
template <class Fn>
void for_each_region_tiling(const Region& r, Fn&& fn) {
  std::vector<GridCoord> downs;
  for (const GridCoord& c : r)
    if (c.orient == Orient::Down) downs.push_back(c);
  std::set<GridCoord> used;
  std::vector<Dir> dirs(downs.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == downs.size()) {
      fn(std::as_const(dirs));
      return;
    }
    for (Dir d : {Dir::Hyp, Dir::E, Dir::N}) {
      const GridCoord u = partner_of(downs[i], d);
      if (!region_contains(r, u) || used.count(u)) continue;
      used.insert(u);
      dirs[i] = d;
      rec(i + 1);
      used.erase(u);
    }
  };
  rec(0);
}

/// Calls fn(tiling) for every tiling refining s (each cell tiled on its own).
template <class Fn>
void for_each_refinement(const Subdivision& s, Fn&& fn) {
  cell_map(s);
  std::vector<std::vector<std::vector<Dir>>> options(s.cells.size());
  for (std::size_t i = 0; i < s.cells.size(); ++i) {
    for_each_region_tiling(s.cells[i], [&](const std::vector<Dir>& d) { options[i].push_back(d); });
    if (options[i].empty())
      throw NotLabelable(static_cast<int>(i), "no lozenge tiling of this cell exists");
  }
  std::vector<Dir> match(down_count(s.k), Dir::Hyp);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == s.cells.size()) {
      fn(Tiling(s.k, match));
      return;
    }
    for (const auto& dirs : options[i]) {
      std::size_t j = 0;
      for (const GridCoord& c : s.cells[i])
        if (c.orient == Orient::Down) match[down_index(s.k, c)] = dirs[j++];
      rec(i + 1);
    }
  };
  rec(0);
}

inline std::vector<Tiling> refinements(const Subdivision& s) {
  std::vector<Tiling> out;
  for_each_refinement(s, [&](const Tiling& t) { out.push_back(t); });
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Mixed subdivisions

struct MixedCell {
  Region support;
  std::vector<Summand> summands;  // summands[i-1] is the i-th summand

  friend bool operator==(const MixedCell&, const MixedCell&) = default;
};

struct MixedSubdivision {
  int k = 1;
  std::vector<MixedCell> cells;
  /// Cells whose arm-walk and region-rule classifications disagree.
  std::vector<std::string> flags;

  bool fine() const {
    return std::all_of(cells.begin(), cells.end(),
                       [](const MixedCell& c) { return c.support.size() <= 2; });
  }
};

/// nullopt when ms is a valid mixed subdivision of T_k; otherwise why not.
inline std::optional<std::string> check_mixed_subdivision(const MixedSubdivision& ms) {
  const int k = ms.k;
  std::vector<Hex> hexes;
  std::vector<int> owner(static_cast<std::size_t>(k) * k, -1);
  for (std::size_t i = 0; i < ms.cells.size(); ++i) {
    const MixedCell& c = ms.cells[i];
    const std::string name = "cell " + std::to_string(i);
    if (static_cast<int>(c.summands.size()) != k) return name + ": wrong number of summands";
    for (Summand s : c.summands)
      if (s == 0 || s > kABC) return name + ": invalid summand";
    const Hex h = minkowski_hex(c.summands).tightened();
    if (h.dimension() != 2) return name + ": summands do not span a polygon";
    if (h.cells() != c.support) return name + ": support differs from the sum of its summands";
    for (const GridCoord& t : c.support) {
      if (!in_grid(t, k)) return name + ": outside T_k";
      int& slot = owner[cell_index(k, t)];
      if (slot >= 0) return name + ": overlaps cell " + std::to_string(slot);
      slot = static_cast<int>(i);
    }
    hexes.push_back(h);
  }
  for (std::size_t t = 0; t < owner.size(); ++t)
    if (owner[t] < 0) return std::string("T_k is not covered");
  for (std::size_t i = 0; i < ms.cells.size(); ++i)
    for (std::size_t j = i + 1; j < ms.cells.size(); ++j) {
      const Hex g = intersect(hexes[i], hexes[j]);
      Hex f = Hex::point(0, 0);
      for (int l = 0; l < k && !f.empty(); ++l)
        f = f + intersect(face_hex(ms.cells[i].summands[l]), face_hex(ms.cells[j].summands[l]));
      f = f.tightened();
      const std::string pair = "cells " + std::to_string(i) + "," + std::to_string(j);
      if (!(g == f)) return pair + ": intersection is not the sum of summand intersections";
      if (!g.empty() && (!is_face_of(g, hexes[i]) || !is_face_of(g, hexes[j])))
        return pair + ": intersection is not a common face";
    }
  return std::nullopt;
}

inline bool verify_mixed_subdivision(const MixedSubdivision& ms) {
  return !check_mixed_subdivision(ms).has_value();
}

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(int p, int q) { parent[find(p)] = find(q); }
};

inline int point_id(int k, int x, int y) { return up_index(k + 1, x, y); }

/// Cells crossed by the arm that leaves `start` through its edges of the
/// given type, in walk order.
inline std::vector<int> arm_walk(const Subdivision& s, const std::vector<int>& map, int start,
                                 Dir edge) {
  std::vector<int> arm;
  std::vector<char> seen(s.cells.size(), 0);
  seen[start] = 1;
  std::vector<int> frontier{start};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int cell : frontier)
      for (const GridCoord& u : s.cells[cell]) {
        if (u.orient != Orient::Up) continue;
        const GridCoord d = down_across(u, edge);
        if (!in_grid(d, s.k)) continue;
        const int other = map[cell_index(s.k, d)];
        if (other == cell || seen[other]) continue;
        seen[other] = 1;
        arm.push_back(other);
        next.push_back(other);
      }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
  return arm;
}

}  // namespace detail

/// Default label assignment: cells in order of their first triangle, each
/// taking as many consecutive labels as its excess. Entry i-1 is the cell
/// holding label i.
inline std::vector<int> canonical_assignment(const Subdivision& s) {
  std::vector<int> order(s.cells.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int p, int q) { return s.cells[p][0] < s.cells[q][0]; });
  std::vector<int> out;
  for (int c : order)
    for (int e = excess(s.cells[c]); e > 0; --e) out.push_back(c);
  return out;
}

/// Labels every cell with its k summands by the zone construction. The
/// i-th summand of a cell is the hull of the corners whose complement
/// regions (of the i-th zone) the cell touches; disagreements with the arm
/// walk are recorded in flags.
inline MixedSubdivision label_subdivision(const Subdivision& s,
                                          std::optional<std::vector<int>> assignment = {}) {
  const int k = s.k;
  const auto map = cell_map(s);
  for (std::size_t i = 0; i < s.cells.size(); ++i) {
    MinkowskiCheck m;
    try {
      m = is_minkowski_cell(s.cells[i]);
    } catch (const ShapeError& e) {
      throw NotLabelable(static_cast<int>(i), e.what());
    }
    if (!m) throw NotLabelable(static_cast<int>(i), "more DOWN than UP triangles");
  }
  std::vector<int> assign = assignment ? *assignment : canonical_assignment(s);
  if (static_cast<int>(assign.size()) != k) throw MalformedInput("assignment must name k cells");
  std::vector<int> per_cell(s.cells.size(), 0);
  for (int c : assign) {
    if (c < 0 || c >= static_cast<int>(s.cells.size()))
      throw MalformedInput("assignment names a missing cell");
    ++per_cell[c];
  }
  for (std::size_t i = 0; i < s.cells.size(); ++i)
    if (per_cell[i] != excess(s.cells[i]))
      throw MalformedInput("cell " + std::to_string(i) + " needs as many labels as its excess");

  MixedSubdivision out{k, {}, {}};
  for (const Region& r : s.cells) out.cells.push_back({r, std::vector<Summand>(k, 0)});

  // Lattice points touched by each cell.
  std::vector<std::vector<int>> cell_points(s.cells.size());
  for (std::size_t i = 0; i < s.cells.size(); ++i) {
    std::vector<int>& pts = cell_points[i];
    for (const GridCoord& t : s.cells[i])
      for (auto [x, y] : corners(t)) pts.push_back(detail::point_id(k, x, y));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  }

  for (int label = 1; label <= k; ++label) {
    const int core = assign[label - 1];
    std::vector<Summand> walk(s.cells.size(), 0);
    std::vector<char> in_zone(s.cells.size(), 0);
    walk[core] = kABC;
    in_zone[core] = 1;
    // Every unit edge is an edge of exactly one UP triangle: id 3 * up + type.
    std::vector<char> cut(3 * static_cast<std::size_t>(up_count(k)), 0);
    auto cut_exits = [&](int cell, Dir edge) {
      for (const GridCoord& u : s.cells[cell]) {
        if (u.orient != Orient::Up) continue;
        const GridCoord d = down_across(u, edge);
        if (!in_grid(d, k) || map[cell_index(k, d)] != cell)
          cut[3 * up_index(k, u) + static_cast<int>(edge)] = 1;
      }
    };
    for (Dir edge : {Dir::N, Dir::E, Dir::Hyp}) {
      cut_exits(core, edge);
      for (int c : detail::arm_walk(s, map, core, edge)) {
        walk[c] = walk[c] ? kABC : arm_summand(edge);
        in_zone[c] = 1;
        cut_exits(c, edge);
      }
    }

    // Regions: lattice points joined by edges that no arm crosses and that
    // do not run through the inside of a zone cell.
    detail::UnionFind uf(up_count(k + 1));
    for (const GridCoord& u : up_cells(k)) {
      const int cell = map[cell_index(k, u)];
      const int x = u.x, y = u.y;
      for (Dir edge : {Dir::N, Dir::E, Dir::Hyp}) {
        if (cut[3 * up_index(k, u) + static_cast<int>(edge)]) continue;
        const GridCoord d = down_across(u, edge);
        if (in_zone[cell] && in_grid(d, k) && map[cell_index(k, d)] == cell) continue;
        switch (edge) {
          case Dir::N: uf.unite(detail::point_id(k, x, y), detail::point_id(k, x + 1, y)); break;
          case Dir::E: uf.unite(detail::point_id(k, x, y), detail::point_id(k, x, y + 1)); break;
          case Dir::Hyp:
            uf.unite(detail::point_id(k, x + 1, y), detail::point_id(k, x, y + 1));
            break;
        }
      }
    }
    const std::array<int, 3> corner_root{uf.find(detail::point_id(k, 0, 0)),
                                         uf.find(detail::point_id(k, k, 0)),
                                         uf.find(detail::point_id(k, 0, k))};
    for (std::size_t c = 0; c < s.cells.size(); ++c) {
      Summand m = 0;
      for (int p : cell_points[c]) {
        const int root = uf.find(p);
        for (int v = 0; v < 3; ++v)
          if (root == corner_root[v]) m |= static_cast<Summand>(1u << v);
      }
      out.cells[c].summands[label - 1] = m;
      const bool agrees = in_zone[c] ? m == walk[c] : summand_dim(m) == 0;
      if (m == 0 || !agrees)
        out.flags.push_back("label " + std::to_string(label) + ", cell " + std::to_string(c) +
                            ": region rule gives " + (m ? summand_name(m) : std::string("nothing")) +
                            (in_zone[c] ? ", arm walk gives " + summand_name(walk[c])
                                        : ", cell lies outside the zone"));
      if (m == 0) out.cells[c].summands[label - 1] = kA;
    }
  }
  if (auto why = check_mixed_subdivision(out)) out.flags.push_back("invalid labeling: " + *why);
  return out;
}

/// The cell assignment induced by a labeled tiling's labels.
inline std::vector<int> label_assignment(const Subdivision& s, const LabeledTiling& lt) {
  const auto map = cell_map(s);
  std::vector<int> out;
  for (const GridCoord& u : lt.labels) out.push_back(map[cell_index(s.k, u)]);
  return out;
}

/// One mixed cell per tile (lozenge or free triangle) of the tiling.
inline MixedSubdivision label_cells(const LabeledTiling& lt) {
  require_valid(lt);
  const Subdivision s = subdivision_of(lt.tiling);
  return label_subdivision(s, label_assignment(s, lt));
}

// ---------------------------------------------------------------------------
// Zones of a tiling

struct Zone {
  int label = 1;
  GridCoord core;
  /// Lozenges of each arm, as their DOWN triangle, indexed by the edge type
  /// crossed (Hyp, E, N), from the core outwards.
  std::array<std::vector<GridCoord>, 3> arms;

  const std::vector<GridCoord>& arm(Dir edge) const { return arms[static_cast<int>(edge)]; }
};

inline Zone compute_zone(const LabeledTiling& lt, int label) {
  if (label < 1 || label > lt.k()) throw DomainError("label out of range");
  Zone z;
  z.label = label;
  z.core = lt.labels[label - 1];
  for (Dir edge : {Dir::Hyp, Dir::E, Dir::N}) {
    GridCoord u = z.core;
    for (;;) {
      const GridCoord d = down_across(u, edge);
      if (!in_grid(d, lt.k())) break;
      z.arms[static_cast<int>(edge)].push_back(d);
      u = lt.tiling.partner(d);
    }
  }
  return z;
}

// ---------------------------------------------------------------------------
// Restriction and labeled refinements

/// Keeps the summands with labels in `keep` (1-based, any order; the result
/// is relabeled 1..|keep| in increasing order), merges cells that collapse
/// onto the same summand list and drops those that lose their area.
inline MixedSubdivision restrict_labels(const MixedSubdivision& ms, std::vector<int> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.empty()) throw DomainError("restriction needs at least one label");
  for (int i : keep)
    if (i < 1 || i > ms.k) throw DomainError("label out of range");
  const int k2 = static_cast<int>(keep.size());
  std::map<std::vector<Summand>, Region> merged;
  for (const MixedCell& c : ms.cells) {
    std::vector<Summand> sub;
    for (int i : keep) sub.push_back(c.summands[i - 1]);
    const Hex h = minkowski_hex(sub);
    if (h.dimension() == 2) merged.emplace(std::move(sub), h.cells());
  }
  MixedSubdivision out{k2, {}, {}};
  for (auto& [sub, support] : merged) out.cells.push_back({support, sub});
  std::sort(out.cells.begin(), out.cells.end(),
            [](const MixedCell& p, const MixedCell& q) { return p.support[0] < q.support[0]; });
  return out;
}

/// Reads a fine mixed subdivision back as a labeled tiling.
inline LabeledTiling to_labeled_tiling(const MixedSubdivision& ms) {
  std::vector<Dir> match(down_count(ms.k), Dir::Hyp);
  std::vector<GridCoord> labels(ms.k);
  std::vector<char> labeled(ms.k, 0);
  for (const MixedCell& c : ms.cells) {
    if (c.support.size() == 1 && c.support[0].orient == Orient::Up) {
      for (int i = 0; i < ms.k; ++i)
        if (c.summands[i] == kABC) {
          if (labeled[i]) throw DomainError("label used twice");
          labeled[i] = 1;
          labels[i] = c.support[0];
        }
    } else if (c.support.size() == 2 && c.support[0].orient != c.support[1].orient) {
      const GridCoord d = c.support[0].orient == Orient::Down ? c.support[0] : c.support[1];
      const GridCoord u = c.support[0].orient == Orient::Up ? c.support[0] : c.support[1];
      auto dir = dir_between(d, u);
      if (!dir) throw DomainError("cell is not a lozenge");
      match[down_index(ms.k, d)] = *dir;
    } else {
      throw DomainError("mixed subdivision is not fine");
    }
  }
  LabeledTiling lt{Tiling(ms.k, std::move(match)), std::move(labels)};
  require_valid(lt);
  return lt;
}

/// Fine cell summands contained in the coarse cell summands, label by label.
inline bool refines(const MixedSubdivision& fine, const MixedSubdivision& coarse) {
  if (fine.k != coarse.k) return false;
  std::vector<int> owner(static_cast<std::size_t>(fine.k) * fine.k, -1);
  for (std::size_t i = 0; i < coarse.cells.size(); ++i)
    for (const GridCoord& t : coarse.cells[i].support) owner[cell_index(coarse.k, t)] = static_cast<int>(i);
  for (const MixedCell& c : fine.cells) {
    const int o = owner[cell_index(fine.k, c.support[0])];
    if (o < 0) return false;
    const MixedCell& big = coarse.cells[o];
    for (const GridCoord& t : c.support)
      if (!region_contains(big.support, t)) return false;
    for (int i = 0; i < fine.k; ++i)
      if ((c.summands[i] & ~big.summands[i]) != 0) return false;
  }
  return true;
}

/// Labeled tilings whose mixed labeling refines the labeled subdivision.
inline std::vector<LabeledTiling> labeled_refinements(const MixedSubdivision& coarse) {
  Subdivision s{coarse.k, {}};
  for (const MixedCell& c : coarse.cells) s.cells.push_back(c.support);
  std::vector<LabeledTiling> out;
  for_each_refinement(s, [&](const Tiling& t) {
    // Free triangles of t inside a coarse cell take that cell's abc labels.
    std::vector<std::vector<GridCoord>> frees(s.cells.size());
    const auto map = cell_map(s);
    for (const GridCoord& u : free_triangles(t)) frees[map[cell_index(s.k, u)]].push_back(u);
    std::vector<std::vector<int>> want(s.cells.size());
    for (std::size_t c = 0; c < s.cells.size(); ++c)
      for (int i = 0; i < s.k; ++i)
        if (coarse.cells[c].summands[i] == kABC) want[c].push_back(i);
    for (std::size_t c = 0; c < s.cells.size(); ++c)
      if (frees[c].size() != want[c].size()) return;
    std::vector<GridCoord> labels(s.k);
    std::function<void(std::size_t)> rec = [&](std::size_t c) {
      if (c == s.cells.size()) {
        LabeledTiling lt{t, labels};
        if (refines(label_cells(lt), coarse)) out.push_back(lt);
        return;
      }
      auto perm = frees[c];
      do {
        for (std::size_t j = 0; j < perm.size(); ++j) labels[want[c][j]] = perm[j];
        rec(c + 1);
      } while (std::next_permutation(perm.begin(), perm.end()));
    };
    rec(0);
  });
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Documents

/// {"k":K,"cells":[{"triangles":[...],"summands":["abc","a",...]}, ...]}
/// Triangles are numbered UP cells first, then DOWN cells, each row-major.
inline std::string serialize(const MixedSubdivision& ms) {
  nlohmann::ordered_json doc;
  doc["k"] = ms.k;
  doc["cells"] = nlohmann::ordered_json::array();
  for (const MixedCell& c : ms.cells) {
    nlohmann::ordered_json cell;
    std::vector<int> tri;
    for (const GridCoord& t : c.support) tri.push_back(cell_index(ms.k, t));
    cell["triangles"] = tri;
    std::vector<std::string> names;
    for (Summand s : c.summands) names.push_back(summand_name(s));
    cell["summands"] = names;
    doc["cells"].push_back(cell);
  }
  return doc.dump();
}

inline MixedSubdivision parse_mixed_subdivision(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedInput(std::string("JSON syntax error: ") + e.what(), e.byte);
  }
  if (!doc.is_object() || !doc.contains("k") || !doc["k"].is_number_integer() ||
      !doc.contains("cells") || !doc["cells"].is_array())
    throw MalformedInput("/: expected {\"k\":..,\"cells\":[..]}");
  MixedSubdivision ms{doc["k"].get<int>(), {}, {}};
  if (ms.k < 1) throw MalformedInput("/k: must be >= 1");
  std::vector<GridCoord> by_index(static_cast<std::size_t>(ms.k) * ms.k);
  for (const GridCoord& c : all_cells(ms.k)) by_index[cell_index(ms.k, c)] = c;
  for (std::size_t i = 0; i < doc["cells"].size(); ++i) {
    const auto& cell = doc["cells"][i];
    const std::string where = "/cells/" + std::to_string(i);
    if (!cell.is_object() || !cell.contains("triangles") || !cell.contains("summands"))
      throw MalformedInput(where + ": expected triangles and summands");
    MixedCell mc;
    for (const auto& t : cell["triangles"]) {
      if (!t.is_number_integer() || t.get<int>() < 0 || t.get<int>() >= ms.k * ms.k)
        throw MalformedInput(where + "/triangles: bad triangle index");
      mc.support.push_back(by_index[t.get<int>()]);
    }
    mc.support = make_region(std::move(mc.support));
    for (const auto& name : cell["summands"]) {
      auto s = name.is_string() ? parse_summand(name.get<std::string>()) : std::nullopt;
      if (!s) throw MalformedInput(where + "/summands: not a face of the triangle");
      mc.summands.push_back(*s);
    }
    ms.cells.push_back(std::move(mc));
  }
  return ms;
}

}  // namespace cayley

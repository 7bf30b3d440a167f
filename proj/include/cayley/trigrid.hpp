#pragma once

// Triangular grid of T_k and lozenge tilings.
//
// T_k = {(x, y) : x, y >= 0, x + y <= k} with corners a = (0,0), b = (k,0),
// c = (0,k). UP(x,y) is the unit triangle (x,y),(x+1,y),(x,y+1) and
// DOWN(x,y) the unit triangle (x+1,y),(x,y+1),(x+1,y+1). A tiling assigns
// every DOWN cell the UP neighbour it forms a lozenge with:
//   Hyp -> UP(x,y)   (shared hypotenuse)
//   E   -> UP(x+1,y) (shared vertical edge)
//   N   -> UP(x,y+1) (shared horizontal edge)
// The UP cells left unmatched are the free triangles; there are always k.

#include "cayley/common.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cayley {

enum class Orient : std::uint8_t { Up = 0, Down = 1 };

/// A unit triangle of T_k. Ordered row-major: (y, x, orientation).
struct GridCoord {
  int x = 0;
  int y = 0;
  Orient orient = Orient::Up;

  friend bool operator==(const GridCoord&, const GridCoord&) = default;
  friend std::strong_ordering operator<=>(const GridCoord& p, const GridCoord& q) {
    if (auto c = p.y <=> q.y; c != 0) return c;
    if (auto c = p.x <=> q.x; c != 0) return c;
    return p.orient <=> q.orient;
  }
};

inline GridCoord up(int x, int y) { return {x, y, Orient::Up}; }
inline GridCoord down(int x, int y) { return {x, y, Orient::Down}; }

inline std::string to_string(const GridCoord& c) {
  return std::string(c.orient == Orient::Up ? "UP(" : "DOWN(") + std::to_string(c.x) + "," +
         std::to_string(c.y) + ")";
}

/// Which UP neighbour a DOWN cell is matched with. The value doubles as the
/// edge type of the shared edge: Hyp = diagonal, E = vertical, N = horizontal.
enum class Dir : std::uint8_t { Hyp = 0, E = 1, N = 2 };

inline const char* dir_name(Dir d) {
  switch (d) {
    case Dir::Hyp: return "HYP";
    case Dir::E: return "E";
    case Dir::N: return "N";
  }
  return "?";
}

inline std::optional<Dir> dir_from_name(std::string_view s) {
  if (s == "HYP") return Dir::Hyp;
  if (s == "E") return Dir::E;
  if (s == "N") return Dir::N;
  return std::nullopt;
}

inline int up_count(int k) { return k * (k + 1) / 2; }
inline int down_count(int k) { return k * (k - 1) / 2; }

inline bool in_grid(const GridCoord& c, int k) {
  if (c.x < 0 || c.y < 0) return false;
  return c.orient == Orient::Up ? c.x + c.y <= k - 1 : c.x + c.y <= k - 2;
}

/// Row-major index of an UP cell among the k(k+1)/2 UP cells.
inline int up_index(int k, int x, int y) { return y * k - y * (y - 1) / 2 + x; }
/// Row-major index of a DOWN cell among the k(k-1)/2 DOWN cells.
inline int down_index(int k, int x, int y) { return y * (k - 1) - y * (y - 1) / 2 + x; }

inline int up_index(int k, const GridCoord& c) { return up_index(k, c.x, c.y); }
inline int down_index(int k, const GridCoord& c) { return down_index(k, c.x, c.y); }

/// Index over all k^2 unit triangles: UP cells first, then DOWN cells.
inline int cell_index(int k, const GridCoord& c) {
  return c.orient == Orient::Up ? up_index(k, c) : up_count(k) + down_index(k, c);
}

inline std::vector<GridCoord> down_cells(int k) {
  std::vector<GridCoord> out;
  out.reserve(std::max(0, down_count(k)));
  for (int y = 0; y <= k - 2; ++y)
    for (int x = 0; x + y <= k - 2; ++x) out.push_back(down(x, y));
  return out;
}

inline std::vector<GridCoord> up_cells(int k) {
  std::vector<GridCoord> out;
  out.reserve(up_count(k));
  for (int y = 0; y <= k - 1; ++y)
    for (int x = 0; x + y <= k - 1; ++x) out.push_back(up(x, y));
  return out;
}

/// All unit triangles, row-major.
inline std::vector<GridCoord> all_cells(int k) {
  std::vector<GridCoord> out;
  out.reserve(k * k);
  for (int y = 0; y < k; ++y)
    for (int x = 0; x + y <= k - 1; ++x) {
      out.push_back(up(x, y));
      if (x + y <= k - 2) out.push_back(down(x, y));
    }
  return out;
}

inline GridCoord partner_of(const GridCoord& d, Dir dir) {
  switch (dir) {
    case Dir::Hyp: return up(d.x, d.y);
    case Dir::E: return up(d.x + 1, d.y);
    case Dir::N: return up(d.x, d.y + 1);
  }
  return up(d.x, d.y);
}

/// Direction from DOWN cell d to an adjacent UP cell u, if they share an edge.
inline std::optional<Dir> dir_between(const GridCoord& d, const GridCoord& u) {
  for (Dir dir : {Dir::Hyp, Dir::E, Dir::N})
    if (partner_of(d, dir) == u) return dir;
  return std::nullopt;
}

/// The DOWN cell across the edge of UP cell u of the given edge type.
/// May lie outside T_k (boundary edge).
inline GridCoord down_across(const GridCoord& u, Dir edge) {
  switch (edge) {
    case Dir::Hyp: return down(u.x, u.y);
    case Dir::E: return down(u.x - 1, u.y);
    case Dir::N: return down(u.x, u.y - 1);
  }
  return down(u.x, u.y);
}

/// Corner lattice points of a unit triangle.
inline std::array<std::array<int, 2>, 3> corners(const GridCoord& c) {
  if (c.orient == Orient::Up) return {{{c.x, c.y}, {c.x + 1, c.y}, {c.x, c.y + 1}}};
  return {{{c.x + 1, c.y}, {c.x, c.y + 1}, {c.x + 1, c.y + 1}}};
}

/// Description of the first injectivity failure in a match map.
struct Violation {
  GridCoord up_cell;
  std::vector<GridCoord> claimants;  // DOWN cells all pointing at up_cell
};

class Tiling {
 public:
  Tiling() = default;

  /// match[i] is the direction of the i-th DOWN cell in row-major order.
  Tiling(int k, std::vector<Dir> match) : k_(k), match_(std::move(match)) {
    if (k < 1) throw DomainError("tiling size must be >= 1");
    if (static_cast<int>(match_.size()) != down_count(k))
      throw MalformedInput("match map has " + std::to_string(match_.size()) +
                           " entries, expected " + std::to_string(down_count(k)));
  }

  int k() const { return k_; }
  std::span<const Dir> match() const { return match_; }
  Dir dir(int down_idx) const { return match_[down_idx]; }
  Dir dir(const GridCoord& d) const { return match_[down_index(k_, d)]; }
  void set_dir(const GridCoord& d, Dir dir) { match_[down_index(k_, d)] = dir; }

  GridCoord partner(const GridCoord& d) const { return partner_of(d, dir(d)); }

  /// For every UP cell (row-major), the DOWN index matched to it or -1.
  std::vector<int> up_owner() const {
    std::vector<int> owner(up_count(k_), -1);
    const auto downs = down_cells(k_);
    for (std::size_t i = 0; i < downs.size(); ++i) {
      const int u = up_index(k_, partner_of(downs[i], match_[i]));
      if (owner[u] < 0) owner[u] = static_cast<int>(i);
    }
    return owner;
  }

  friend bool operator==(const Tiling&, const Tiling&) = default;
  friend auto operator<=>(const Tiling& a, const Tiling& b) {
    if (auto c = a.k_ <=> b.k_; c != 0) return c;
    return std::lexicographical_compare_three_way(a.match_.begin(), a.match_.end(),
                                                  b.match_.begin(), b.match_.end());
  }

 private:
  int k_ = 1;
  std::vector<Dir> match_;
};

/// ok (nullopt) iff no UP cell is claimed by two DOWN cells.
inline std::optional<Violation> validate_tiling(const Tiling& t) {
  const int k = t.k();
  std::vector<std::vector<GridCoord>> claims(up_count(k));
  const auto downs = down_cells(k);
  for (std::size_t i = 0; i < downs.size(); ++i) {
    const GridCoord u = partner_of(downs[i], t.dir(static_cast<int>(i)));
    if (!in_grid(u, k)) throw MalformedInput(to_string(downs[i]) + " points outside T_k");
    claims[up_index(k, u)].push_back(downs[i]);
  }
  for (const GridCoord& u : up_cells(k)) {
    auto& c = claims[up_index(k, u)];
    if (c.size() > 1) return Violation{u, c};
  }
  return std::nullopt;
}

inline bool is_valid(const Tiling& t) { return !validate_tiling(t).has_value(); }

/// Free (unmatched) UP cells in row-major order. Exactly k for a valid tiling.
inline std::vector<GridCoord> free_triangles(const Tiling& t) {
  const auto owner = t.up_owner();
  std::vector<GridCoord> out;
  for (const GridCoord& u : up_cells(t.k()))
    if (owner[up_index(t.k(), u)] < 0) out.push_back(u);
  return out;
}

/// A tiling plus labels[i-1] = free triangle carrying label i.
struct LabeledTiling {
  Tiling tiling;
  std::vector<GridCoord> labels;

  int k() const { return tiling.k(); }
  friend bool operator==(const LabeledTiling&, const LabeledTiling&) = default;
  friend auto operator<=>(const LabeledTiling& a, const LabeledTiling& b) {
    if (auto c = a.tiling <=> b.tiling; c != 0) return c;
    return std::lexicographical_compare_three_way(a.labels.begin(), a.labels.end(),
                                                  b.labels.begin(), b.labels.end());
  }
};

/// Labels free triangles 1..k in row-major order.
inline LabeledTiling with_default_labels(const Tiling& t) {
  return LabeledTiling{t, free_triangles(t)};
}

inline bool labels_valid(const LabeledTiling& lt) {
  auto f = free_triangles(lt.tiling);
  auto l = lt.labels;
  std::sort(l.begin(), l.end());
  return l == f;
}

inline void require_valid(const LabeledTiling& lt) {
  if (auto v = validate_tiling(lt.tiling))
    throw MalformedInput("invalid tiling: " + to_string(v->up_cell) + " used twice");
  if (!labels_valid(lt)) throw MalformedInput("labels are not a bijection onto free triangles");
}

// ---------------------------------------------------------------------------
// Symmetries

/// Element of D3 acting on T_k by permuting barycentric coordinates
/// w = (k-x-y, x, y): coordinate j moves to position perm[j].
struct D3 {
  std::array<int, 3> perm{0, 1, 2};

  static D3 identity() { return {}; }
  static std::array<D3, 6> all() {
    return {{D3{{0, 1, 2}}, D3{{1, 2, 0}}, D3{{2, 0, 1}}, D3{{0, 2, 1}}, D3{{2, 1, 0}},
             D3{{1, 0, 2}}}};
  }
  /// Composition: (g * h) acts as h first, then g.
  friend D3 operator*(const D3& g, const D3& h) {
    D3 r;
    for (int j = 0; j < 3; ++j) r.perm[j] = g.perm[h.perm[j]];
    return r;
  }
  friend bool operator==(const D3&, const D3&) = default;

  std::array<int, 2> map_point(int k, int x, int y) const {
    const std::array<int, 3> w{k - x - y, x, y};
    std::array<int, 3> v{};
    for (int j = 0; j < 3; ++j) v[perm[j]] = w[j];
    return {v[1], v[2]};
  }

  GridCoord map_cell(int k, const GridCoord& c) const {
    int mx = k, my = k;
    for (auto [px, py] : corners(c)) {
      auto q = map_point(k, px, py);
      mx = std::min(mx, q[0]);
      my = std::min(my, q[1]);
    }
    return {mx, my, c.orient};
  }
};

inline Tiling apply_symmetry(const Tiling& t, const D3& g) {
  const int k = t.k();
  std::vector<Dir> match(down_count(k), Dir::Hyp);
  for (const GridCoord& d : down_cells(k)) {
    const GridCoord gd = g.map_cell(k, d);
    const GridCoord gu = g.map_cell(k, t.partner(d));
    match[down_index(k, gd)] = *dir_between(gd, gu);
  }
  return Tiling(k, std::move(match));
}

inline LabeledTiling apply_symmetry(const LabeledTiling& t, const D3& g) {
  LabeledTiling r{apply_symmetry(t.tiling, g), {}};
  for (const GridCoord& u : t.labels) r.labels.push_back(g.map_cell(t.k(), u));
  return r;
}

/// Permutation of labels, 1-based: the triangle labelled i gets label perm[i-1].
using LabelPermutation = std::vector<int>;

inline LabelPermutation compose(const LabelPermutation& g, const LabelPermutation& h) {
  LabelPermutation r(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) r[i] = g[h[i] - 1];
  return r;
}

inline LabeledTiling apply_symmetry(const LabeledTiling& t, const LabelPermutation& p) {
  if (static_cast<int>(p.size()) != t.k()) throw DomainError("label permutation has wrong size");
  LabeledTiling r{t.tiling, t.labels};
  for (int i = 0; i < t.k(); ++i) r.labels[p[i] - 1] = t.labels[i];
  return r;
}

enum class CanonicalMode { Bottom, Side };

/// BOTTOM: all free triangles on row y = 0. SIDE: all on the edge x = 0.
inline Tiling canonical_tiling(int k, CanonicalMode mode) {
  if (k < 1) throw DomainError("k must be >= 1");
  return Tiling(k, std::vector<Dir>(down_count(k), mode == CanonicalMode::Bottom ? Dir::N : Dir::E));
}

/// Compact canonical key: one char per DOWN cell ('h','e','n') and, when
/// labelled, '/' followed by the UP index of each label's triangle.
inline std::string key_of(const Tiling& t) {
  std::string s;
  s.reserve(t.match().size());
  for (Dir d : t.match()) s.push_back("hen"[static_cast<int>(d)]);
  return s;
}

inline std::string key_of(const LabeledTiling& t) {
  std::string s = key_of(t.tiling);
  s.push_back('/');
  for (std::size_t i = 0; i < t.labels.size(); ++i) {
    if (i) s.push_back('.');
    s += std::to_string(up_index(t.k(), t.labels[i]));
  }
  return s;
}

}  // namespace cayley

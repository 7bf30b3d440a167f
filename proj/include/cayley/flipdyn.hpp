#pragma once

// Lozenge flips, the bistellar criterion, and flip graphs.

#include "cayley/census.hpp"
#include "cayley/common.hpp"
#include "cayley/minkowski.hpp"
#include "cayley/trigrid.hpp"

#include <deque>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cayley {

enum class FlipKind : std::uint8_t { Trapezoid, Hexagon };

enum class Regime : std::uint8_t { AllLozenge, TrapezoidOnly, Bistellar };

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::AllLozenge: return "all";
    case Regime::TrapezoidOnly: return "trapezoid";
    case Regime::Bistellar: return "bistellar";
  }
  return "?";
}

inline std::optional<Regime> regime_from_name(std::string_view s) {
  if (s == "all") return Regime::AllLozenge;
  if (s == "trapezoid") return Regime::TrapezoidOnly;
  if (s == "bistellar") return Regime::Bistellar;
  return std::nullopt;
}

class StaleFlip : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The two matchings of the unit hexagon around interior lattice point
/// (x,y), as directions of DOWN(x-1,y-1), DOWN(x-1,y), DOWN(x,y-1).
inline constexpr std::array<std::array<Dir, 3>, 2> kHexagonMatchings{{
    {Dir::E, Dir::Hyp, Dir::N},
    {Dir::N, Dir::E, Dir::Hyp},
}};

inline std::array<GridCoord, 3> hexagon_downs(int x, int y) {
  return {down(x - 1, y - 1), down(x - 1, y), down(x, y - 1)};
}

/// A trapezoid flip re-matches `cell` from `from` to `to`: the free triangle
/// partner_of(cell, to) is covered and partner_of(cell, from) becomes free.
/// A hexagon flip at lattice point (x,y) switches matching `side` to the other.
struct Flip {
  FlipKind kind = FlipKind::Trapezoid;
  GridCoord cell;
  Dir from = Dir::Hyp;
  Dir to = Dir::Hyp;
  int x = 0, y = 0;
  int side = 0;

  static Flip trapezoid(const GridCoord& d, Dir from, Dir to) {
    Flip f;
    f.kind = FlipKind::Trapezoid;
    f.cell = d;
    f.from = from;
    f.to = to;
    return f;
  }
  static Flip hexagon(int x, int y, int side) {
    Flip f;
    f.kind = FlipKind::Hexagon;
    f.x = x;
    f.y = y;
    f.side = side;
    return f;
  }

  /// Trapezoid only: the free triangle before and after the flip.
  GridCoord moved_from() const { return partner_of(cell, to); }
  GridCoord moved_to() const { return partner_of(cell, from); }

  /// Edge type of the trapezoid's long side.
  Dir long_edge() const {
    for (Dir d : {Dir::Hyp, Dir::E, Dir::N})
      if (d != from && d != to) return d;
    return Dir::Hyp;
  }

  /// Triangles taking part: (triangle, DOWN, UP) or the six of the hexagon.
  std::vector<GridCoord> site() const {
    if (kind == FlipKind::Trapezoid) return {moved_from(), cell, moved_to()};
    std::vector<GridCoord> out;
    for (const GridCoord& d : hexagon_downs(x, y)) out.push_back(d);
    out.push_back(up(x, y));
    out.push_back(up(x - 1, y));
    out.push_back(up(x, y - 1));
    return out;
  }

  Flip reversed() const {
    Flip r = *this;
    if (kind == FlipKind::Trapezoid)
      std::swap(r.from, r.to);
    else
      r.side = 1 - side;
    return r;
  }

  friend bool operator==(const Flip&, const Flip&) = default;
};

inline std::string to_string(const Flip& f) {
  if (f.kind == FlipKind::Trapezoid)
    return std::string("trapezoid ") + to_string(f.cell) + " " + dir_name(f.from) + "->" +
           dir_name(f.to);
  return "hexagon (" + std::to_string(f.x) + "," + std::to_string(f.y) + ")";
}

// ---------------------------------------------------------------------------
// Arms and the bistellar criterion

/// Direction tags of the lozenges crossed from UP cell u through its edges
/// of the given type, outwards to the boundary.
inline std::vector<Dir> arm_tags(const Tiling& t, const GridCoord& u, Dir edge) {
  std::vector<Dir> out;
  GridCoord cur = u;
  for (;;) {
    const GridCoord d = down_across(cur, edge);
    if (!in_grid(d, t.k())) break;
    out.push_back(t.dir(d));
    cur = t.partner(d);
  }
  return out;
}

inline bool flip_applies(const Tiling& t, const Flip& f) {
  const int k = t.k();
  if (f.kind == FlipKind::Trapezoid) {
    if (!in_grid(f.cell, k) || f.from == f.to || t.dir(f.cell) != f.from) return false;
    const GridCoord u = f.moved_from();
    if (!in_grid(u, k)) return false;
    for (Dir e : {Dir::Hyp, Dir::E, Dir::N}) {
      const GridCoord d = down_across(u, e);
      if (in_grid(d, k) && t.partner(d) == u) return false;
    }
    return true;
  }
  if (f.x < 1 || f.y < 1 || f.x + f.y > k - 1 || f.side < 0 || f.side > 1) return false;
  const auto downs = hexagon_downs(f.x, f.y);
  for (int i = 0; i < 3; ++i)
    if (t.dir(downs[i]) != kHexagonMatchings[f.side][i]) return false;
  return true;
}

inline Tiling apply_flip(const Tiling& t, const Flip& f) {
  if (!flip_applies(t, f)) throw StaleFlip("flip does not apply: " + to_string(f));
  Tiling out = t;
  if (f.kind == FlipKind::Trapezoid) {
    out.set_dir(f.cell, f.to);
  } else {
    const auto downs = hexagon_downs(f.x, f.y);
    for (int i = 0; i < 3; ++i) out.set_dir(downs[i], kHexagonMatchings[1 - f.side][i]);
  }
  return out;
}

/// Trapezoid flips carry the moved triangle's label along.
inline LabeledTiling apply_flip(const LabeledTiling& lt, const Flip& f) {
  LabeledTiling out{apply_flip(lt.tiling, f), lt.labels};
  if (f.kind == FlipKind::Trapezoid)
    for (GridCoord& u : out.labels)
      if (u == f.moved_from()) u = f.moved_to();
  return out;
}

/// Hexagon flips always are; a trapezoid flip is iff the moved triangle's
/// arm toward the long edge is the same sequence before and after.
inline bool is_bistellar(const Tiling& t, const Flip& f) {
  if (f.kind == FlipKind::Hexagon) return true;
  const Dir e = f.long_edge();
  return arm_tags(t, f.moved_from(), e) == arm_tags(apply_flip(t, f), f.moved_to(), e);
}

inline bool is_bistellar(const LabeledTiling& lt, const Flip& f) { return is_bistellar(lt.tiling, f); }

inline std::vector<Flip> find_flips(const Tiling& t, Regime regime = Regime::AllLozenge) {
  const int k = t.k();
  std::vector<Flip> out;
  const auto owner = t.up_owner();
  for (const GridCoord& d : down_cells(k))
    for (Dir to : {Dir::Hyp, Dir::E, Dir::N}) {
      if (to == t.dir(d)) continue;
      const GridCoord u = partner_of(d, to);
      if (owner[up_index(k, u)] >= 0) continue;
      Flip f = Flip::trapezoid(d, t.dir(d), to);
      if (regime != Regime::Bistellar || is_bistellar(t, f)) out.push_back(f);
    }
  if (regime == Regime::TrapezoidOnly) return out;
  for (int y = 1; y < k; ++y)
    for (int x = 1; x + y <= k - 1; ++x)
      for (int side = 0; side < 2; ++side) {
        Flip f = Flip::hexagon(x, y, side);
        if (flip_applies(t, f)) out.push_back(f);
      }
  return out;
}

inline std::vector<Flip> find_flips(const LabeledTiling& lt, Regime regime = Regime::AllLozenge) {
  return find_flips(lt.tiling, regime);
}

namespace detail {

struct OracleItem {
  MixedCell cell;
  int owners = 0;  // bit 0: first tiling, bit 1: second
};

inline bool supports_meet(const Region& p, const Region& q) {
  auto i = p.begin();
  auto j = q.begin();
  while (i != p.end() && j != q.end()) {
    if (*i == *j) return true;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return false;
}

}  // namespace detail

/// True iff t1 and t2 are exactly the two labeled refinements of one mixed
/// subdivision: the smallest coarsening obtained by merging their differing
/// labeled cells until each merged group is a Minkowski cell.
inline bool bistellar_oracle(const LabeledTiling& t1, const LabeledTiling& t2) {
  if (t1.k() != t2.k() || t1 == t2) return false;
  const int k = t1.k();
  const MixedSubdivision m1 = label_cells(t1);
  const MixedSubdivision m2 = label_cells(t2);

  std::vector<detail::OracleItem> items;
  auto add = [&](const MixedCell& c, int bit) {
    for (auto& it : items)
      if (it.cell == c) {
        it.owners |= bit;
        return;
      }
    items.push_back({c, bit});
  };
  for (const MixedCell& c : m1.cells) add(c, 1);
  for (const MixedCell& c : m2.cells) add(c, 2);

  const int n = static_cast<int>(items.size());
  detail::UnionFind uf(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (items[i].owners != 3 && items[j].owners != 3 &&
          detail::supports_meet(items[i].cell.support, items[j].cell.support))
        uf.unite(i, j);

  // Grow each group until it is closed under its Minkowski hull.
  std::vector<std::vector<Summand>> merged;
  std::vector<Region> hull;
  for (bool changed = true; changed;) {
    changed = false;
    merged.assign(n, std::vector<Summand>(k, 0));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < k; ++l) merged[uf.find(i)][l] |= items[i].cell.summands[l];
    hull.assign(n, {});
    for (int i = 0; i < n; ++i)
      if (uf.find(i) == i) hull[i] = minkowski_hex(merged[i]).tightened().cells();
    for (int i = 0; i < n && !changed; ++i) {
      const int r = uf.find(i);
      for (int j = 0; j < n; ++j)
        if (uf.find(j) != r && detail::supports_meet(hull[r], items[j].cell.support)) {
          uf.unite(r, j);
          changed = true;
        }
    }
  }

  MixedSubdivision coarse{k, {}, {}};
  for (int r = 0; r < n; ++r) {
    if (uf.find(r) != r) continue;
    for (int bit : {1, 2}) {
      std::vector<GridCoord> cover;
      for (int i = 0; i < n; ++i)
        if (uf.find(i) == r && (items[i].owners & bit))
          cover.insert(cover.end(), items[i].cell.support.begin(), items[i].cell.support.end());
      if (make_region(cover) != hull[r]) return false;
    }
    coarse.cells.push_back({hull[r], merged[r]});
  }
  if (!verify_mixed_subdivision(coarse)) return false;
  const auto refs = labeled_refinements(coarse);
  if (refs.size() != 2) return false;
  return (refs[0] == t1 && refs[1] == t2) || (refs[0] == t2 && refs[1] == t1);
}

// ---------------------------------------------------------------------------
// Normalization

inline int total_height(const Tiling& t) {
  int h = 0;
  for (const GridCoord& u : free_triangles(t)) h += u.y;
  return h;
}

/// Bistellar flips lowering one triangle by one row at a time until all
/// triangles sit on the bottom row.
inline std::vector<Flip> normalize_to_bottom(const LabeledTiling& start) {
  require_valid(start);
  std::vector<Flip> out;
  Tiling t = start.tiling;
  for (;;) {
    bool moved = false;
    bool high = false;
    for (const GridCoord& u : free_triangles(t)) {
      if (u.y == 0) continue;
      high = true;
      const GridCoord d = down_across(u, Dir::N);
      Flip f = Flip::trapezoid(d, t.dir(d), Dir::N);
      if (is_bistellar(t, f)) {
        t = apply_flip(t, f);
        out.push_back(f);
        moved = true;
        break;
      }
    }
    if (!high) return out;
    if (!moved) throw std::logic_error("no height-lowering bistellar flip found");
  }
}

// ---------------------------------------------------------------------------
// Flip graphs

struct FlipGraph {
  int k = 1;
  Regime regime = Regime::AllLozenge;
  bool labeled = false;
  std::vector<std::string> keys;  // sorted
  std::vector<std::vector<int>> adjacency;

  std::size_t node_count() const { return keys.size(); }
  std::size_t edge_count() const {
    std::size_t e = 0;
    for (const auto& a : adjacency) e += a.size();
    return e / 2;
  }
  int index_of(const std::string& key) const {
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it == keys.end() || *it != key) return -1;
    return static_cast<int>(it - keys.begin());
  }
};

inline constexpr std::size_t kDefaultNodeBudget = 10'000'000;

inline FlipGraph build_flip_graph(int k, Regime regime, bool labeled,
                                  std::size_t max_nodes = kDefaultNodeBudget) {
  if (k < 1) throw DomainError("k must be >= 1");
  FlipGraph g{k, regime, labeled, {}, {}};
  auto over = [&] {
    throw BudgetExceeded("flip graph exceeds " + std::to_string(max_nodes) + " nodes");
  };
  std::vector<LabeledTiling> nodes;
  if (labeled) {
    for_each_labeled_tiling(k, [&](const LabeledTiling& lt) {
      if (nodes.size() >= max_nodes) over();
      nodes.push_back(lt);
    });
  } else {
    for_each_tiling(k, [&](const Tiling& t) {
      if (nodes.size() >= max_nodes) over();
      nodes.push_back(LabeledTiling{t, {}});
    });
  }
  auto key = [&](const LabeledTiling& lt) { return labeled ? key_of(lt) : key_of(lt.tiling); };
  std::vector<std::pair<std::string, std::size_t>> order;
  order.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) order.emplace_back(key(nodes[i]), i);
  std::sort(order.begin(), order.end());
  std::vector<int> rank(nodes.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    g.keys.push_back(order[r].first);
    rank[order[r].second] = static_cast<int>(r);
  }
  g.adjacency.assign(nodes.size(), {});
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const LabeledTiling& lt = nodes[i];
    auto& adj = g.adjacency[rank[i]];
    for (const Flip& f : find_flips(lt.tiling, regime)) {
      LabeledTiling next = labeled ? apply_flip(lt, f) : LabeledTiling{apply_flip(lt.tiling, f), {}};
      const int j = g.index_of(key(next));
      if (j < 0) throw std::logic_error("flip left the node set");
      if (j != rank[i]) adj.push_back(j);
    }
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  return g;
}

/// BFS distances from `source`; -1 for unreachable nodes.
inline std::vector<int> bfs_distances(const FlipGraph& g, int source) {
  std::vector<int> dist(g.node_count(), -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : g.adjacency[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

inline int component_count(const FlipGraph& g) {
  std::vector<int> seen(g.node_count(), 0);
  int c = 0;
  for (std::size_t s = 0; s < g.node_count(); ++s) {
    if (seen[s]) continue;
    ++c;
    auto d = bfs_distances(g, static_cast<int>(s));
    for (std::size_t v = 0; v < d.size(); ++v)
      if (d[v] >= 0) seen[v] = 1;
  }
  return c;
}

inline int distance(const FlipGraph& g, const std::string& from, const std::string& to) {
  const int a = g.index_of(from), b = g.index_of(to);
  if (a < 0 || b < 0) throw DomainError("node not in graph");
  return bfs_distances(g, a)[b];
}

/// Exact diameter by BFS from every node.
inline int diameter(const FlipGraph& g) {
  if (const int c = component_count(g); c != 1)
    throw DomainError("graph is disconnected (" + std::to_string(c) + " components)");
  int best = 0;
  for (std::size_t s = 0; s < g.node_count(); ++s) {
    auto d = bfs_distances(g, static_cast<int>(s));
    best = std::max(best, *std::max_element(d.begin(), d.end()));
  }
  return best;
}

struct FlipGraphSummary {
  std::size_t nodes = 0, edges = 0;
  int components = 0;
  std::optional<int> diameter;
};

inline FlipGraphSummary summarize(const FlipGraph& g, bool with_diameter) {
  FlipGraphSummary s{g.node_count(), g.edge_count(), component_count(g), {}};
  if (with_diameter && s.components == 1) s.diameter = diameter(g);
  return s;
}

inline std::string to_string(const FlipGraphSummary& s) {
  std::string out = "nodes=" + std::to_string(s.nodes) + " edges=" + std::to_string(s.edges) +
                    " components=" + std::to_string(s.components);
  if (s.diameter) out += " diameter=" + std::to_string(*s.diameter);
  return out;
}

/// One line per node: "key: neighbour-key neighbour-key ...".
inline void write_adjacency(std::ostream& os, const FlipGraph& g) {
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    os << g.keys[v] << ':';
    for (int w : g.adjacency[v]) os << ' ' << g.keys[w];
    os << '\n';
  }
}

}  // namespace cayley

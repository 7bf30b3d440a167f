#pragma once

// Triangulations of Delta^2 x Delta^{k-1} read off labeled tilings.

#include "cayley/common.hpp"
#include "cayley/minkowski.hpp"
#include "cayley/trigrid.hpp"

#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace cayley {

/// Vertex (corner, copy) of the product: corner 0,1,2 for a,b,c and copy 1..k.
struct CayleyVertex {
  int corner = 0;
  int copy = 1;

  friend auto operator<=>(const CayleyVertex&, const CayleyVertex&) = default;
};

inline int vertex_id(const CayleyVertex& v) { return (v.copy - 1) * 3 + v.corner; }
inline CayleyVertex vertex_of(int id) { return {id % 3, id / 3 + 1}; }

inline std::string to_string(const CayleyVertex& v) {
  return std::string("(") + "abc"[v.corner] + "," + std::to_string(v.copy) + ")";
}

using Simplex = std::vector<CayleyVertex>;  // sorted

struct Triangulation {
  int k = 1;
  std::vector<Simplex> simplices;  // sorted

  friend bool operator==(const Triangulation&, const Triangulation&) = default;
  friend auto operator<=>(const Triangulation& a, const Triangulation& b) {
    if (auto c = a.k <=> b.k; c != 0) return c;
    return std::lexicographical_compare_three_way(a.simplices.begin(), a.simplices.end(),
                                                  b.simplices.begin(), b.simplices.end());
  }
};

inline void normalize(Triangulation& t) {
  for (Simplex& s : t.simplices) std::sort(s.begin(), s.end());
  std::sort(t.simplices.begin(), t.simplices.end());
}

/// One simplex per fine cell: the vertices (v,i) with v in the i-th summand.
inline Triangulation to_triangulation(const MixedSubdivision& ms) {
  Triangulation t{ms.k, {}};
  for (const MixedCell& c : ms.cells) {
    Simplex s;
    for (int i = 0; i < ms.k; ++i)
      for (int v = 0; v < 3; ++v)
        if (c.summands[i] & (1u << v)) s.push_back({v, i + 1});
    t.simplices.push_back(std::move(s));
  }
  normalize(t);
  return t;
}

inline Triangulation to_triangulation(const LabeledTiling& lt) { return to_triangulation(label_cells(lt)); }

/// Copy i becomes copy perm[i-1].
inline Triangulation permute_copies(const Triangulation& t, const LabelPermutation& perm) {
  Triangulation out = t;
  for (Simplex& s : out.simplices)
    for (CayleyVertex& v : s) v.copy = perm[v.copy - 1];
  normalize(out);
  return out;
}

/// Corner v becomes corner perm[v].
inline Triangulation permute_corners(const Triangulation& t, const std::array<int, 3>& perm) {
  Triangulation out = t;
  for (Simplex& s : out.simplices)
    for (CayleyVertex& v : s) v.corner = perm[v.corner];
  normalize(out);
  return out;
}

/// Lattice coordinates: a=(0,0), b=(1,0), c=(0,1) followed by copy 1 at the
/// origin and copy i>1 at the (i-1)-th unit vector; k+1 coordinates.
inline std::vector<int> embed(const CayleyVertex& v, int k) {
  std::vector<int> p(k + 1, 0);
  if (v.corner == 1) p[0] = 1;
  if (v.corner == 2) p[1] = 1;
  if (v.copy > 1) p[v.copy] = 1;
  return p;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline BigInt determinant(std::vector<std::vector<BigInt>> a) {
  const std::size_t n = a.size();
  BigInt sign = 1, prev = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      sign = -sign;
    }
    for (std::size_t i = c + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[c][c];
  }
  return sign * a[n - 1][n - 1];
}

/// Normalized volume (d! times Euclidean volume) of a simplex of k+2 vertices.
inline BigInt normalized_volume(const Simplex& s, int k) {
  if (static_cast<int>(s.size()) != k + 2) return 0;
  const auto origin = embed(s[0], k);
  std::vector<std::vector<BigInt>> m;
  for (std::size_t r = 1; r < s.size(); ++r) {
    const auto p = embed(s[r], k);
    std::vector<BigInt> row;
    for (int j = 0; j <= k; ++j) row.push_back(p[j] - origin[j]);
    m.push_back(std::move(row));
  }
  return abs(determinant(std::move(m)));
}

/// Every simplex has k+2 distinct vertices and volume 1, and there are
/// C(k+1,2) of them, the normalized volume of Delta^2 x Delta^{k-1}.
inline bool verify_unimodular(const Triangulation& t) {
  if (static_cast<std::int64_t>(t.simplices.size()) != binomial(t.k + 1, 2)) return false;
  for (const Simplex& s : t.simplices) {
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
    for (const CayleyVertex& v : s)
      if (v.corner < 0 || v.corner > 2 || v.copy < 1 || v.copy > t.k) return false;
    if (normalized_volume(s, t.k) != 1) return false;
  }
  return true;
}

/// Face counts by dimension (index d = number of d-faces) of the complex
/// generated by the simplices.
inline std::vector<std::int64_t> f_vector(const Triangulation& t) {
  if (3 * t.k > 63) throw DomainError("f_vector supports k <= 21");
  std::set<std::uint64_t> faces;
  for (const Simplex& s : t.simplices) {
    const std::size_t n = s.size();
    for (std::uint64_t sub = 1; sub < (std::uint64_t{1} << n); ++sub) {
      std::uint64_t mask = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (sub >> i & 1) mask |= std::uint64_t{1} << vertex_id(s[i]);
      faces.insert(mask);
    }
  }
  std::vector<std::int64_t> f;
  for (std::uint64_t m : faces) {
    const int d = std::popcount(m) - 1;
    if (static_cast<int>(f.size()) <= d) f.resize(d + 1, 0);
    ++f[d];
  }
  return f;
}

/// Number of distinct triangulations in the S_k orbit.
inline std::size_t orbit_size(const Triangulation& t) {
  LabelPermutation p(t.k);
  std::iota(p.begin(), p.end(), 1);
  std::set<Triangulation> seen;
  do {
    seen.insert(permute_copies(t, p));
  } while (std::next_permutation(p.begin(), p.end()));
  return seen.size();
}

inline std::size_t orbit_size(const LabeledTiling& lt) { return orbit_size(to_triangulation(lt)); }

/// One simplex per line, "(a,1) (b,1) ..." in sorted order.
inline std::string export_triangulation(const Triangulation& t) {
  std::ostringstream os;
  for (const Simplex& s : t.simplices) {
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << to_string(s[i]);
    os << '\n';
  }
  return os.str();
}

}  // namespace cayley

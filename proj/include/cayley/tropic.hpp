#pragma once

// Tropical types and the coherent mixed subdivision of k*Delta^2 induced by
// a k x 3 lifting matrix.

#include "cayley/common.hpp"
#include "cayley/minkowski.hpp"
#include "cayley/ratlp.hpp"
#include "cayley/regularity.hpp"
#include "cayley/triangulation.hpp"

#include <json.hpp>

#include <random>
#include <sstream>

namespace cayley {

/// m[i][j]: height of vertex j of copy i.
using LiftMatrix = std::vector<std::vector<Rational>>;

/// Per copy, the bitmask of indices attaining the minimum.
using TropicalType = std::vector<std::uint32_t>;

inline std::size_t lift_columns(const LiftMatrix& m) {
  if (m.empty()) throw DomainError("lifting matrix needs at least one row");
  const std::size_t l = m[0].size();
  if (l < 2 || l > 32) throw DomainError("lifting matrix needs 2..32 columns");
  for (const auto& row : m)
    if (row.size() != l) throw MalformedInput("lifting matrix rows differ in length");
  return l;
}

namespace detail {

/// a + (lower-order infinitesimal terms): eps[t] is the coefficient of
/// epsilon^(t+1); comparison is lexicographic.
struct LexNum {
  Rational value;
  std::vector<Rational> eps;

  friend LexNum operator+(LexNum a, const LexNum& b) {
    a.value += b.value;
    if (a.eps.size() < b.eps.size()) a.eps.resize(b.eps.size());
    for (std::size_t t = 0; t < b.eps.size(); ++t) a.eps[t] += b.eps[t];
    return a;
  }
  friend LexNum operator-(const LexNum& a, LexNum b) {
    b.value = -b.value;
    for (auto& e : b.eps) e = -e;
    return a + b;
  }
  friend std::strong_ordering compare(const LexNum& a, const LexNum& b) {
    if (a.value != b.value) return a.value < b.value ? std::strong_ordering::less : std::strong_ordering::greater;
    const std::size_t n = std::max(a.eps.size(), b.eps.size());
    for (std::size_t t = 0; t < n; ++t) {
      const Rational x = t < a.eps.size() ? a.eps[t] : Rational(0);
      const Rational y = t < b.eps.size() ? b.eps[t] : Rational(0);
      if (x != y) return x < y ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }
  friend bool operator<(const LexNum& a, const LexNum& b) { return compare(a, b) < 0; }
  friend bool operator==(const LexNum& a, const LexNum& b) { return compare(a, b) == 0; }
};

inline std::strong_ordering compare(const Rational& a, const Rational& b) {
  if (a == b) return std::strong_ordering::equal;
  return a < b ? std::strong_ordering::less : std::strong_ordering::greater;
}

template <class Num>
TropicalType type_at(const std::vector<std::vector<Num>>& m, const std::vector<Num>& x) {
  TropicalType out;
  for (const auto& row : m) {
    std::uint32_t mask = 0;
    std::optional<Num> best;
    for (std::size_t j = 0; j < row.size(); ++j) {
      const Num v = row[j] + x[j];
      if (!best || v < *best) {
        best = v;
        mask = 1u << j;
      } else if (v == *best) {
        mask |= 1u << j;
      }
    }
    out.push_back(mask);
  }
  return out;
}

template <class Num>
struct RawVertex {
  std::vector<Num> x;  // length 3, x[2] = 0
  TropicalType type;
};

/// 0-cells of the arrangement of k tropical lines, x normalized to x[2] = 0.
template <class Num>
std::vector<RawVertex<Num>> raw_vertices(const std::vector<std::vector<Num>>& m, const Num& zero) {
  std::vector<Num> a, b, c;  // x0 = a_i, x1 = b_i, x0 - x1 = c_i
  for (const auto& row : m) {
    a.push_back(row[2] - row[0]);
    b.push_back(row[2] - row[1]);
    c.push_back(row[1] - row[0]);
  }
  std::vector<std::pair<Num, Num>> cand;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      cand.emplace_back(a[i], b[j]);
      cand.emplace_back(a[i], a[i] - c[j]);
      cand.emplace_back(b[i] + c[j], b[i]);
    }
  auto less = [](const std::pair<Num, Num>& p, const std::pair<Num, Num>& q) {
    if (auto o = compare(p.first, q.first); o != 0) return o < 0;
    return compare(p.second, q.second) < 0;
  };
  std::sort(cand.begin(), cand.end(), less);
  cand.erase(std::unique(cand.begin(), cand.end(),
                         [](const auto& p, const auto& q) { return p.first == q.first && p.second == q.second; }),
             cand.end());
  std::vector<RawVertex<Num>> out;
  for (auto& [x0, x1] : cand) {
    std::vector<Num> x{x0, x1, zero};
    TropicalType t = type_at(m, x);
    std::vector<Summand> s(t.begin(), t.end());
    if (minkowski_hex(s).dimension() == 2) out.push_back({std::move(x), std::move(t)});
  }
  return out;
}

inline MixedSubdivision subdivision_from_types(int k, const std::vector<TropicalType>& types) {
  MixedSubdivision ms{k, {}, {}};
  for (const TropicalType& t : types) {
    std::vector<Summand> s(t.begin(), t.end());
    ms.cells.push_back({minkowski_hex(s).tightened().cells(), s});
  }
  std::sort(ms.cells.begin(), ms.cells.end(),
            [](const MixedCell& p, const MixedCell& q) { return p.support[0] < q.support[0]; });
  if (auto why = check_mixed_subdivision(ms))
    throw std::logic_error("tropical cells do not tile T_k: " + *why);
  return ms;
}

inline void require_three_columns(const LiftMatrix& m) {
  if (lift_columns(m) != 3) throw DomainError("only 3-column lifting matrices have a planar dual");
}

}  // namespace detail

/// S_i = argmin_j (m[i][j] + x_j); x has l-1 entries (x_l = 0) or l entries.
inline TropicalType tropical_type(const LiftMatrix& m, std::vector<Rational> x) {
  const std::size_t l = lift_columns(m);
  if (x.size() + 1 == l) x.push_back(0);
  if (x.size() != l) throw DomainError("point has the wrong dimension");
  return detail::type_at(m, x);
}

struct ArrangementVertex {
  std::array<Rational, 2> x;
  TropicalType type;
};

/// Vertices of the arrangement of the k tropical lines (l = 3), with types.
inline std::vector<ArrangementVertex> arrangement_vertices(const LiftMatrix& m) {
  detail::require_three_columns(m);
  std::vector<ArrangementVertex> out;
  for (auto& v : detail::raw_vertices<Rational>(m, Rational(0))) out.push_back({{v.x[0], v.x[1]}, v.type});
  return out;
}

/// The coherent mixed subdivision: one cell per arrangement vertex, the sum
/// of the faces of Delta^2 named by its type. Possibly coarse.
inline MixedSubdivision coherent_subdivision(const LiftMatrix& m) {
  detail::require_three_columns(m);
  std::vector<TropicalType> types;
  for (auto& v : detail::raw_vertices<Rational>(m, Rational(0))) types.push_back(v.type);
  return detail::subdivision_from_types(static_cast<int>(m.size()), types);
}

/// Fine refinement of coherent_subdivision(m) from the symbolic perturbation
/// m[i][j] + eps^(3i+j+1), eps infinitesimal.
inline MixedSubdivision perturbed_subdivision(const LiftMatrix& m) {
  detail::require_three_columns(m);
  const std::size_t k = m.size();
  std::vector<std::vector<detail::LexNum>> p(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      detail::LexNum v{m[i][j], std::vector<Rational>(3 * k, 0)};
      v.eps[3 * i + j] = 1;
      p[i].push_back(std::move(v));
    }
  std::vector<TropicalType> types;
  for (auto& v : detail::raw_vertices<detail::LexNum>(p, detail::LexNum{0, {}})) types.push_back(v.type);
  return detail::subdivision_from_types(static_cast<int>(k), types);
}

/// Every vertex type has sum (|S_i| - 1) = 2, i.e. the subdivision is fine.
inline bool is_generic(const LiftMatrix& m) {
  for (const auto& v : arrangement_vertices(m)) {
    int excess = 0;
    for (std::uint32_t s : v.type) excess += std::popcount(s) - 1;
    if (excess != 2) return false;
  }
  return true;
}

/// Integer heights on the Cayley vertices, ordered by vertex_id: the
/// matrix entries times a common denominator.
inline std::vector<BigInt> cayley_heights(const LiftMatrix& m) {
  BigInt l = 1;
  for (const auto& row : m)
    for (const Rational& q : row) l = boost::multiprecision::lcm(l, denominator(q));
  std::vector<BigInt> h;
  for (const auto& row : m)
    for (const Rational& q : row) h.push_back(numerator(q) * (l / denominator(q)));
  return h;
}

/// The matrix itself certifies regularity of the triangulation of a fine
/// coherent subdivision.
inline bool matrix_certifies(const LiftMatrix& m, const MixedSubdivision& ms) {
  const Triangulation t = to_triangulation(ms);
  return verify_unimodular(t) && check_heights(cayley_constraints(t), {}, cayley_heights(m));
}

/// Deterministic generic matrix: entries n/d with |n| <= 10^6, 1 <= d <= 997,
/// redrawn until generic.
inline LiftMatrix random_lift_matrix(int k, std::uint64_t seed) {
  if (k < 1) throw DomainError("k must be >= 1");
  std::mt19937_64 rng(seed);
  for (;;) {
    LiftMatrix m(k, std::vector<Rational>(3));
    for (auto& row : m)
      for (auto& q : row) {
        const auto n = static_cast<std::int64_t>(rng() % 2000001) - 1000000;
        const auto d = static_cast<std::int64_t>(rng() % 997) + 1;
        q = Rational(n, d);
      }
    if (is_generic(m)) return m;
  }
}

/// ceil(((e/2) k l)^(l(l-1)(k-1))), with e replaced by an upper bound within
/// 1e-60 of it (the result can only round up).
inline BigCount count_regular_bound(int k, int l) {
  if (k < 2 || l < 2) throw DomainError("bound needs k, l >= 2");
  // e <= sum_{n<=50} 1/n! + 2/51!
  Rational e = 0, term = 1;
  for (int n = 0; n <= 50; ++n) {
    if (n) term /= n;
    e += term;
  }
  e += 2 * term / 51;
  const Rational base = e * k * l / 2;
  const int power = l * (l - 1) * (k - 1);
  Rational v = 1;
  for (int i = 0; i < power; ++i) v *= base;
  BigCount q = numerator(v) / denominator(v);
  if (q * denominator(v) != numerator(v)) ++q;
  return q;
}

/// Rows of rationals as JSON ([[..],..] of strings or integers, or
/// {"matrix": ...}) or as CSV lines.
inline LiftMatrix parse_lift_matrix(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw MalformedInput("empty matrix");
  LiftMatrix m;
  if (text[first] == '[' || text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw MalformedInput(std::string("matrix JSON: ") + e.what(), e.byte);
    }
    if (doc.is_object()) {
      if (!doc.contains("matrix")) throw MalformedInput("missing \"matrix\"");
      doc = doc["matrix"];
    }
    if (!doc.is_array()) throw MalformedInput("matrix must be an array of rows");
    for (const auto& row : doc) {
      if (!row.is_array()) throw MalformedInput("matrix row must be an array");
      std::vector<Rational> r;
      for (const auto& x : row) {
        if (x.is_string())
          r.push_back(parse_rational(x.get<std::string>()));
        else if (x.is_number_integer())
          r.push_back(Rational(x.get<std::int64_t>()));
        else
          throw MalformedInput("matrix entries must be integers or \"num/den\" strings");
      }
      m.push_back(std::move(r));
    }
  } else {
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      std::vector<Rational> r;
      std::istringstream cells(line);
      for (std::string cell; std::getline(cells, cell, ',');) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        if (b == std::string::npos) throw MalformedInput("empty matrix entry");
        r.push_back(parse_rational(cell.substr(b, e - b + 1)));
      }
      m.push_back(std::move(r));
    }
  }
  lift_columns(m);
  return m;
}

inline std::string lift_matrix_json(const LiftMatrix& m) {
  auto rows = nlohmann::json::array();
  for (const auto& row : m) {
    auto r = nlohmann::json::array();
    for (const Rational& q : row) r.push_back(rational_string(q));
    rows.push_back(r);
  }
  return rows.dump();
}

}  // namespace cayley

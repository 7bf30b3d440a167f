#pragma once

// Counting and enumerating lozenge tilings of T_k.
//
// Tilings are classified by their free triangles on the bottom row. With
// positions 1..k numbered left to right, f_k(S) counts tilings whose bottom
// free set is exactly S and g_k(S) those whose bottom free set contains S:
//
//   g_k(S) = sum_{S' >= S} f_k(S')
//   f_k(S) = sum g_{k-1}({s'_1..s'_{j-1}}),  s_i <= s'_i < s_{i+1}   (|S| = j > 1)
//   f_k({s}) = g_{k-1}({})
//
// Between consecutive bottom triangles sits exactly one vertical lozenge,
// whose top half is a free triangle of the T_{k-1} above.

#include "cayley/common.hpp"
#include "cayley/trigrid.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <set>

namespace cayley {

/// Subset of bottom-row positions {1..k}; bit (p-1) stands for position p.
struct BottomSet {
  int k = 1;
  std::uint32_t mask = 0;

  static BottomSet of(int k, std::initializer_list<int> positions) {
    BottomSet s{k, 0};
    for (int p : positions) {
      if (p < 1 || p > k) throw DomainError("bottom position out of range");
      s.mask |= 1u << (p - 1);
    }
    return s;
  }
  bool contains(int p) const { return (mask >> (p - 1)) & 1u; }
  int size() const { return std::popcount(mask); }
};

inline constexpr int kMaxCensusK = 22;

/// Memoised g-tables. Thread-safe; tables are built once per k.
template <class Count = BigCount>
class TilingCensus {
 public:
  /// g_k(S) for every mask S over {1..k}.
  const std::vector<Count>& g_table(int k) {
    check_k(k);
    std::lock_guard lock(mutex_);
    while (static_cast<int>(g_.size()) <= k) extend();
    return g_[k];
  }

  Count g(const BottomSet& s) {
    check_set(s);
    return g_table(s.k)[s.mask];
  }

  /// f_k(S) through the nested sum over the positions of the vertical
  /// lozenges between consecutive bottom triangles.
  Count f(const BottomSet& s) {
    check_set(s);
    if (s.mask == 0) return 0;
    const int k = s.k;
    std::vector<int> pos;
    for (int p = 1; p <= k; ++p)
      if (s.contains(p)) pos.push_back(p);
    const auto& below = g_table(k - 1);
    if (pos.size() == 1) return below[0];
    Count total = 0;
    std::uint32_t chosen = 0;
    nested_sum(pos, 0, chosen, below, total);
    return total;
  }

  /// f_k for every mask, via a two-state transfer over positions: the merged
  /// sequence s_1 <= t_1 < s_2 <= ... < s_j must alternate, starting and
  /// ending with a bottom triangle. O(k 2^k) additions.
  std::vector<Count> f_table(int k) {
    check_k(k);
    if (k == 1) return {Count(0), Count(1)};
    const std::vector<Count> below = g_table(k - 1);
    return transfer(k, below);
  }

  Count count_tilings(int k) { return g_table(k)[0]; }

 private:
  static void check_k(int k) {
    if (k < 0) throw DomainError("k must be >= 1");
    if (k > kMaxCensusK) throw BudgetExceeded("census tables limited to k <= 22");
  }
  static void check_set(const BottomSet& s) {
    if (s.k < 1) throw DomainError("k must be >= 1");
    check_k(s.k);
    if (s.k < 32 && (s.mask >> s.k) != 0) throw DomainError("bottom set not within {1..k}");
  }

  void nested_sum(const std::vector<int>& pos, std::size_t i, std::uint32_t chosen,
                  const std::vector<Count>& below, Count& total) {
    if (i + 1 == pos.size()) {
      total += below[chosen];
      return;
    }
    for (int p = pos[i]; p < pos[i + 1]; ++p)
      nested_sum(pos, i + 1, chosen | (1u << (p - 1)), below, total);
  }

  static std::vector<Count> transfer(int k, const std::vector<Count>& below) {
    const std::size_t n = std::size_t{1} << k;
    // expecting[mask]: next symbol must be a bottom triangle; after[mask]:
    // the last symbol was a bottom triangle.
    std::vector<Count> expecting(n), after(n);
    for (std::size_t m = 0; m < below.size(); ++m) expecting[m] = below[m];
    for (int b = 0; b < k; ++b) {
      const std::size_t bit = std::size_t{1} << b;
      for (std::size_t m0 = 0; m0 < n; ++m0) {
        if (m0 & bit) continue;
        const std::size_t m1 = m0 | bit;
        Count e0 = std::move(expecting[m0]), e1 = std::move(expecting[m1]);
        Count a0 = std::move(after[m0]), a1 = std::move(after[m1]);
        expecting[m0] = e0 + a1;  // no triangle here; lozenge closes a gap
        after[m0] = std::move(a0);
        after[m1] = std::move(e0);  // triangle here, no lozenge
        expecting[m1] = std::move(e1);  // triangle then lozenge above it
      }
    }
    return after;
  }

  void extend() {
    const int k = static_cast<int>(g_.size());
    if (k == 0) {
      g_.push_back({Count(1)});
      return;
    }
    std::vector<Count> g = k == 1 ? std::vector<Count>{Count(0), Count(1)} : transfer(k, g_[k - 1]);
    const std::size_t n = g.size();
    for (int b = 0; b < k; ++b) {
      const std::size_t bit = std::size_t{1} << b;
      for (std::size_t m = 0; m < n; ++m)
        if (!(m & bit)) g[m] += g[m | bit];
    }
    g_.push_back(std::move(g));
  }

  std::mutex mutex_;
  std::vector<std::vector<Count>> g_;
};

inline TilingCensus<BigCount>& default_census() {
  static TilingCensus<BigCount> census;
  return census;
}

inline BigCount g(const BottomSet& s) { return default_census().g(s); }
inline BigCount f(const BottomSet& s) { return default_census().f(s); }

inline BigCount count_tilings(int k) {
  if (k < 1) throw DomainError("k must be >= 1");
  return default_census().count_tilings(k);
}

inline BigCount count_triangulations(int k) { return factorial(k) * count_tilings(k); }

// ---------------------------------------------------------------------------
// Enumeration

/// Pull-based enumeration of all tilings of T_k. Order is lexicographic in
/// the match vector (DOWN cells row-major, Hyp < E < N).
class TilingEnumerator {
 public:
  explicit TilingEnumerator(int k) : k_(k) {
    if (k < 1) throw DomainError("k must be >= 1");
    for (const GridCoord& d : down_cells(k)) {
      std::array<int, 3> t{};
      for (Dir dir : {Dir::Hyp, Dir::E, Dir::N})
        t[static_cast<int>(dir)] = up_index(k, partner_of(d, dir));
      targets_.push_back(t);
    }
    choice_.assign(targets_.size(), -1);
    used_.assign(up_count(k), 0);
  }

  std::optional<Tiling> next() {
    if (done_) return std::nullopt;
    const int n = static_cast<int>(targets_.size());
    if (n == 0) {
      done_ = true;
      return Tiling(k_, {});
    }
    int pos = started_ ? n - 1 : 0;
    started_ = true;
    while (pos >= 0) {
      int c = choice_[pos];
      if (c >= 0) used_[targets_[pos][c]] = 0;
      ++c;
      while (c < 3 && used_[targets_[pos][c]]) ++c;
      if (c == 3) {
        choice_[pos] = -1;
        --pos;
        continue;
      }
      choice_[pos] = c;
      used_[targets_[pos][c]] = 1;
      if (pos == n - 1) {
        std::vector<Dir> m(n);
        for (int i = 0; i < n; ++i) m[i] = static_cast<Dir>(choice_[i]);
        return Tiling(k_, std::move(m));
      }
      ++pos;
    }
    done_ = true;
    return std::nullopt;
  }

 private:
  int k_;
  std::vector<std::array<int, 3>> targets_;
  std::vector<int> choice_;
  std::vector<char> used_;
  bool started_ = false;
  bool done_ = false;
};

/// Calls fn(tiling) for every tiling; fn may return false to stop early.
/// Returns the number of tilings visited.
template <class Fn>
std::uint64_t for_each_tiling(int k, Fn&& fn) {
  TilingEnumerator e(k);
  std::uint64_t n = 0;
  while (auto t = e.next()) {
    ++n;
    if constexpr (std::is_same_v<std::invoke_result_t<Fn&, const Tiling&>, bool>) {
      if (!fn(*t)) break;
    } else {
      fn(*t);
    }
  }
  return n;
}

inline std::vector<Tiling> enumerate_tilings(int k) {
  std::vector<Tiling> out;
  for_each_tiling(k, [&](const Tiling& t) { out.push_back(t); });
  return out;
}

/// Every labeling of every tiling (k! per tiling).
template <class Fn>
void for_each_labeled_tiling(int k, Fn&& fn) {
  for_each_tiling(k, [&](const Tiling& t) {
    auto labels = free_triangles(t);
    std::sort(labels.begin(), labels.end());
    do {
      fn(LabeledTiling{t, labels});
    } while (std::next_permutation(labels.begin(), labels.end()));
  });
}

// ---------------------------------------------------------------------------
// Symmetry classes

/// Sizes of the D3-orbits of unlabeled tilings of T_k, in order of each
/// orbit's smallest member.
inline std::vector<int> symmetry_orbit_sizes(int k) {
  std::vector<int> sizes;
  for_each_tiling(k, [&](const Tiling& t) {
    std::set<Tiling> orbit;
    for (const D3& g : D3::all()) orbit.insert(apply_symmetry(t, g));
    if (*orbit.begin() == t) sizes.push_back(static_cast<int>(orbit.size()));
  });
  return sizes;
}

inline std::int64_t count_symmetry_classes(int k) {
  return static_cast<std::int64_t>(symmetry_orbit_sizes(k).size());
}

// ---------------------------------------------------------------------------
// Entropy

/// Natural log of a positive big integer.
inline double log_big(const BigCount& n) {
  if (n <= 0) throw DomainError("log of nonpositive count");
  const std::size_t bits = boost::multiprecision::msb(n) + 1;
  if (bits <= 60) return std::log(n.convert_to<double>());
  const std::size_t shift = bits - 60;
  BigCount top = n >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::numbers::ln2;
}

struct EntropyRow {
  int k;
  BigCount count;
  double ratio;         // ln(count) / (k^2 / 2)
  double lower_ratio;   // ln 2 (k^2+3k)/(3k^2); meaningful for k divisible by 3
  double upper_ratio;   // ln 3 (k^2-k)/k^2
  bool lower_applies;   // k divisible by 3
};

inline std::vector<EntropyRow> entropy_report(int k_max) {
  std::vector<EntropyRow> rows;
  for (int k = 1; k <= k_max; ++k) {
    const BigCount c = count_tilings(k);
    const double kk = static_cast<double>(k) * k;
    rows.push_back({k, c, log_big(c) / (kk / 2), std::numbers::ln2 * (kk + 3 * k) / (3 * kk),
                    std::log(3.0) * (kk - k) / kk, k % 3 == 0});
  }
  return rows;
}

/// 3^((k^2-k)/2): each DOWN cell picks one of three UP neighbours.
inline BigCount tiling_upper_bound(int k) {
  return boost::multiprecision::pow(BigCount(3), static_cast<unsigned>((k * k - k) / 2));
}

/// 2^((k^2+3k)/6) for k divisible by 3: independent hexagons and boundary
/// trapezoids each refined two ways.
inline BigCount tiling_lower_bound(int k) {
  if (k % 3 != 0) throw DomainError("lower bound construction needs k divisible by 3");
  return BigCount(1) << ((k * k + 3 * k) / 6);
}

/// Lobachevsky function L(theta) = 1/2 sum_{n>=1} sin(2 n theta) / n^2,
/// truncated after `terms` terms (tail bounded by 1 / (2 terms)).
inline double lobachevsky(double theta, std::int64_t terms) {
  long double sum = 0;
  for (std::int64_t n = terms; n >= 1; --n) {
    const long double nn = static_cast<long double>(n);
    sum += std::sin(2.0L * nn * theta) / (nn * nn);
  }
  return static_cast<double>(sum / 2);
}

/// (3/pi) L(pi/3), the maximal entropy per lozenge. The series is cut where
/// its tail 1/2 sum_{n>N} 1/n^2 < 1/(2N) drops below tolerance/2.
inline double beta_constant(double tolerance) {
  if (!(tolerance > 0)) throw DomainError("tolerance must be positive");
  const auto terms = static_cast<std::int64_t>(std::ceil(1.0 / tolerance)) + 1;
  // sin(2 n pi/3) is sqrt(3)/2, -sqrt(3)/2, 0 for n = 1, 2, 0 (mod 3).
  long double sum = 0;
  for (std::int64_t n = terms; n >= 1; --n) {
    const long double nn = static_cast<long double>(n);
    const int r = static_cast<int>(n % 3);
    if (r == 1) sum += 1 / (nn * nn);
    if (r == 2) sum -= 1 / (nn * nn);
  }
  const long double lobachevsky_pi_3 = std::sqrt(3.0L) / 4 * sum;
  return static_cast<double>(3 / std::numbers::pi_v<long double> * lobachevsky_pi_3);
}

}  // namespace cayley

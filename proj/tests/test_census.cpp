#include "cayley/census.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <fstream>

using namespace cayley;

namespace {

std::uint32_t bottom_mask(const Tiling& t) {
  std::uint32_t m = 0;
  for (const GridCoord& u : free_triangles(t))
    if (u.y == 0) m |= 1u << u.x;
  return m;
}

/// f_k by filtering the enumeration on the bottom free set.
std::vector<std::int64_t> f_by_enumeration(int k) {
  std::vector<std::int64_t> f(std::size_t{1} << k);
  for_each_tiling(k, [&](const Tiling& t) { ++f[bottom_mask(t)]; });
  return f;
}

std::vector<std::string> golden_counts() {
  std::ifstream in(std::string(CAYLEY_GOLDEN_DIR) + "/tiling_counts.txt");
  std::vector<std::string> out;
  int k;
  std::string value;
  while (in >> k >> value) out.push_back(value);
  return out;
}

/// -int_0^theta log(2 sin t) dt, splitting off the log t singularity and
/// integrating the smooth remainder log(2 sin t / t) by Simpson's rule.
double lobachevsky_by_quadrature(double theta) {
  const int n = 20000;
  const double h = theta / n;
  auto smooth = [](double t) { return t == 0 ? std::log(2.0) : std::log(2 * std::sin(t) / t); };
  double s = smooth(0) + smooth(theta);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4 : 2) * smooth(i * h);
  const double smooth_integral = s * h / 3;
  const double log_integral = theta * std::log(theta) - theta;
  return -(smooth_integral + log_integral);
}

}  // namespace

TEST(Census, TableThreeSmallRows) {
  TilingCensus<> c;
  EXPECT_EQ(c.f_table(1), (std::vector<BigCount>{0, 1}));
  EXPECT_EQ(c.g_table(1), (std::vector<BigCount>{1, 1}));
  EXPECT_EQ(c.f_table(2), (std::vector<BigCount>{0, 1, 1, 1}));
  EXPECT_EQ(c.g_table(2), (std::vector<BigCount>{3, 2, 2, 1}));
  EXPECT_EQ(c.f_table(3), (std::vector<BigCount>{0, 3, 3, 2, 3, 4, 2, 1}));
  EXPECT_EQ(c.g_table(3), (std::vector<BigCount>{18, 10, 8, 3, 10, 5, 3, 1}));
  EXPECT_EQ(c.f_table(4), (std::vector<BigCount>{0, 18, 18, 10, 18, 18, 8, 3, 18, 28, 18, 8, 10,
                                                 8, 3, 1}));
}

TEST(Census, NamedTableEntries) {
  EXPECT_EQ(g(BottomSet::of(3, {})), 18);
  EXPECT_EQ(g(BottomSet::of(3, {1})), 10);
  EXPECT_EQ(g(BottomSet::of(3, {1, 2})), 3);
  EXPECT_EQ(g(BottomSet::of(1, {})), 1);
  EXPECT_EQ(f(BottomSet::of(3, {1, 3})), 4);
  EXPECT_EQ(f(BottomSet::of(4, {1, 4})), 28);
  for (int k = 1; k <= 10; ++k) EXPECT_EQ(f(BottomSet{k, 0}), 0);
}

TEST(Census, DomainErrors) {
  EXPECT_THROW(count_tilings(0), DomainError);
  EXPECT_THROW(BottomSet::of(3, {4}), DomainError);
  EXPECT_THROW(g(BottomSet{0, 0}), DomainError);
  EXPECT_THROW(f(BottomSet{2, 4}), DomainError);
}

TEST(Census, NestedSumAgreesWithTransfer) {
  TilingCensus<> c;
  for (int k = 1; k <= 9; ++k) {
    auto table = c.f_table(k);
    for (std::uint32_t m = 0; m < table.size(); ++m) ASSERT_EQ(c.f(BottomSet{k, m}), table[m]);
  }
}

TEST(Census, GIsSupersetSumOfF) {
  TilingCensus<> c;
  for (int k = 1; k <= 5; ++k) {
    auto fs = c.f_table(k);
    auto gs = c.g_table(k);
    for (std::uint32_t s = 0; s < gs.size(); ++s) {
      BigCount sum = 0;
      for (std::uint32_t t = 0; t < fs.size(); ++t)
        if ((t & s) == s) sum += fs[t];
      ASSERT_EQ(sum, gs[s]);
    }
  }
}

TEST(Census, FMatchesFilteredEnumeration) {
  TilingCensus<> c;
  for (int k = 1; k <= 5; ++k) {
    auto expected = f_by_enumeration(k);
    auto fs = c.f_table(k);
    for (std::size_t m = 0; m < fs.size(); ++m) ASSERT_EQ(fs[m], expected[m]) << k << " " << m;
  }
}

TEST(Census, EnumerationLengthMatchesCount) {
  for (int k = 1; k <= 6; ++k)
    EXPECT_EQ(BigCount(for_each_tiling(k, [](const Tiling&) {})), count_tilings(k)) << k;
}

TEST(Census, EnumerationIsSortedAndValid) {
  auto ts = enumerate_tilings(4);
  EXPECT_EQ(ts.size(), 187u);
  EXPECT_TRUE(std::is_sorted(ts.begin(), ts.end()));
  EXPECT_TRUE(std::adjacent_find(ts.begin(), ts.end()) == ts.end());
  for (const auto& t : ts) EXPECT_TRUE(is_valid(t));
}

TEST(Census, EnumeratorCanStopEarly) {
  int seen = 0;
  auto n = for_each_tiling(5, [&](const Tiling&) { return ++seen < 10; });
  EXPECT_EQ(n, 10u);
}

TEST(Census, GoldenCountsUpTo16) {
  auto golden = golden_counts();
  ASSERT_EQ(golden.size(), 16u);
  const auto start = std::chrono::steady_clock::now();
  for (int k = 1; k <= 16; ++k) EXPECT_EQ(count_tilings(k).str(), golden[k - 1]) << k;
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(60));
}

TEST(Census, CountsIncreaseStrictly) {
  for (int k = 1; k < 16; ++k) EXPECT_LT(count_tilings(k), count_tilings(k + 1));
}

TEST(Census, NativeCountTypeAgreesWhileItFits) {
  TilingCensus<std::uint64_t> small;
  for (int k = 1; k <= 12; ++k) EXPECT_EQ(BigCount(small.count_tilings(k)), count_tilings(k));
}

TEST(Census, TriangulationCounts) {
  EXPECT_EQ(count_triangulations(1), 1);
  EXPECT_EQ(count_triangulations(2), 6);
  EXPECT_EQ(count_triangulations(3), 108);
  EXPECT_EQ(count_triangulations(4), 4488);
}

TEST(Census, SymmetryClasses) {
  EXPECT_EQ(count_symmetry_classes(1), 1);
  EXPECT_EQ(count_symmetry_classes(3), 5);
  EXPECT_EQ(count_symmetry_classes(4), 35);
}

TEST(Census, OrbitSizesSumToCount) {
  for (int k = 1; k <= 5; ++k) {
    auto sizes = symmetry_orbit_sizes(k);
    EXPECT_EQ(BigCount(std::accumulate(sizes.begin(), sizes.end(), 0)), count_tilings(k));
    for (int s : sizes) EXPECT_EQ(6 % s, 0);
  }
}

TEST(Census, EntropyRatiosWithinBounds) {
  auto rows = entropy_report(16);
  ASSERT_EQ(rows.size(), 16u);
  EXPECT_NEAR(rows[7].ratio, std::log(186498819.0) / 32, 1e-12);
  EXPECT_NEAR(rows[7].ratio, 0.595, 5e-4);
  EXPECT_NEAR(rows[15].ratio, 0.506, 5e-4);
  for (const auto& r : rows) {
    EXPECT_LT(r.ratio, std::log(3.0));
    EXPECT_LE(r.count, tiling_upper_bound(r.k));
    if (r.k >= 3) {
      EXPECT_LT(r.count, tiling_upper_bound(r.k));
    }
    if (r.lower_applies) {
      EXPECT_GT(r.count, tiling_lower_bound(r.k));
    }
  }
}

TEST(Census, LogOfBigCounts) {
  EXPECT_NEAR(log_big(BigCount(1)), 0.0, 1e-15);
  BigCount big = BigCount(1) << 200;
  EXPECT_NEAR(log_big(big), 200 * std::log(2.0), 1e-9);
}

TEST(Census, Lobachevsky) {
  EXPECT_EQ(lobachevsky(0.0, 1000), 0.0);
  const double pi3 = std::numbers::pi / 3;
  const double oracle = lobachevsky_by_quadrature(pi3);
  EXPECT_NEAR(oracle, 0.33831387, 1e-8);
  EXPECT_NEAR(oracle, 0.32306594 * pi3, 1e-7);
  EXPECT_NEAR(lobachevsky(pi3, 200000), oracle, 1e-5);
}

TEST(Census, BetaConstant) {
  const double beta = beta_constant(1e-7);
  EXPECT_NEAR(beta, 0.32306594, 1e-7);
  EXPECT_GT(std::abs(beta - 0.32309594), 1e-5);
  EXPECT_NEAR(beta, 3 / std::numbers::pi * lobachevsky_by_quadrature(std::numbers::pi / 3), 1e-7);
  EXPECT_THROW(beta_constant(0), DomainError);
}

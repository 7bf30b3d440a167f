#include "cayley/census.hpp"
#include "cayley/triangulation.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace cayley;

namespace {

std::int64_t euler_characteristic(const std::vector<std::int64_t>& f) {
  std::int64_t chi = 0;
  for (std::size_t d = 0; d < f.size(); ++d) chi += (d % 2 ? -1 : 1) * f[d];
  return chi;
}

/// Determinant by cofactor expansion, for cross-checking Bareiss.
std::int64_t cofactor_det(const std::vector<std::vector<std::int64_t>>& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  std::int64_t det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<std::int64_t>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<std::int64_t> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(a[r][j]);
      minor.push_back(row);
    }
    det += (c % 2 ? -1 : 1) * a[0][c] * cofactor_det(minor);
  }
  return det;
}

}  // namespace

TEST(Triangulation, SingleCopyIsTheTriangle) {
  auto t = to_triangulation(with_default_labels(Tiling(1, {})));
  ASSERT_EQ(t.simplices.size(), 1u);
  EXPECT_EQ(t.simplices[0], (Simplex{{0, 1}, {1, 1}, {2, 1}}));
  EXPECT_TRUE(verify_unimodular(t));
  EXPECT_EQ(f_vector(t), (std::vector<std::int64_t>{3, 3, 1}));
  EXPECT_EQ(export_triangulation(t), "(a,1) (b,1) (c,1)\n");
}

TEST(Triangulation, SimplexCountAndSize) {
  for (int k = 1; k <= 5; ++k)
    for_each_tiling(k, [&](const Tiling& t) {
      auto tri = to_triangulation(with_default_labels(t));
      ASSERT_EQ(static_cast<std::int64_t>(tri.simplices.size()), binomial(k + 1, 2));
      std::set<CayleyVertex> used;
      for (const Simplex& s : tri.simplices) {
        ASSERT_EQ(static_cast<int>(s.size()), k + 2);
        used.insert(s.begin(), s.end());
      }
      ASSERT_EQ(static_cast<int>(used.size()), 3 * k);
    });
}

TEST(Triangulation, DistinctForDistinctLabeledTilings) {
  for (int k = 2; k <= 4; ++k) {
    std::set<Triangulation> seen;
    std::size_t n = 0;
    for_each_labeled_tiling(k, [&](const LabeledTiling& lt) {
      seen.insert(to_triangulation(lt));
      ++n;
    });
    EXPECT_EQ(seen.size(), n);
    if (k == 3) {
      EXPECT_EQ(n, 108u);
    }
    if (k == 4) {
      EXPECT_EQ(n, 4488u);
    }
  }
}

TEST(Triangulation, BareissAgreesWithCofactors) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 6;
    std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n));
    std::vector<std::vector<BigInt>> b(n, std::vector<BigInt>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b[i][j] = a[i][j] = entry(rng);
    ASSERT_EQ(determinant(b), BigInt(cofactor_det(a)));
  }
}

TEST(Triangulation, AllUnimodular) {
  for (int k = 1; k <= 4; ++k)
    for_each_labeled_tiling(k, [](const LabeledTiling& lt) {
      ASSERT_TRUE(verify_unimodular(to_triangulation(lt))) << key_of(lt);
    });
}

TEST(Triangulation, CorruptedSimplexIsRejected) {
  auto t = to_triangulation(with_default_labels(canonical_tiling(3, CanonicalMode::Bottom)));
  ASSERT_TRUE(verify_unimodular(t));
  auto bad = t;
  // Replace one vertex by another vertex of the same copy already present.
  Simplex& s = bad.simplices[0];
  s.back() = s.front();
  EXPECT_FALSE(verify_unimodular(bad));
  auto flat = t;
  flat.simplices[0] = {{0, 1}, {1, 1}, {0, 2}, {1, 2}, {0, 3}};
  EXPECT_FALSE(verify_unimodular(flat));
  auto short_list = t;
  short_list.simplices.pop_back();
  EXPECT_FALSE(verify_unimodular(short_list));
}

TEST(Triangulation, OneFVectorPerK) {
  for (int k = 1; k <= 4; ++k) {
    std::set<std::vector<std::int64_t>> fs;
    for_each_labeled_tiling(k, [&](const LabeledTiling& lt) { fs.insert(f_vector(to_triangulation(lt))); });
    ASSERT_EQ(fs.size(), 1u) << k;
    EXPECT_EQ(euler_characteristic(*fs.begin()), 1) << k;
    EXPECT_EQ(fs.begin()->front(), 3 * k);
    EXPECT_EQ(fs.begin()->back(), binomial(k + 1, 2));
  }
}

TEST(Triangulation, FVectorIsSymmetric) {
  std::mt19937 rng(5);
  for_each_labeled_tiling(3, [&](const LabeledTiling& lt) {
    auto t = to_triangulation(lt);
    const auto f = f_vector(t);
    LabelPermutation p{1, 2, 3};
    std::shuffle(p.begin(), p.end(), rng);
    ASSERT_EQ(f_vector(permute_copies(t, p)), f);
    ASSERT_EQ(f_vector(permute_corners(t, {2, 0, 1})), f);
  });
}

TEST(Triangulation, LabelActionIsCopyPermutation) {
  std::mt19937 rng(3);
  for_each_labeled_tiling(4, [&](const LabeledTiling& lt) {
    LabelPermutation p{1, 2, 3, 4};
    std::shuffle(p.begin(), p.end(), rng);
    ASSERT_EQ(to_triangulation(apply_symmetry(lt, p)), permute_copies(to_triangulation(lt), p));
  });
}

TEST(Triangulation, FreeAction) {
  EXPECT_EQ(orbit_size(with_default_labels(Tiling(2, {Dir::N}))), 2u);
  for (int k = 3; k <= 5; ++k) {
    const auto expected = static_cast<std::size_t>(factorial(k));
    for_each_tiling(k, [&](const Tiling& t) { ASSERT_EQ(orbit_size(with_default_labels(t)), expected); });
  }
}

TEST(Triangulation, ExportIsSortedAndStable) {
  auto lt = with_default_labels(canonical_tiling(3, CanonicalMode::Side));
  const std::string text = export_triangulation(to_triangulation(lt));
  EXPECT_EQ(text, export_triangulation(to_triangulation(lt)));
  std::istringstream in(text);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  EXPECT_EQ(lines.size(), 6u);
  EXPECT_TRUE(std::is_sorted(lines.begin(), lines.end()));
}

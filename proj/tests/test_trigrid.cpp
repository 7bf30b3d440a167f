#include "cayley/census.hpp"
#include "cayley/tiling_io.hpp"
#include "cayley/trigrid.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

using namespace cayley;

namespace {

Tiling tiling_k2(Dir d) { return Tiling(2, {d}); }

}  // namespace

TEST(Trigrid, TrivialTilingHasOneFreeTriangle) {
  Tiling t(1, {});
  EXPECT_TRUE(is_valid(t));
  EXPECT_EQ(free_triangles(t), std::vector<GridCoord>{up(0, 0)});
}

TEST(Trigrid, HypMatchFreesTheOtherTwo) {
  auto t = tiling_k2(Dir::Hyp);
  EXPECT_TRUE(is_valid(t));
  EXPECT_EQ(free_triangles(t), (std::vector<GridCoord>{up(1, 0), up(0, 1)}));
}

TEST(Trigrid, NorthMatchFreesBottomRow) {
  EXPECT_EQ(free_triangles(tiling_k2(Dir::N)), (std::vector<GridCoord>{up(0, 0), up(1, 0)}));
}

TEST(Trigrid, WrongMatchSizeIsMalformed) {
  EXPECT_THROW(Tiling(2, {Dir::N, Dir::N}), MalformedInput);
  EXPECT_THROW(Tiling(0, {}), DomainError);
}

TEST(Trigrid, ViolationNamesDuplicatedUpCell) {
  // DOWN(0,0)->E and DOWN(1,0)->HYP both claim UP(1,0).
  std::vector<Dir> m(down_count(3), Dir::N);
  m[down_index(3, 0, 0)] = Dir::E;
  m[down_index(3, 1, 0)] = Dir::Hyp;
  auto v = validate_tiling(Tiling(3, m));
  ASSERT_TRUE(v);
  EXPECT_EQ(v->up_cell, up(1, 0));
  EXPECT_EQ(v->claimants.size(), 2u);
}

TEST(Trigrid, EveryTilingHasKFreeTrianglesAndLozenges) {
  for (int k = 1; k <= 5; ++k)
    for_each_tiling(k, [&](const Tiling& t) {
      ASSERT_EQ(static_cast<int>(free_triangles(t).size()), k);
      ASSERT_EQ(static_cast<int>(t.match().size()), k * (k - 1) / 2);
    });
}

TEST(Trigrid, IndicesAreRowMajorBijections) {
  const int k = 6;
  auto ups = up_cells(k);
  for (int i = 0; i < static_cast<int>(ups.size()); ++i) EXPECT_EQ(up_index(k, ups[i]), i);
  auto downs = down_cells(k);
  for (int i = 0; i < static_cast<int>(downs.size()); ++i) EXPECT_EQ(down_index(k, downs[i]), i);
  auto all = all_cells(k);
  EXPECT_EQ(static_cast<int>(all.size()), k * k);
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
}

TEST(Trigrid, D3IsAGroupAction) {
  const auto group = D3::all();
  for (int k = 2; k <= 4; ++k) {
    auto tilings = enumerate_tilings(k);
    for (const Tiling& t : tilings) {
      EXPECT_EQ(apply_symmetry(t, D3::identity()), t);
      for (const D3& g : group)
        for (const D3& h : group) {
          ASSERT_EQ(apply_symmetry(t, g * h), apply_symmetry(apply_symmetry(t, h), g));
        }
    }
  }
}

TEST(Trigrid, D3MapsLabeledTilingsToLabeledTilings) {
  for_each_labeled_tiling(3, [](const LabeledTiling& lt) {
    for (const D3& g : D3::all()) {
      auto r = apply_symmetry(lt, g);
      ASSERT_TRUE(is_valid(r.tiling));
      ASSERT_TRUE(labels_valid(r));
    }
  });
}

TEST(Trigrid, D3OrbitSizesAtK3) {
  auto sizes = symmetry_orbit_sizes(3);
  std::multiset<int> got(sizes.begin(), sizes.end());
  EXPECT_EQ(got, (std::multiset<int>{3, 6, 1, 2, 6}));
}

TEST(Trigrid, LabelSwapIsAnInvolution) {
  LabeledTiling lt = with_default_labels(tiling_k2(Dir::N));
  LabelPermutation swap{2, 1};
  auto once = apply_symmetry(lt, swap);
  EXPECT_NE(once, lt);
  EXPECT_EQ(once.tiling, lt.tiling);
  EXPECT_EQ(apply_symmetry(once, swap), lt);
}

TEST(Trigrid, LabelPermutationsComposeAsAnAction) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 5;
    LabelPermutation g(k), h(k);
    std::iota(g.begin(), g.end(), 1);
    std::iota(h.begin(), h.end(), 1);
    std::shuffle(g.begin(), g.end(), rng);
    std::shuffle(h.begin(), h.end(), rng);
    auto lt = with_default_labels(canonical_tiling(k, CanonicalMode::Side));
    EXPECT_EQ(apply_symmetry(lt, compose(g, h)), apply_symmetry(apply_symmetry(lt, h), g));
  }
}

TEST(Trigrid, CanonicalTilings) {
  EXPECT_EQ(canonical_tiling(1, CanonicalMode::Bottom), Tiling(1, {}));
  auto b2 = canonical_tiling(2, CanonicalMode::Bottom);
  EXPECT_EQ(free_triangles(b2), (std::vector<GridCoord>{up(0, 0), up(1, 0)}));
  EXPECT_EQ(b2.partner(down(0, 0)), up(0, 1));
  EXPECT_EQ(free_triangles(canonical_tiling(3, CanonicalMode::Bottom)),
            (std::vector<GridCoord>{up(0, 0), up(1, 0), up(2, 0)}));
  for (int k = 1; k <= 5; ++k) {
    auto s = free_triangles(canonical_tiling(k, CanonicalMode::Side));
    for (const auto& u : s) EXPECT_EQ(u.x, 0);
  }
}

TEST(Trigrid, BottomCanonicalIsTheOnlyTilingWithBottomFreeSet) {
  for (int k = 2; k <= 4; ++k) {
    int hits = 0;
    for_each_tiling(k, [&](const Tiling& t) {
      auto f = free_triangles(t);
      if (std::all_of(f.begin(), f.end(), [](auto& u) { return u.y == 0; })) {
        ++hits;
        EXPECT_EQ(t, canonical_tiling(k, CanonicalMode::Bottom));
      }
    });
    EXPECT_EQ(hits, 1);
  }
}

TEST(TilingIo, MinimalDocument) {
  EXPECT_EQ(serialize(Tiling(1, {})), R"({"k":1,"lozenges":[]})");
  EXPECT_EQ(serialize(with_default_labels(Tiling(1, {}))),
            R"({"k":1,"lozenges":[],"labels":{"1":[0,0]}})");
}

TEST(TilingIo, RoundTripsAllLabeledTilingsOfT3) {
  for_each_labeled_tiling(3, [](const LabeledTiling& lt) {
    const std::string text = serialize(lt);
    auto doc = parse_tiling(text);
    ASSERT_EQ(doc.labeled(), lt);
    ASSERT_EQ(serialize(doc), text);
  });
  for_each_tiling(4, [](const Tiling& t) {
    auto doc = parse_tiling(serialize(t));
    ASSERT_FALSE(doc.labels);
    ASSERT_EQ(doc.tiling, t);
  });
}

TEST(TilingIo, RejectsMalformedDocuments) {
  const char* bad[] = {
      R"({"k":2,"lozenges":[{"down":[0,0],"dir":"N"}],"labels":{"1":[0,0],"1":[1,0]}})",
      R"({"k":2,"lozenges":[{"down":[0,0],"dir":"N"},{"down":[0,0],"dir":"E"}]})",
      R"({"k":2,"lozenges":[{"down":[3,0],"dir":"N"}]})",
      R"({"k":2,"lozenges":[]})",
      R"({"k":2,"lozenges":[{"down":[0,0],"dir":"W"}]})",
      R"({"k":2,"lozenges":[{"down":[0,0],"dir":"N"}],"labels":{"1":[0,0],"2":[0,1]}})",
      R"({"k":0,"lozenges":[]})",
      R"({"k":2,"lozenges":[{"down":[0,0],"dir":"N"}],"k":3})",
      R"([1,2,3])",
  };
  for (const char* text : bad) EXPECT_THROW(parse_tiling(text), MalformedInput) << text;
}

TEST(TilingIo, SyntaxErrorsCarryPosition) {
  try {
    parse_tiling(R"({"k":2,"lozenges":[}")");
    FAIL();
  } catch (const MalformedInput& e) {
    ASSERT_TRUE(e.position());
    EXPECT_EQ(*e.position(), 20u);
  }
}

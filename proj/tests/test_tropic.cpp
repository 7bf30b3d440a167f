#include "cayley/census.hpp"
#include "cayley/tropic.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

using namespace cayley;

namespace {

LiftMatrix small_matrix(int k, std::mt19937& rng, int range) {
  std::uniform_int_distribution<int> entry(-range, range);
  LiftMatrix m(k, std::vector<Rational>(3));
  for (auto& row : m)
    for (auto& q : row) q = entry(rng);
  return m;
}

/// Lowest total height of k copies placed on corners with the given counts.
Rational envelope(const LiftMatrix& m, int nb, int nc) {
  const int k = static_cast<int>(m.size());
  std::optional<Rational> best;
  std::vector<int> pick(k, 0);
  for (;;) {
    int b = 0, c = 0;
    Rational sum = 0;
    for (int i = 0; i < k; ++i) {
      b += pick[i] == 1;
      c += pick[i] == 2;
      sum += m[i][pick[i]];
    }
    if (b == nb && c == nc && (!best || sum < *best)) best = sum;
    int i = 0;
    while (i < k && ++pick[i] == 3) pick[i++] = 0;
    if (i == k) break;
  }
  return *best;
}

/// The lower envelope over T_k, read off as one affine piece per unit
/// triangle; adjacent triangles with the same piece share a cell.
MixedSubdivision envelope_oracle(const LiftMatrix& m) {
  const int k = static_cast<int>(m.size());
  using Affine = std::array<Rational, 3>;  // value at origin, slope in x, slope in y
  std::vector<Affine> piece(static_cast<std::size_t>(k) * k);
  for (const GridCoord& t : all_cells(k)) {
    const auto p = corners(t);
    // Corners are (x,y), (x+1,y), (x,y+1) for UP; (x+1,y), (x,y+1), (x+1,y+1) for DOWN.
    Rational v[3];
    for (int i = 0; i < 3; ++i) v[i] = envelope(m, p[i][0], p[i][1]);
    Rational sx, sy;
    if (t.orient == Orient::Up) {
      sx = v[1] - v[0];
      sy = v[2] - v[0];
    } else {
      sx = v[2] - v[1];
      sy = v[2] - v[0];
    }
    piece[cell_index(k, t)] = {v[0] - sx * p[0][0] - sy * p[0][1], sx, sy};
  }
  detail::UnionFind uf(k * k);
  for (const GridCoord& u : up_cells(k))
    for (Dir e : {Dir::Hyp, Dir::E, Dir::N}) {
      const GridCoord d = down_across(u, e);
      if (in_grid(d, k) && piece[cell_index(k, u)] == piece[cell_index(k, d)])
        uf.unite(cell_index(k, u), cell_index(k, d));
    }
  std::map<int, Region> groups;
  for (const GridCoord& t : all_cells(k)) groups[uf.find(cell_index(k, t))].push_back(t);
  MixedSubdivision ms{k, {}, {}};
  for (auto& [root, cells] : groups) {
    const Affine& f = piece[root];
    MixedCell c{make_region(cells), {}};
    const Rational lin[3] = {0, f[1], f[2]};
    for (int i = 0; i < k; ++i) {
      Summand s = 0;
      std::optional<Rational> best;
      for (int j = 0; j < 3; ++j) {
        const Rational v = m[i][j] - lin[j];
        if (!best || v < *best) {
          best = v;
          s = static_cast<Summand>(1u << j);
        } else if (v == *best) {
          s |= static_cast<Summand>(1u << j);
        }
      }
      c.summands.push_back(s);
    }
    ms.cells.push_back(std::move(c));
  }
  std::sort(ms.cells.begin(), ms.cells.end(),
            [](const MixedCell& p, const MixedCell& q) { return p.support[0] < q.support[0]; });
  return ms;
}

LiftMatrix shifted(LiftMatrix m, std::size_t row, std::size_t col, const Rational& r, const Rational& c) {
  for (auto& q : m[row]) q += r;
  for (auto& x : m) x[col] += c;
  return m;
}

}  // namespace

TEST(TropicalType, Examples) {
  const LiftMatrix zeros(2, std::vector<Rational>(4, 0));
  EXPECT_EQ(tropical_type(zeros, {0, 0, 0}), (TropicalType{15, 15}));
  const LiftMatrix row{{0, 0, 1}};
  EXPECT_EQ(tropical_type(row, {0, 0}), (TropicalType{3}));
  EXPECT_EQ(tropical_type(row, {0, 0, 0}), (TropicalType{3}));
  EXPECT_THROW(tropical_type(row, {0}), DomainError);
}

TEST(TropicalType, GenericPointIsSingletons) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const LiftMatrix m = random_lift_matrix(5, seed);
    const TropicalType t = tropical_type(m, {Rational(1, 7919), Rational(-3, 7907)});
    for (auto s : t) EXPECT_EQ(std::popcount(s), 1);
  }
}

TEST(Arrangement, SingleLine) {
  const LiftMatrix m{{Rational(1, 2), 3, -1}};
  const auto v = arrangement_vertices(m);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].type, (TropicalType{7}));
  EXPECT_EQ(v[0].x[0], Rational(-3, 2));
  EXPECT_EQ(v[0].x[1], Rational(-4));
}

TEST(Arrangement, GenericVertexCountAndExcess) {
  for (int k = 1; k <= 6; ++k)
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const LiftMatrix m = random_lift_matrix(k, 100 * k + seed);
      const auto v = arrangement_vertices(m);
      EXPECT_EQ(static_cast<std::int64_t>(v.size()), binomial(k + 1, 2));
      for (const auto& p : v) {
        int excess = 0;
        for (auto s : p.type) excess += std::popcount(s) - 1;
        EXPECT_EQ(excess, 2);
        EXPECT_EQ(tropical_type(m, {p.x[0], p.x[1]}), p.type);
      }
    }
}

TEST(Arrangement, TypesStableUnderRowShift) {
  const LiftMatrix m = random_lift_matrix(2, 9);
  auto types = [](const LiftMatrix& a) {
    std::multiset<TropicalType> s;
    for (const auto& p : arrangement_vertices(a)) s.insert(p.type);
    return s;
  };
  EXPECT_EQ(types(m), types(shifted(m, 1, 0, Rational(17, 3), 0)));
}

TEST(Coherent, ZeroMatrixIsTrivial) {
  for (int k = 1; k <= 4; ++k) {
    const auto ms = coherent_subdivision(LiftMatrix(k, std::vector<Rational>(3, 0)));
    ASSERT_EQ(ms.cells.size(), 1u);
    EXPECT_EQ(ms.cells[0].summands, std::vector<Summand>(k, kABC));
    EXPECT_EQ(ms.cells[0].support.size(), static_cast<std::size_t>(k * k));
  }
  const LiftMatrix rows{{0, 0, 0}, {Rational(5, 2), Rational(5, 2), Rational(5, 2)}};
  EXPECT_EQ(coherent_subdivision(rows).cells.size(), 1u);
}

TEST(Coherent, GenericIsFineAndCertifiedByTheMatrix) {
  for (int k = 1; k <= 6; ++k)
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const LiftMatrix m = random_lift_matrix(k, 1000 + 10 * k + seed);
      const auto ms = coherent_subdivision(m);
      ASSERT_TRUE(verify_mixed_subdivision(ms));
      ASSERT_TRUE(ms.fine());
      ASSERT_EQ(static_cast<std::int64_t>(ms.cells.size()), binomial(k + 1, 2));
      EXPECT_TRUE(matrix_certifies(m, ms));
      EXPECT_TRUE(check_regular_triangulation(to_triangulation(ms)).regular());
    }
}

TEST(Coherent, NegatedMatrixIsNotAWitness) {
  // Upper hull heights give a different subdivision for k >= 2 generically.
  int rejected = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    LiftMatrix m = random_lift_matrix(3, seed);
    const auto ms = coherent_subdivision(m);
    for (auto& row : m)
      for (auto& q : row) q = -q;
    rejected += !matrix_certifies(m, ms);
  }
  EXPECT_EQ(rejected, 10);
}

TEST(Coherent, TranslationInvariance) {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 1 + trial % 5;
    const LiftMatrix m = trial % 2 ? random_lift_matrix(k, trial) : small_matrix(k, rng, 2);
    const std::string base = serialize(coherent_subdivision(m));
    const LiftMatrix s = shifted(m, trial % k, trial % 3, Rational(trial - 7, 3), Rational(2 * trial + 1, 5));
    EXPECT_EQ(serialize(coherent_subdivision(s)), base);
  }
}

TEST(Coherent, MatchesLowerEnvelope) {
  std::mt19937 rng(8);
  for (int k = 1; k <= 3; ++k)
    for (int trial = 0; trial < 150; ++trial) {
      // Small integer entries make many ties, hence coarse subdivisions.
      const LiftMatrix m = trial < 100 ? small_matrix(k, rng, 1 + trial % 3) : random_lift_matrix(k, trial);
      const auto ms = coherent_subdivision(m);
      const auto oracle = envelope_oracle(m);
      ASSERT_EQ(ms.cells.size(), oracle.cells.size()) << lift_matrix_json(m);
      for (std::size_t c = 0; c < ms.cells.size(); ++c) {
        ASSERT_EQ(ms.cells[c].support, oracle.cells[c].support) << lift_matrix_json(m);
        ASSERT_EQ(ms.cells[c].summands, oracle.cells[c].summands) << lift_matrix_json(m);
      }
    }
}

TEST(Coherent, PerturbationRefines) {
  std::mt19937 rng(21);
  int coarse_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int k = 1 + trial % 5;
    const LiftMatrix m = small_matrix(k, rng, 1);
    const auto coarse = coherent_subdivision(m);
    const auto fine = perturbed_subdivision(m);
    ASSERT_TRUE(verify_mixed_subdivision(fine));
    ASSERT_TRUE(fine.fine());
    EXPECT_TRUE(refines(fine, coarse));
    coarse_seen += !coarse.fine();
    if (coarse.fine()) {
      EXPECT_EQ(serialize(fine), serialize(coarse));
    }
  }
  EXPECT_GT(coarse_seen, 10);
}

TEST(Coherent, LabelingAgreesWithZones) {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    const int k = 2 + trial % 4;
    const LiftMatrix m = trial % 2 ? random_lift_matrix(k, trial) : small_matrix(k, rng, 2);
    const auto ms = coherent_subdivision(m);
    Subdivision s{k, {}};
    for (const auto& c : ms.cells) s.cells.push_back(c.support);
    const auto relabeled = label_subdivision(s);
    ASSERT_EQ(relabeled.cells.size(), ms.cells.size());
    // Same cells, with summand columns permuted.
    std::multiset<std::vector<Summand>> ours, theirs;
    for (int i = 0; i < k; ++i) {
      std::vector<Summand> a, b;
      for (std::size_t c = 0; c < ms.cells.size(); ++c) {
        a.push_back(ms.cells[c].summands[i]);
        b.push_back(relabeled.cells[c].summands[i]);
      }
      ours.insert(a);
      theirs.insert(b);
    }
    EXPECT_EQ(ours, theirs) << lift_matrix_json(m);
  }
}

TEST(Coherent, RejectsOtherWidths) {
  EXPECT_THROW(coherent_subdivision(LiftMatrix{{0, 1, 2, 3}}), DomainError);
  EXPECT_THROW(coherent_subdivision(LiftMatrix{{0, 1, 2}, {0, 1}}), MalformedInput);
}

TEST(RegularBound, Values) {
  EXPECT_EQ(count_regular_bound(2, 2), BigCount(30));  // (2e)^2 = 29.55...
  EXPECT_GE(count_regular_bound(2, 2), BigCount(2));
  for (int k = 2; k <= 6; ++k) EXPECT_LE(count_triangulations(k), count_regular_bound(k, 3)) << k;
  for (int k = 2; k <= 6; ++k)
    for (int l = 2; l <= 5; ++l) {
      EXPECT_LT(count_regular_bound(k, l), count_regular_bound(k + 1, l));
      EXPECT_LT(count_regular_bound(k, l), count_regular_bound(k, l + 1));
    }
  EXPECT_THROW(count_regular_bound(1, 3), DomainError);
}

TEST(LiftMatrixIo, Formats) {
  const LiftMatrix want{{0, Rational(1, 2), -3}, {2, 0, Rational(-7, 4)}};
  EXPECT_EQ(parse_lift_matrix("0, 1/2, -3\n2,0,-7/4\n"), want);
  EXPECT_EQ(parse_lift_matrix(R"([["0","1/2",-3],[2,"0","-7/4"]])"), want);
  EXPECT_EQ(parse_lift_matrix(R"({"matrix": [["0","1/2",-3],[2,"0","-7/4"]]})"), want);
  EXPECT_EQ(parse_lift_matrix(lift_matrix_json(want)), want);
  EXPECT_THROW(parse_lift_matrix("1,2\n1,2,3\n"), MalformedInput);
  EXPECT_THROW(parse_lift_matrix("1,x,3\n"), MalformedInput);
  EXPECT_THROW(parse_lift_matrix("[[1,2"), MalformedInput);
  EXPECT_THROW(parse_lift_matrix(""), MalformedInput);
}

TEST(LiftMatrixIo, SeededMatricesAreReproducible) {
  EXPECT_EQ(random_lift_matrix(4, 7), random_lift_matrix(4, 7));
  EXPECT_NE(random_lift_matrix(4, 7), random_lift_matrix(4, 8));
  EXPECT_TRUE(is_generic(random_lift_matrix(6, 123)));
}

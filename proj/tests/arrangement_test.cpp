#include "pebble/arrangement.hpp"
#include "pebble/error.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace pebble;

namespace {

Arrangement build(Family f, int n, std::uint64_t seed = 1) { return Arrangement::build(generate(f, n, seed)); }

// Independent cell oracle: try every one of the 2^n sign vectors.
std::set<SignVector> brute_force_cells(const std::vector<Line>& lines)
{
  std::set<SignVector> out;
  const std::size_t n = lines.size();
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    std::vector<HalfPlane> system;
    SignVector signs;
    for (std::size_t l = 0; l < n; ++l) {
      const Side s = (mask >> l) & 1U ? Side::Minus : Side::Plus;
      system.push_back({lines[l], s});
      signs.push_back(s);
    }
    if (feasible(system))
      out.insert(signs);
  }
  return out;
}

std::int64_t one_d_closed_form(int boxes)
{
  return boxes % 2 == 0 ? boxes * (boxes + 4) / 4 : (boxes + 1) * (boxes + 3) / 4 - 1;
}

} // namespace

TEST(Build, SingleLine)
{
  const auto arr = Arrangement::build({Line(1, 0, 0)});
  EXPECT_EQ(arr.num_cells(), 2U);
  EXPECT_EQ(arr.edges().size(), 1U);
  EXPECT_EQ(arr.rank(0), 1);
  EXPECT_EQ(arr.f_value(), 3);
  // b_1 is the Plus cell; the half split resolves the smaller side away from it.
  EXPECT_EQ(arr.side(0, 0), Side::Plus);
  EXPECT_EQ(arr.line_info(0).smaller_side, Side::Minus);
}

TEST(Build, TwoParallelLinesFormAPath)
{
  const auto arr = build(Family::Parallel, 2);
  EXPECT_EQ(arr.num_cells(), 3U);
  EXPECT_EQ(arr.edges(), (std::vector<std::pair<BoxId, BoxId>>{{0, 1}, {1, 2}}));
}

TEST(Build, FiveLinesGeneralPositionHaveSixteenCells)
{
  for (std::uint64_t seed = 1; seed <= 5; ++seed)
    EXPECT_EQ(build(Family::GeneralPosition, 5, seed).num_cells(), 16U);
}

TEST(Build, RejectsDuplicatesAndEmptyInput)
{
  EXPECT_THROW(Arrangement::build({}), InputError);
  EXPECT_THROW(Arrangement::build({Line(1, 0, 0), Line(0, 1, 0), Line(-2, 0, 0)}), InputError);
}

TEST(Build, MatchesBruteForceEnumeration)
{
  for (Family f : {Family::GeneralPosition, Family::Parallel, Family::Grid, Family::Concurrent})
    for (int n = 1; n <= 7; ++n) {
      const auto lines = generate(f, n, 3);
      const auto arr = Arrangement::build(lines);
      std::set<SignVector> built;
      for (const Cell& c : arr.cells())
        built.insert(c.signs);
      EXPECT_EQ(built, brute_force_cells(lines)) << to_string(f) << " n=" << n;
    }
}

TEST(Build, WitnessesRealizeSignsAndOrderIsCanonical)
{
  const auto arr = build(Family::GeneralPosition, 6, 9);
  for (const Cell& c : arr.cells()) {
    for (LineId l = 0; l < arr.num_lines(); ++l)
      EXPECT_EQ(side_of(arr.line(l), c.witness), c.signs[l] == Side::Plus ? Position::Plus : Position::Minus);
    if (c.id > 0)
      EXPECT_LT(arr.cell(c.id - 1).signs, c.signs);
  }
}

TEST(Build, DeterministicAndIncremental)
{
  const auto lines = generate(Family::GeneralPosition, 6, 21);
  const auto a = Arrangement::build(lines);
  const auto b = Arrangement::build(lines);
  for (BoxId i = 0; i < a.num_cells(); ++i) {
    EXPECT_EQ(a.cell(i).signs, b.cell(i).signs);
    EXPECT_EQ(a.cell(i).witness, b.cell(i).witness);
  }
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto prefix = Arrangement::build({lines.begin(), lines.begin() + static_cast<std::ptrdiff_t>(k)});
    const auto next = Arrangement::build({lines.begin(), lines.begin() + static_cast<std::ptrdiff_t>(k + 1)});
    std::set<SignVector> projected;
    for (const Cell& c : next.cells())
      projected.insert(SignVector(c.signs.begin(), c.signs.begin() + static_cast<std::ptrdiff_t>(k)));
    std::set<SignVector> before;
    for (const Cell& c : prefix.cells())
      before.insert(c.signs);
    EXPECT_EQ(projected, before);
  }
}

TEST(Rank, ParallelLinesMatchOneDimensionalCounts)
{
  for (int boxes = 2; boxes <= 10; ++boxes) {
    const auto arr = build(Family::Parallel, boxes - 1);
    for (LineId l = 0; l < arr.num_lines(); ++l) {
      const int i = static_cast<int>(l) + 1;
      EXPECT_EQ(arr.rank(l), std::min(i, boxes - i));
      // Line i separates b_1..b_i from the rest.
      for (BoxId b = 0; b < arr.num_cells(); ++b)
        EXPECT_EQ(arr.side(l, b) == arr.side(l, 0), static_cast<int>(b) < i);
    }
    EXPECT_EQ(arr.f_value(), one_d_closed_form(boxes));
  }
}

TEST(Rank, ThreeParallelLinesSmallerSides)
{
  const auto arr = build(Family::Parallel, 3);
  ASSERT_EQ(arr.num_cells(), 4U);
  auto smaller = [&](LineId l) {
    std::vector<BoxId> out;
    for (BoxId b = 0; b < 4; ++b)
      if (arr.on_smaller_side(l, b))
        out.push_back(b);
    return out;
  };
  EXPECT_EQ(smaller(0), (std::vector<BoxId>{0}));
  EXPECT_EQ(smaller(1), (std::vector<BoxId>{2, 3}));
  EXPECT_EQ(smaller(2), (std::vector<BoxId>{3}));
  EXPECT_EQ(arr.f_value(), 8); // 1/4 * 4 * (4 + 4)
}

TEST(Rank, GeneralPositionFiveLines)
{
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto arr = build(Family::GeneralPosition, 5, seed);
    int sum = 0;
    for (LineId l = 0; l < 5; ++l) {
      EXPECT_GE(arr.rank(l), 4);
      EXPECT_LE(arr.rank(l), 8);
      sum += arr.rank(l);
    }
    EXPECT_GE(sum, 30);
    EXPECT_LE(sum, 33);
    EXPECT_GE(arr.f_value(), 46);
    EXPECT_LE(arr.f_value(), 49);
  }
}

TEST(Rank, LineInfoInvariants)
{
  for (Family f : {Family::GeneralPosition, Family::Parallel, Family::Grid, Family::Concurrent})
    for (int n = 1; n <= 8; ++n) {
      const auto arr = build(f, n, 4);
      const int r = static_cast<int>(arr.num_cells());
      for (LineId l = 0; l < arr.num_lines(); ++l) {
        const auto& info = arr.line_info(l);
        EXPECT_EQ(info.count(Side::Plus) + info.count(Side::Minus), r);
        EXPECT_EQ(info.rank, std::min(info.count(Side::Plus), info.count(Side::Minus)));
        EXPECT_LE(2 * info.rank, r);
        EXPECT_EQ(info.count(info.smaller_side), info.rank);
        if (2 * info.rank == r)
          EXPECT_NE(arr.side(l, 0), info.smaller_side);
      }
    }
}

TEST(GeneralPosition, RegionCountAndRankBounds)
{
  for (int n = 1; n <= 10; ++n)
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto arr = build(Family::GeneralPosition, n, seed);
      const std::size_t expected = 1 + n + n * (n - 1) / 2;
      EXPECT_EQ(arr.num_cells(), expected);
      for (LineId l = 0; l < arr.num_lines(); ++l) {
        EXPECT_GE(arr.rank(l), n);
        EXPECT_LE(2 * arr.rank(l), static_cast<int>(expected));
      }
    }
}

TEST(Distance, Examples)
{
  const auto arr = build(Family::Parallel, 5); // 6 boxes in a row
  EXPECT_EQ(arr.dual_distance(2, 2), 0);
  EXPECT_EQ(arr.dual_distance(2, 3), 1);
  EXPECT_EQ(arr.dual_distance(0, 5), 5);
}

TEST(Distance, BfsEqualsHamming)
{
  for (Family f : {Family::GeneralPosition, Family::Parallel, Family::Grid, Family::Concurrent})
    for (int n = 1; n <= 6; ++n) {
      const auto arr = build(f, n, 8);
      for (BoxId u = 0; u < arr.num_cells(); ++u) {
        const auto bfs = arr.bfs_distances(u);
        for (BoxId v = 0; v < arr.num_cells(); ++v)
          ASSERT_EQ(bfs[v], arr.dual_distance(u, v)) << to_string(f) << " n=" << n;
      }
    }
}

TEST(Distance, ShortestPathCrossesEachSeparatingLineOnce)
{
  const auto arr = build(Family::GeneralPosition, 6, 2);
  for (BoxId u = 0; u < arr.num_cells(); ++u)
    for (BoxId v = 0; v < arr.num_cells(); ++v) {
      const auto path = arr.shortest_path(u, v);
      ASSERT_EQ(static_cast<int>(path.size()) - 1, arr.dual_distance(u, v));
      std::set<LineId> crossed;
      for (std::size_t k = 0; k + 1 < path.size(); ++k)
        crossed.insert(arr.separating_line(path[k], path[k + 1]));
      EXPECT_EQ(static_cast<int>(crossed.size()), arr.dual_distance(u, v));
    }
}

TEST(BallSize, Examples)
{
  const auto arr = build(Family::GeneralPosition, 6, 5);
  for (BoxId u = 0; u < arr.num_cells(); ++u) {
    EXPECT_EQ(arr.ball_size(u, 1), static_cast<int>(arr.neighbors()[u].size()));
    EXPECT_EQ(arr.ball_size(u, 6), static_cast<int>(arr.num_cells()) - 1);
  }
  EXPECT_THROW((void)arr.ball_size(0, 0), InputError);
}

TEST(BallSize, TriangleCellOfThreeLines)
{
  const auto arr = Arrangement::build({Line(1, 0, 0), Line(0, 1, 0), Line(1, 1, -1)});
  ASSERT_EQ(arr.num_cells(), 7U);
  // The bounded triangle x > 0, y > 0, x + y < 1.
  const SignVector triangle{Side::Plus, Side::Plus, Side::Minus};
  const auto it = std::find_if(arr.cells().begin(), arr.cells().end(),
                               [&](const Cell& c) { return c.signs == triangle; });
  ASSERT_NE(it, arr.cells().end());
  EXPECT_EQ(arr.ball_size(it->id, 1), 3);
}

TEST(BallSize, SelfExcludedBoundInGeneralPosition)
{
  for (int n = 4; n <= 9; ++n)
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const auto arr = build(Family::GeneralPosition, n, seed);
      for (BoxId u = 0; u < arr.num_cells(); ++u)
        for (int r = 1; 2 * r < n; ++r)
          EXPECT_LE(arr.ball_size(u, r), r * n);
    }
}

TEST(Generate, Families)
{
  const auto parallel = generate(Family::Parallel, 3, 99);
  EXPECT_EQ(parallel, (std::vector<Line>{Line(1, 0, -3), Line(1, 0, -2), Line(1, 0, -1)}));

  const auto concurrent = Arrangement::build(generate(Family::Concurrent, 4, 0));
  EXPECT_EQ(concurrent.num_cells(), 8U);
  for (const Line& l : concurrent.lines())
    EXPECT_TRUE(l.passes_through({0, 0}));

  EXPECT_EQ(generate(Family::GeneralPosition, 7, 42), generate(Family::GeneralPosition, 7, 42));
  EXPECT_NE(generate(Family::GeneralPosition, 7, 42), generate(Family::GeneralPosition, 7, 43));
  EXPECT_EQ(Arrangement::build(generate(Family::Grid, 4, 0)).num_cells(), 9U);
  EXPECT_THROW(generate(Family::Grid, 0, 0), InputError);
  EXPECT_EQ(parse_family("concurrent"), Family::Concurrent);
  EXPECT_THROW(parse_family("spiral"), InputError);
}

TEST(Generate, GeneralPositionHasNoParallelOrConcurrentLines)
{
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto lines = generate(Family::GeneralPosition, 9, seed);
    for (std::size_t i = 0; i < lines.size(); ++i)
      for (std::size_t j = i + 1; j < lines.size(); ++j) {
        ASSERT_FALSE(lines[i].parallel_to(lines[j]));
        const auto p = intersect(lines[i], lines[j]);
        for (std::size_t k = j + 1; k < lines.size(); ++k)
          ASSERT_FALSE(lines[k].passes_through(*p));
      }
  }
}

TEST(Display, PolygonsCoverEveryCell)
{
  for (Family f : {Family::GeneralPosition, Family::Parallel, Family::Concurrent}) {
    const auto arr = build(f, 5, 7);
    const auto box = arr.display_box();
    for (const Cell& c : arr.cells()) {
      const auto poly = arr.polygon(c.id, box);
      EXPECT_GE(poly.size(), 3U) << to_string(f) << " cell " << c.id;
    }
  }
}

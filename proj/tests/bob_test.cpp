#include "pebble/alice.hpp"
#include "pebble/bob.hpp"
#include "pebble/error.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <random>

using namespace pebble;

namespace {

std::shared_ptr<const Arrangement> make(Family f, int n, std::uint64_t seed = 1)
{
  return std::make_shared<const Arrangement>(Arrangement::build(generate(f, n, seed)));
}

std::shared_ptr<const Arrangement> single_line()
{
  return std::make_shared<const Arrangement>(Arrangement::build({Line(1, 0, 0)}));
}

/// Replies from a fixed script of decrease/increase choices relative to smaller sides.
class ScriptedAlice final : public AliceStrategy {
public:
  explicit ScriptedAlice(std::vector<Reply> script) : script_(std::move(script)) {}
  std::string name() const override { return "scripted"; }
  Side respond(const GameState& state, LineId line) override
  {
    const Side smaller = state.arrangement().line_info(line).smaller_side;
    const Reply r = next_ < script_.size() ? script_[next_++] : Reply::Decreased;
    return r == Reply::Decreased ? smaller : opposite(smaller);
  }

private:
  std::vector<Reply> script_;
  std::size_t next_ = 0;
};

/// Always removes from one fixed geometric side.
class ConstantAlice final : public AliceStrategy {
public:
  explicit ConstantAlice(Side s) : side_(s) {}
  std::string name() const override { return "constant"; }
  Side respond(const GameState&, LineId) override { return side_; }

private:
  Side side_;
};

Distribution random_distribution(std::size_t boxes, std::int64_t sum, std::mt19937_64& rng)
{
  Distribution p(boxes, 1);
  for (std::int64_t k = static_cast<std::int64_t>(boxes); k < sum; ++k)
    ++p[rng() % boxes];
  return p;
}

} // namespace

TEST(Reference, Examples)
{
  const auto three = make(Family::Parallel, 3);
  const auto ref = reference_distribution(*three);
  EXPECT_EQ(ref.pebbles, (Distribution{2, 1, 2, 3}));
  EXPECT_EQ(ref.total, 8);

  const auto one = reference_distribution(*single_line());
  EXPECT_EQ(one.pebbles, (Distribution{1, 2}));
  EXPECT_EQ(one.total, 3);

  for (Family f : {Family::GeneralPosition, Family::Parallel, Family::Grid, Family::Concurrent})
    for (int n = 1; n <= 8; ++n) {
      const auto arr = make(f, n, 2);
      EXPECT_EQ(reference_distribution(*arr).total, arr->f_value());
    }
}

TEST(PickFocal, Examples)
{
  const auto three = make(Family::Parallel, 3);
  const auto ref = reference_distribution(*three);
  EXPECT_EQ(pick_focal(ref, Distribution{1, 1, 2, 3}), BoxId{0});
  EXPECT_EQ(pick_focal(ref, Distribution{2, 1, 2, 2}), BoxId{3});
  EXPECT_THROW(pick_focal(ref, ref.pebbles), StrategyError);
}

TEST(OrderLines, ThreeParallelLines)
{
  const auto three = make(Family::Parallel, 3);
  EXPECT_EQ(order_lines(*three, 3), (std::vector<LineId>{1, 2}));
  EXPECT_EQ(order_lines(*three, 0), (std::vector<LineId>{0}));
  EXPECT_EQ(three->rank(1), 2);
  EXPECT_EQ(three->rank(2), 1);
}

TEST(OrderLines, SameRankLinesOrderedByCharacteristicVector)
{
  // Grid x=1, y=1, x=2, y=2: every line has rank 3.
  const auto grid = make(Family::Grid, 4);
  for (LineId l = 0; l < 4; ++l)
    ASSERT_EQ(grid->rank(l), 3);
  for (BoxId focal = 0; focal < grid->num_cells(); ++focal) {
    const auto s = order_lines(*grid, focal);
    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
      std::vector<int> a;
      std::vector<int> b;
      for (BoxId box = 0; box < grid->num_cells(); ++box) {
        a.push_back(grid->on_smaller_side(s[k], box));
        b.push_back(grid->on_smaller_side(s[k + 1], box));
      }
      EXPECT_GT(a, b) << "focal " << focal;
    }
  }
}

TEST(OrderLines, SequenceInvariants)
{
  for (Family f : {Family::GeneralPosition, Family::Parallel, Family::Grid, Family::Concurrent})
    for (int n = 1; n <= 7; ++n) {
      const auto arr = make(f, n, 5);
      const auto ref = reference_distribution(*arr);
      for (BoxId focal = 0; focal < arr->num_cells(); ++focal) {
        const auto s = order_lines(*arr, focal);
        EXPECT_EQ(static_cast<std::int64_t>(s.size()), ref.pebbles[focal] - 1);
        for (std::size_t k = 0; k < s.size(); ++k) {
          EXPECT_TRUE(arr->on_smaller_side(s[k], focal));
          if (k + 1 < s.size())
            EXPECT_GE(arr->rank(s[k]), arr->rank(s[k + 1]));
        }
      }
    }
}

TEST(ClassifyPair, RedAndGreen)
{
  const auto three = make(Family::Parallel, 3);
  const auto red = classify_pair(*three, 1, 2);
  EXPECT_EQ(red.color, PairColor::Red);
  EXPECT_EQ(red.delta_total, 2 * (three->rank(2) - three->rank(1)));
  EXPECT_EQ(red.delta_total, -2);
  EXPECT_EQ(red.delta[3], 0); // b_4 is on both smaller sides
  EXPECT_THROW(classify_pair(*three, 2, 1), StrategyError);

  const auto grid = make(Family::Grid, 4);
  for (BoxId focal = 0; focal < grid->num_cells(); ++focal) {
    const auto s = order_lines(*grid, focal);
    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
      const auto green = classify_pair(*grid, s[k], s[k + 1]);
      EXPECT_EQ(green.color, PairColor::Green);
      EXPECT_EQ(green.delta_total, 0);
      EXPECT_LT(green.lex_sign, 0);
      EXPECT_EQ(green.delta[focal], 0);
    }
  }
}

TEST(Stage, StackSemantics)
{
  Stage stage(7, {4, 2, 9});
  EXPECT_EQ(stage.current_line(), 4U);
  auto step = stage.advance(Reply::Decreased);
  EXPECT_EQ(step.play, LineId{2});
  step = stage.advance(Reply::Decreased);
  EXPECT_EQ(step.play, LineId{9});
  EXPECT_EQ(stage.stack().size(), 2U);
  step = stage.advance(Reply::Increased);
  EXPECT_EQ(step.play, LineId{2});
  ASSERT_TRUE(step.pair.has_value());
  EXPECT_EQ(*step.pair, (std::pair<std::size_t, std::size_t>{1, 2}));
  step = stage.advance(Reply::Increased);
  EXPECT_EQ(step.play, LineId{4});
  EXPECT_EQ(*step.pair, (std::pair<std::size_t, std::size_t>{0, 1}));
  step = stage.advance(Reply::Increased);
  EXPECT_EQ(step.end, StageEnd::IncreasedFirst);
  EXPECT_THROW(stage.advance(Reply::Decreased), StateError);

  Stage short_stage(0, {3});
  EXPECT_EQ(short_stage.advance(Reply::Decreased).end, StageEnd::FocalEmptied);
}

// All four reply combinations from (2,1,2,2) on three parallel lines end in at most two moves.
TEST(Monovariant, ThreeParallelLinesTwoPly)
{
  const auto three = make(Family::Parallel, 3);
  for (Reply r1 : {Reply::Decreased, Reply::Increased})
    for (Reply r2 : {Reply::Decreased, Reply::Increased}) {
      GameState s(three, {2, 1, 2, 2});
      MonovariantBob bob(*three);
      ScriptedAlice alice({r1, r2});
      const auto out = play(s, alice, bob, 100);
      EXPECT_EQ(out.status, Status::BobWon);
      EXPECT_LE(out.rounds, 2);
      EXPECT_EQ(bob.stage()->focal(), 3U);
      if (r1 == Reply::Increased)
        EXPECT_EQ(s.pebbles(), (Distribution{1, 0, 3, 3}));
    }
}

TEST(Monovariant, ThreeParallelLinesOnePly)
{
  const auto three = make(Family::Parallel, 3);
  {
    GameState s(three, {1, 1, 2, 3});
    MonovariantBob bob(*three);
    ScriptedAlice alice({Reply::Decreased});
    EXPECT_EQ(play(s, alice, bob, 10).rounds, 1);
    EXPECT_EQ(s.pebbles()[0], 0);
  }
  {
    GameState s(three, {1, 1, 2, 3});
    MonovariantBob bob(*three);
    ScriptedAlice alice({Reply::Increased});
    EXPECT_EQ(play(s, alice, bob, 10).rounds, 1);
    EXPECT_EQ(s.pebbles(), (Distribution{2, 0, 1, 2}));
  }
}

TEST(Monovariant, IncreasingFirstLineEndsStage)
{
  const auto arr = make(Family::GeneralPosition, 3, 4);
  const auto ref = reference_distribution(*arr);
  // Reference everywhere except one box that is one short.
  Distribution p = ref.pebbles;
  BoxId focal = 0;
  while (ref.pebbles[focal] < 3)
    ++focal;
  p[focal] -= 1;
  GameState s(arr, p);
  MonovariantBob bob(*arr);
  const LineId first = bob.choose_line(s);
  EXPECT_EQ(bob.stage()->focal(), focal);
  const Move m{first, opposite(arr->line_info(first).smaller_side)};
  s.apply(m);
  bob.observe(s, m);
  EXPECT_EQ(bob.stage()->end(), StageEnd::IncreasedFirst);
  EXPECT_EQ(bob.stats().increased_first, 1);
}

TEST(Monovariant, DefeatsBaselinesFromOneShort)
{
  std::mt19937_64 rng(99);
  for (Family f : {Family::GeneralPosition, Family::Parallel, Family::Grid, Family::Concurrent})
    for (int n = 1; n <= 3; ++n) {
      const auto arr = make(f, n, 6);
      for (int trial = 0; trial < 10; ++trial) {
        const auto p = random_distribution(arr->num_cells(), arr->f_value() - 1, rng);
        for (const char* name : {"random", "greedy", "autopilot"}) {
          GameState s(arr, p);
          s.set_recording(false);
          auto alice = make_alice(name, *arr, static_cast<std::uint64_t>(trial));
          MonovariantBob bob(*arr);
          const auto out = play(s, *alice, bob, default_max_rounds);
          ASSERT_EQ(out.status, Status::BobWon) << to_string(f) << " n=" << n << " alice=" << name;
        }
      }
    }
}

TEST(Monovariant, RejectsTotalsAtOrAboveF)
{
  const auto arr = make(Family::Parallel, 3);
  const auto ref = reference_distribution(*arr);
  EXPECT_THROW(make_bob("monovariant", *arr, ref.pebbles, 0), StrategyError);
  GameState s(arr, ref.pebbles);
  MonovariantBob bob(*arr);
  EXPECT_THROW(bob.choose_line(s), StrategyError);
}

TEST(SmallPairStrategy, SingleLine)
{
  const auto arr = single_line();
  for (Side side : {Side::Plus, Side::Minus}) {
    GameState s(arr, {1, 1});
    SmallPairBob bob(*arr, s.pebbles());
    EXPECT_EQ(bob.choose_line(s), 0U);
    ConstantAlice alice(side);
    EXPECT_EQ(play(s, alice, bob, 5).rounds, 1);
  }
}

TEST(SmallPairStrategy, PureAlicePoliciesLoseQuickly)
{
  const auto arr = make(Family::Parallel, 3);
  const Distribution start{1, 9, 9, 2};
  for (Side side : {Side::Plus, Side::Minus}) {
    GameState s(arr, start);
    SmallPairBob bob(*arr, start);
    EXPECT_EQ(bob.pair(), (std::pair<BoxId, BoxId>{0, 3}));
    EXPECT_EQ(bob.path_lines().size(), 3U);
    ConstantAlice alice(side);
    const auto out = play(s, alice, bob, 100);
    EXPECT_EQ(out.status, Status::BobWon);
    EXPECT_LE(out.rounds, start[0] + start[3]);
  }
}

TEST(SmallPairStrategy, PairSumIsConstant)
{
  const auto arr = make(Family::GeneralPosition, 5, 3);
  std::mt19937_64 rng(4);
  int games = 0;
  for (int trial = 0; trial < 200 && games < 30; ++trial) {
    Distribution p(arr->num_cells());
    for (auto& v : p)
      v = 1 + static_cast<std::int64_t>(rng() % 4);
    if (!find_small_pair(*arr, p))
      continue;
    ++games;
    GameState s(arr, p);
    SmallPairBob bob(*arr, p);
    RandomAlice alice(static_cast<std::uint64_t>(trial));
    const auto [u, v] = bob.pair();
    const auto sum = p[u] + p[v];
    while (s.ongoing()) {
      const LineId l = bob.choose_line(s);
      const Move m{l, alice.respond(s, l)};
      const auto pu = s.pebbles()[u];
      s.apply(m);
      bob.observe(s, m);
      EXPECT_EQ(s.pebbles()[u] + s.pebbles()[v], sum);
      EXPECT_EQ(std::abs(s.pebbles()[u] - pu), 1);
      ASSERT_LT(s.round(), 1000);
    }
  }
  EXPECT_GT(games, 0);
}

TEST(SmallPairStrategy, InapplicableWithoutSmallPair)
{
  const auto arr = make(Family::Parallel, 3);
  EXPECT_THROW(SmallPairBob(*arr, Distribution{2, 1, 2, 3}), StrategyError);
}

TEST(RandomBobStrategy, DeterministicAndHarmlessAgainstAutopilot)
{
  const auto arr = make(Family::GeneralPosition, 5, 8);
  RandomBob a(5);
  RandomBob b(5);
  GameState s(arr, Distribution(arr->num_cells(), 1));
  for (int i = 0; i < 50; ++i)
    EXPECT_EQ(a.choose_line(s), b.choose_line(s));

  RandomBob only(1);
  GameState one(single_line(), {1, 2});
  for (int i = 0; i < 20; ++i)
    EXPECT_EQ(only.choose_line(one), 0U);

  GameState game(arr, reference_distribution(*arr).pebbles);
  AutopilotAlice alice(Orientation::optimal(*arr), true);
  RandomBob bob(123);
  EXPECT_EQ(play(game, alice, bob, 10'000).status, Status::Ongoing);
}

TEST(MakeBob, Names)
{
  const auto arr = single_line();
  const Distribution low{1, 1};
  EXPECT_EQ(make_bob("monovariant", *arr, low, 0)->name(), "monovariant");
  EXPECT_EQ(make_bob("smallpair", *arr, low, 0)->name(), "smallpair");
  EXPECT_EQ(make_bob("random", *arr, low, 0)->name(), "random");
  EXPECT_THROW(make_bob("optimal", *arr, low, 0), InputError);
}

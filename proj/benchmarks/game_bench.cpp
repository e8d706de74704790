#include "pebble/alice.hpp"
#include "pebble/bob.hpp"

#include <benchmark/benchmark.h>

using namespace pebble;

namespace {

std::shared_ptr<const Arrangement> arrangement(int n)
{
  return std::make_shared<const Arrangement>(Arrangement::build(generate(Family::GeneralPosition, n, 1)));
}

} // namespace

static void BM_AutopilotRounds(benchmark::State& state)
{
  const auto arr = arrangement(static_cast<int>(state.range(0)));
  const auto sigma = Orientation::optimal(*arr);
  for (auto _ : state) {
    GameState game(arr, autopilot_distribution(*arr, sigma));
    game.set_recording(false);
    AutopilotAlice alice(sigma);
    RandomBob bob(7);
    benchmark::DoNotOptimize(play(game, alice, bob, 1000));
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_AutopilotRounds)->Arg(4)->Arg(8);

static void BM_MonovariantGame(benchmark::State& state)
{
  const auto arr = arrangement(static_cast<int>(state.range(0)));
  const auto p = one_short_distribution(*arr);
  for (auto _ : state) {
    GameState game(arr, p);
    game.set_recording(false);
    GreedyAlice alice;
    MonovariantBob bob(*arr);
    benchmark::DoNotOptimize(play(game, alice, bob));
  }
}
BENCHMARK(BM_MonovariantGame)->DenseRange(2, 6, 2);

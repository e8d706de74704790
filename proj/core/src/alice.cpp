#include "pebble/alice.hpp"

#include "pebble/error.hpp"

#include <algorithm>
#include <limits>

namespace pebble {

Orientation Orientation::optimal(const Arrangement& arr)
{
  std::vector<Side> minus(arr.num_lines());
  for (LineId l = 0; l < arr.num_lines(); ++l)
    minus[l] = arr.line_info(l).smaller_side;
  return Orientation(std::move(minus));
}

int Orientation::minus_count(const Arrangement& arr, BoxId b) const
{
  int count = 0;
  for (LineId l = 0; l < minus_.size(); ++l)
    count += arr.side(l, b) == minus_[l];
  return count;
}

Distribution autopilot_distribution(const Arrangement& arr, const Orientation& sigma)
{
  if (sigma.size() != arr.num_lines())
    throw InputError("orientation does not match the arrangement");
  Distribution p(arr.num_cells());
  for (BoxId b = 0; b < arr.num_cells(); ++b)
    p[b] = sigma.minus_count(arr, b) + 1;
  return p;
}

Distribution one_short_distribution(const Arrangement& arr)
{
  Distribution p = autopilot_distribution(arr, Orientation::optimal(arr));
  const auto top = std::max_element(p.begin(), p.end());
  --*top;
  return p;
}

std::vector<std::int64_t> autopilot_residual(const Arrangement& arr, const Orientation& sigma,
                                             std::span<const std::int64_t> pebbles)
{
  const Distribution expected = autopilot_distribution(arr, sigma);
  std::vector<std::int64_t> residual(expected.size());
  for (std::size_t b = 0; b < expected.size(); ++b)
    residual[b] = pebbles[b] - expected[b];
  return residual;
}

Side AutopilotAlice::respond(const GameState&, LineId line)
{
  const Side side = sigma_.minus_side(line);
  sigma_.flip(line);
  return side;
}

void AutopilotAlice::observe(const GameState& after, const Move&)
{
  if (!check_)
    return;
  const auto residual = autopilot_residual(after.arrangement(), sigma_, after.pebbles());
  if (std::any_of(residual.begin(), residual.end(), [](std::int64_t r) { return r != 0; }))
    throw InvariantViolation("autopilot distribution lost at round " + std::to_string(after.round()));
}

Side RandomAlice::respond(const GameState&, LineId)
{
  return (rng_() & 1U) ? Side::Minus : Side::Plus;
}

Side GreedyAlice::respond(const GameState& state, LineId line)
{
  const Arrangement& arr = state.arrangement();
  const auto& p = state.pebbles();
  // Removing from side s lowers s by one and raises the other side by one.
  auto min_after = [&](Side s) {
    std::int64_t m = std::numeric_limits<std::int64_t>::max();
    for (BoxId b : arr.boxes_on(line, s))
      m = std::min(m, p[b] - 1);
    for (BoxId b : arr.boxes_on(line, opposite(s)))
      m = std::min(m, p[b] + 1);
    return m;
  };
  return min_after(Side::Minus) > min_after(Side::Plus) ? Side::Minus : Side::Plus;
}

std::unique_ptr<AliceStrategy> make_alice(std::string_view name, const Arrangement& arr, std::uint64_t seed)
{
  if (name == "autopilot")
    return std::make_unique<AutopilotAlice>(Orientation::optimal(arr));
  if (name == "random")
    return std::make_unique<RandomAlice>(seed);
  if (name == "greedy")
    return std::make_unique<GreedyAlice>();
  throw InputError("unknown alice strategy '" + std::string(name) + "' (expected autopilot, random or greedy)");
}

} // namespace pebble

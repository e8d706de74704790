#include "pebble/bob.hpp"

#include "pebble/alice.hpp"
#include "pebble/error.hpp"

#include <algorithm>

namespace pebble {

ReferenceDistribution reference_distribution(const Arrangement& arr)
{
  Distribution p = autopilot_distribution(arr, Orientation::optimal(arr));
  const std::int64_t x = total(p);
  return {std::move(p), x};
}

BoxId pick_focal(const ReferenceDistribution& ref, std::span<const std::int64_t> pebbles)
{
  if (pebbles.size() != ref.pebbles.size())
    throw InputError("distribution does not match the arrangement");
  if (total(pebbles) >= ref.total)
    throw StrategyError("no focal box: the distribution holds at least f(L) = " + std::to_string(ref.total) +
                        " pebbles");
  for (BoxId b = 0; b < pebbles.size(); ++b)
    if (pebbles[b] <= ref.pebbles[b] - 1)
      return b;
  throw StrategyError("no focal box found");
}

std::vector<LineId> order_lines(const Arrangement& arr, BoxId focal)
{
  std::vector<LineId> lines;
  for (LineId l = 0; l < arr.num_lines(); ++l)
    if (arr.on_smaller_side(l, focal))
      lines.push_back(l);

  // Comparing characteristic vectors lexicographically descending is the same as
  // comparing, box by box, "on the smaller side" before "not on it".
  auto characteristic_greater = [&arr](LineId a, LineId b) {
    for (BoxId box = 0; box < arr.num_cells(); ++box) {
      const bool in_a = arr.on_smaller_side(a, box);
      const bool in_b = arr.on_smaller_side(b, box);
      if (in_a != in_b)
        return in_a;
    }
    return false;
  };
  std::sort(lines.begin(), lines.end(), [&](LineId a, LineId b) {
    if (arr.rank(a) != arr.rank(b))
      return arr.rank(a) > arr.rank(b);
    if (characteristic_greater(a, b) || characteristic_greater(b, a))
      return characteristic_greater(a, b);
    return a < b;
  });
  return lines;
}

Reply classify_reply(const Arrangement& arr, const Move& move)
{
  return move.removal_side == arr.line_info(move.line).smaller_side ? Reply::Decreased : Reply::Increased;
}

std::string_view to_string(PairColor c) noexcept
{
  return c == PairColor::Red ? "red" : "green";
}

std::string_view to_string(StageEnd e) noexcept
{
  return e == StageEnd::FocalEmptied ? "focal_emptied" : "increased_first";
}

int leading_sign(std::span<const std::int64_t> values) noexcept
{
  for (std::int64_t v : values)
    if (v != 0)
      return v < 0 ? -1 : 1;
  return 0;
}

PairRecord classify_pair(const Arrangement& arr, LineId first, LineId second)
{
  const int r1 = arr.rank(first);
  const int r2 = arr.rank(second);
  if (r1 < r2)
    throw StrategyError("pair out of order: line " + std::to_string(first + 1) + " has rank " + std::to_string(r1) +
                        " below line " + std::to_string(second + 1) + " with rank " + std::to_string(r2));
  auto delta = move_delta(arr, {first, arr.line_info(first).smaller_side});
  const auto inc = move_delta(arr, {second, opposite(arr.line_info(second).smaller_side)});
  for (std::size_t b = 0; b < delta.size(); ++b)
    delta[b] += inc[b];
  const std::int64_t dt = total(delta);
  const int sign = leading_sign(delta);
  return {first, second, r1 > r2 ? PairColor::Red : PairColor::Green, dt, sign, std::move(delta)};
}

Stage::Stage(BoxId focal, std::vector<LineId> sequence) : focal_(focal), sequence_(std::move(sequence))
{
  if (sequence_.empty())
    throw StrategyError("a stage needs at least one line");
}

Stage::Step Stage::advance(Reply reply)
{
  if (end_)
    throw StateError("the stage has already ended");
  Step step;
  if (reply == Reply::Decreased) {
    stack_.push_back(index_);
    if (index_ + 1 == sequence_.size()) {
      end_ = StageEnd::FocalEmptied;
      step.end = end_;
      return step;
    }
    ++index_;
    step.play = sequence_[index_];
    return step;
  }
  if (stack_.empty()) {
    end_ = StageEnd::IncreasedFirst;
    step.end = end_;
    return step;
  }
  const std::size_t top = stack_.back();
  stack_.pop_back();
  step.pair = std::pair{top, index_};
  index_ = top;
  step.play = sequence_[index_];
  return step;
}

MonovariantBob::MonovariantBob(const Arrangement& arr) : arr_(&arr), ref_(reference_distribution(arr)) {}

void MonovariantBob::check(bool condition, const std::string& what, const GameState& state) const
{
  if (!condition)
    throw InvariantViolation("monovariant: " + what + " (round " + std::to_string(state.round()) + ")");
}

void MonovariantBob::start_stage(const GameState& state)
{
  const BoxId focal = pick_focal(ref_, state.pebbles());
  auto sequence = order_lines(*arr_, focal);
  check(static_cast<std::int64_t>(sequence.size()) == ref_.pebbles[focal] - 1,
        "sequence length differs from p_a(focal) - 1", state);
  stage_.emplace(focal, std::move(sequence));
  pairs_.clear();
  stack_deltas_.clear();
  stage_start_ = state.pebbles();
  ++stats_.stages;
}

LineId MonovariantBob::choose_line(const GameState& state)
{
  if (!state.ongoing())
    throw StateError("the game is over");
  if (!stage_ || stage_->finished())
    start_stage(state);
  const auto stack = stage_->stack();
  bool prefix = stack.size() == stage_->index();
  for (std::size_t k = 0; prefix && k < stack.size(); ++k)
    prefix = stack[k] == k;
  check(prefix, "stack is not the prefix of the sequence", state);
  before_ = state.pebbles();
  return stage_->current_line();
}

void MonovariantBob::observe(const GameState& after, const Move& move)
{
  if (!stage_ || stage_->finished())
    return;
  if (move.line != stage_->current_line())
    throw StrategyError("monovariant: observed a move on a line it did not choose");

  const auto& p = after.pebbles();
  std::vector<std::int64_t> delta(p.size());
  for (std::size_t b = 0; b < p.size(); ++b)
    delta[b] = p[b] - before_[b];

  const Reply reply = classify_reply(*arr_, move);
  const auto sequence = stage_->sequence();
  const auto step = stage_->advance(reply);
  const BoxId focal = stage_->focal();

  if (reply == Reply::Decreased) {
    stack_deltas_.push_back(std::move(delta));
  } else if (step.pair) {
    auto measured = std::move(stack_deltas_.back());
    stack_deltas_.pop_back();
    for (std::size_t b = 0; b < measured.size(); ++b)
      measured[b] += delta[b];
    PairRecord pair = classify_pair(*arr_, sequence[step.pair->first], sequence[step.pair->second]);
    check(measured == pair.delta, "pair change differs from the predicted change", after);
    check(measured[focal] == 0, "pair changed the focal box", after);
    if (pair.color == PairColor::Red) {
      check(pair.delta_total <= -2, "red pair removed fewer than 2 pebbles", after);
      ++stats_.red_pairs;
    } else {
      check(pair.delta_total == 0, "green pair changed the total", after);
      check(pair.lex_sign < 0, "green pair did not decrease lexicographically", after);
      ++stats_.green_pairs;
    }
    pairs_.push_back(std::move(pair));
  }

  const std::int64_t growth = total(p) - total(stage_start_);
  stats_.max_stage_growth = std::max(stats_.max_stage_growth, growth);
  check(growth <= static_cast<std::int64_t>(arr_->num_lines() * arr_->num_cells()),
        "stage grew by more than n * R pebbles", after);

  if (step.end == StageEnd::FocalEmptied) {
    ++stats_.focal_emptied;
    check(p[focal] == 0 && !after.ongoing(), "focal box not empty after the last decrease", after);
  } else if (step.end == StageEnd::IncreasedFirst) {
    ++stats_.increased_first;
    const std::int64_t before_total = total(stage_start_);
    const std::int64_t now_total = total(p);
    check(now_total < before_total || (now_total == before_total && lex_compare(p, stage_start_) < 0),
          "stage did not decrease (total, lex)", after);
  }
}

SmallPairBob::SmallPairBob(const Arrangement& arr, std::span<const std::int64_t> pebbles)
{
  const auto sp = find_small_pair(arr, pebbles);
  if (!sp)
    throw StrategyError("smallpair: the distribution has no small pair");
  u_ = sp->first;
  v_ = sp->second;
  path_ = arr.shortest_path(u_, v_);
  for (std::size_t k = 0; k + 1 < path_.size(); ++k)
    path_lines_.push_back(arr.separating_line(path_[k], path_[k + 1]));
  auto sorted = path_lines_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
      static_cast<int>(path_lines_.size()) != arr.dual_distance(u_, v_))
    throw InvariantViolation("smallpair: shortest path repeats a line");
  pair_sum_ = pebbles[u_] + pebbles[v_];
  last_u_ = pebbles[u_];
}

LineId SmallPairBob::choose_line(const GameState& state)
{
  const std::int64_t pu = state.pebbles()[u_];
  if (pu < 1 || pu > static_cast<std::int64_t>(path_lines_.size()))
    throw StrategyError("smallpair: p(u) = " + std::to_string(pu) + " is outside the path");
  return path_lines_[static_cast<std::size_t>(pu - 1)];
}

void SmallPairBob::observe(const GameState& after, const Move&)
{
  const std::int64_t pu = after.pebbles()[u_];
  const std::int64_t pv = after.pebbles()[v_];
  if (pu + pv != pair_sum_)
    throw InvariantViolation("smallpair: p(u) + p(v) changed at round " + std::to_string(after.round()));
  if (pu - last_u_ != 1 && last_u_ - pu != 1)
    throw InvariantViolation("smallpair: p(u) did not move by one at round " + std::to_string(after.round()));
  last_u_ = pu;
}

LineId RandomBob::choose_line(const GameState& state)
{
  return static_cast<LineId>(rng_() % state.arrangement().num_lines());
}

std::unique_ptr<BobStrategy> make_bob(std::string_view name, const Arrangement& arr,
                                      std::span<const std::int64_t> pebbles, std::uint64_t seed)
{
  if (name == "monovariant") {
    if (total(pebbles) >= arr.f_value())
      throw StrategyError("monovariant needs fewer than f(L) = " + std::to_string(arr.f_value()) + " pebbles");
    return std::make_unique<MonovariantBob>(arr);
  }
  if (name == "smallpair")
    return std::make_unique<SmallPairBob>(arr, pebbles);
  if (name == "random")
    return std::make_unique<RandomBob>(seed);
  throw InputError("unknown bob strategy '" + std::string(name) + "' (expected monovariant, smallpair or random)");
}

} // namespace pebble

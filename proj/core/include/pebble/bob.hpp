#pragma once

#include "pebble/game.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace pebble {

/// The autopilot distribution with "-" on every smaller side, and its total X = f(L).
struct ReferenceDistribution {
  Distribution pebbles;
  std::int64_t total;
};

ReferenceDistribution reference_distribution(const Arrangement& arr);

/// Smallest box with p(b) <= p_a(b) - 1. Throws StrategyError if total(p) >= X.
BoxId pick_focal(const ReferenceDistribution& ref, std::span<const std::int64_t> pebbles);

/// The lines with `focal` on their smaller side, by rank descending and then by the
/// smaller-side characteristic vector (over b_1..b_R) lexicographically descending.
std::vector<LineId> order_lines(const Arrangement& arr, BoxId focal);

/// Alice's reply relative to the played line's smaller side.
enum class Reply { Decreased, Increased };

Reply classify_reply(const Arrangement& arr, const Move& move);

enum class PairColor { Red, Green };

std::string_view to_string(PairColor c) noexcept;

/// A decrease of `first` matched with a later increase of `second`.
struct PairRecord {
  LineId first;
  LineId second;
  PairColor color;
  /// Change of the total pebble count caused by the two moves together.
  std::int64_t delta_total;
  /// Sign (-1, 0, 1) of the first nonzero entry of the combined change; -1 means a lexicographic decrease.
  int lex_sign;
  std::vector<std::int64_t> delta;
};

/// Effect of decreasing `first` and then increasing `second`, computed from the arrangement.
/// Throws StrategyError when rank(first) < rank(second).
PairRecord classify_pair(const Arrangement& arr, LineId first, LineId second);

/// Sign of the first nonzero entry.
int leading_sign(std::span<const std::int64_t> values) noexcept;

enum class StageEnd {
  /// Alice decreased the last line of the sequence; the focal box is empty.
  FocalEmptied,
  /// Alice increased the first line with an empty stack.
  IncreasedFirst,
};

std::string_view to_string(StageEnd e) noexcept;

/// Bookkeeping for one stage: the ordered sequence S, the current position and
/// the stack of decreased lines (always exactly the positions before the current one).
class Stage {
public:
  Stage(BoxId focal, std::vector<LineId> sequence);

  struct Step {
    /// Next line to play while the stage continues.
    std::optional<LineId> play;
    std::optional<StageEnd> end;
    /// Sequence positions (i, i + 1) of a pair completed by this reply.
    std::optional<std::pair<std::size_t, std::size_t>> pair;
  };

  /// Throws StateError once the stage has ended.
  Step advance(Reply reply);

  BoxId focal() const noexcept { return focal_; }
  std::span<const LineId> sequence() const noexcept { return sequence_; }
  /// Zero-based position of the line Bob plays next.
  std::size_t index() const noexcept { return index_; }
  LineId current_line() const { return sequence_.at(index_); }
  std::span<const std::size_t> stack() const noexcept { return stack_; }
  bool finished() const noexcept { return end_.has_value(); }
  std::optional<StageEnd> end() const noexcept { return end_; }

private:
  BoxId focal_;
  std::vector<LineId> sequence_;
  std::size_t index_ = 0;
  std::vector<std::size_t> stack_;
  std::optional<StageEnd> end_;
};

struct MonovariantStats {
  std::int64_t stages = 0;
  std::int64_t focal_emptied = 0;
  std::int64_t increased_first = 0;
  std::int64_t red_pairs = 0;
  std::int64_t green_pairs = 0;
  std::int64_t max_stage_growth = 0;
};

/// Bob's stage strategy for totals below f(L). Every completed pair and every stage
/// end is checked against the measured pebble changes; failures throw InvariantViolation.
class MonovariantBob final : public BobStrategy {
public:
  explicit MonovariantBob(const Arrangement& arr);

  std::string name() const override { return "monovariant"; }
  LineId choose_line(const GameState& state) override;
  void observe(const GameState& after, const Move& move) override;

  const ReferenceDistribution& reference() const noexcept { return ref_; }
  const std::optional<Stage>& stage() const noexcept { return stage_; }
  /// Pairs completed in the current (or last) stage.
  std::span<const PairRecord> pairs() const noexcept { return pairs_; }
  const MonovariantStats& stats() const noexcept { return stats_; }

private:
  void start_stage(const GameState& state);
  void check(bool condition, const std::string& what, const GameState& state) const;

  const Arrangement* arr_;
  ReferenceDistribution ref_;
  std::optional<Stage> stage_;
  std::vector<PairRecord> pairs_;
  MonovariantStats stats_;

  Distribution before_;
  Distribution stage_start_;
  /// Measured change of each move still on the stack.
  std::vector<std::vector<std::int64_t>> stack_deltas_;
};

/// Plays the separating lines of a small pair (u, v) along a shortest dual path:
/// line number p(u) in path order from u. p(u) + p(v) never changes.
class SmallPairBob final : public BobStrategy {
public:
  /// Throws StrategyError if `pebbles` has no small pair.
  SmallPairBob(const Arrangement& arr, std::span<const std::int64_t> pebbles);

  std::string name() const override { return "smallpair"; }
  LineId choose_line(const GameState& state) override;
  void observe(const GameState& after, const Move& move) override;

  std::pair<BoxId, BoxId> pair() const noexcept { return {u_, v_}; }
  std::span<const BoxId> path() const noexcept { return path_; }
  std::span<const LineId> path_lines() const noexcept { return path_lines_; }
  std::int64_t pair_sum() const noexcept { return pair_sum_; }

private:
  BoxId u_;
  BoxId v_;
  std::vector<BoxId> path_;
  std::vector<LineId> path_lines_;
  std::int64_t pair_sum_;
  std::int64_t last_u_;
};

class RandomBob final : public BobStrategy {
public:
  explicit RandomBob(std::uint64_t seed) : rng_(seed) {}
  std::string name() const override { return "random"; }
  LineId choose_line(const GameState& state) override;

private:
  std::mt19937_64 rng_;
};

/// "monovariant", "smallpair", "random". Throws InputError for unknown names and
/// StrategyError when the strategy does not apply to `pebbles`.
std::unique_ptr<BobStrategy> make_bob(std::string_view name, const Arrangement& arr,
                                      std::span<const std::int64_t> pebbles, std::uint64_t seed);

} // namespace pebble

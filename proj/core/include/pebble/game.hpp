#pragma once

#include "pebble/arrangement.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pebble {

/// Pebble counts per box, in canonical box order.
using Distribution = std::vector<std::int64_t>;

std::int64_t total(std::span<const std::int64_t> pebbles) noexcept;
/// Lexicographic order over the box sequence b_1, ..., b_R. Throws InputError on a length mismatch.
std::strong_ordering lex_compare(std::span<const std::int64_t> lhs, std::span<const std::int64_t> rhs);

/// 64-bit FNV-1a over (round, pebbles...) each encoded as 8-byte little-endian two's complement.
std::uint64_t state_hash(std::int64_t round, std::span<const std::int64_t> pebbles) noexcept;
/// Sixteen lowercase hex digits.
std::string hash_hex(std::uint64_t hash);

/// Bob picks `line`; Alice removes one pebble from every box on `removal_side`
/// and adds one to every box on the other side.
struct Move {
  LineId line;
  Side removal_side;

  friend bool operator==(const Move&, const Move&) = default;
};

/// The change in every box caused by a move; independent of the current state.
std::vector<std::int64_t> move_delta(const Arrangement& arr, const Move& move);

/// Boxes u < v with p(u) + p(v) < dual_distance(u, v) + 2; the first such pair in id order.
std::optional<std::pair<BoxId, BoxId>> find_small_pair(const Arrangement& arr, std::span<const std::int64_t> pebbles);

struct TranscriptRecord {
  std::int64_t round;
  LineId line;
  Side removal_side;
  std::int64_t total_after;
  std::uint64_t hash;
};

struct Transcript {
  Distribution initial;
  std::vector<TranscriptRecord> records;

  /// One JSON object per line: {"round","line","side","total","hash"}; line ids are one-based.
  std::string to_jsonl() const;
  static std::vector<TranscriptRecord> parse_jsonl(std::string_view text);
};

/// Re-applies every recorded move from `initial` and checks each total and hash.
/// Returns the index of the first mismatching record, or nullopt if all match.
std::optional<std::size_t> verify_replay(const Arrangement& arr, const Distribution& initial,
                                         std::span<const TranscriptRecord> records);

enum class Status { Ongoing, BobWon };

class GameState {
public:
  /// Throws InputError on a size mismatch or a negative count. A zero count is an
  /// immediate Bob win at round 0.
  GameState(std::shared_ptr<const Arrangement> arr, Distribution pebbles);

  const Arrangement& arrangement() const noexcept { return *arr_; }
  const std::shared_ptr<const Arrangement>& arrangement_ptr() const noexcept { return arr_; }
  const Distribution& pebbles() const noexcept { return pebbles_; }
  std::int64_t round() const noexcept { return round_; }
  Status status() const noexcept { return status_; }
  bool ongoing() const noexcept { return status_ == Status::Ongoing; }
  /// Smallest empty box once Bob has won.
  std::optional<BoxId> empty_box() const noexcept { return empty_box_; }
  std::int64_t total() const noexcept { return pebble::total(pebbles_); }
  std::uint64_t hash() const noexcept { return state_hash(round_, pebbles_); }
  const Transcript& transcript() const noexcept { return transcript_; }
  /// Long simulations can switch off the per-move log.
  void set_recording(bool on) noexcept { recording_ = on; }

  /// Throws StateError when the game is over and InputError on an invalid line.
  const TranscriptRecord& apply(const Move& move);

private:
  void update_status();

  std::shared_ptr<const Arrangement> arr_;
  Distribution pebbles_;
  std::int64_t round_ = 0;
  Status status_ = Status::Ongoing;
  std::optional<BoxId> empty_box_;
  Transcript transcript_;
  bool recording_ = true;
  TranscriptRecord last_{};
};

class AliceStrategy {
public:
  virtual ~AliceStrategy() = default;
  virtual std::string name() const = 0;
  /// The side to remove pebbles from after Bob picked `line`.
  virtual Side respond(const GameState& state, LineId line) = 0;
  /// Called after the move has been applied.
  virtual void observe(const GameState& /*after*/, const Move& /*move*/) {}
};

class BobStrategy {
public:
  virtual ~BobStrategy() = default;
  virtual std::string name() const = 0;
  virtual LineId choose_line(const GameState& state) = 0;
  /// Called after the move has been applied, with Alice's side.
  virtual void observe(const GameState& /*after*/, const Move& /*move*/) {}
};

struct Outcome {
  Status status;
  /// Round at which Bob won, or the number of rounds survived.
  std::int64_t rounds;
  std::optional<BoxId> empty_box;
};

inline constexpr std::int64_t default_max_rounds = 1'000'000;

/// Runs rounds until Bob wins or `max_rounds` moves have been played. The state is updated in place.
/// Throws StrategyError naming the strategy that returned an invalid line.
Outcome play(GameState& state, AliceStrategy& alice, BobStrategy& bob, std::int64_t max_rounds = default_max_rounds);

} // namespace pebble

#pragma once

#include "pebble/game.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace pebble {

/// Minimum total for the row of n boxes (n >= 2).
std::int64_t f_1d(int n);

enum class Verdict { BobForcesWin, NoForcedWin };

struct SearchResult {
  Verdict verdict;
  int depth;
  /// For a forced win: one line of play with Bob's winning choices, ending in an empty box.
  std::vector<Move> principal_variation;
  std::int64_t nodes;
};

inline constexpr std::int64_t default_node_budget = 20'000'000;

/// Minimax over "some line for Bob, every side for Alice" to a fixed number of rounds,
/// memoized on the distribution. Throws BudgetExceeded rather than return a verdict
/// it could not finish.
class GameSolver {
public:
  explicit GameSolver(const Arrangement& arr, std::int64_t node_budget = default_node_budget);

  /// Whether Bob can force an empty box within `depth` rounds.
  bool bob_wins(std::span<const std::int64_t> pebbles, int depth);
  SearchResult solve(std::span<const std::int64_t> pebbles, int depth);

  std::int64_t nodes() const noexcept { return nodes_; }

private:
  struct Bounds {
    int win_at = -1;  // smallest depth known to be a forced win, -1 if none
    int safe_at = -1; // largest depth known not to be a forced win
  };
  struct Hash {
    std::size_t operator()(const Distribution& d) const noexcept;
  };

  bool search(Distribution& p, int depth);
  bool bob_line_wins(Distribution& p, LineId line, int depth);

  const Arrangement* arr_;
  std::int64_t budget_;
  std::int64_t nodes_ = 0;
  std::vector<std::vector<std::int64_t>> deltas_; // [line][side]
  std::unordered_map<Distribution, Bounds, Hash> memo_;
};

SearchResult exhaustive_bob_wins(const Arrangement& arr, std::span<const std::int64_t> pebbles, int depth,
                                 std::int64_t node_budget = default_node_budget);

struct Certification {
  bool certified;
  std::int64_t f;
  /// Deepest schedule entry needed to win from each (f - 1)-distribution.
  int depth_needed;
  std::int64_t distributions_checked;
  std::int64_t nodes;
  std::string detail;
};

/// Checks that every distribution with f_value - 1 pebbles is a forced Bob win within
/// the schedule and that the optimal autopilot distribution survives the deepest entry.
Certification certify_f(const Arrangement& arr, std::span<const int> depth_schedule,
                        std::int64_t node_budget = default_node_budget);

} // namespace pebble

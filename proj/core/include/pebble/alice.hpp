#pragma once

#include "pebble/game.hpp"

#include <cstdint>
#include <memory>
#include <random>
#include <string_view>
#include <vector>

namespace pebble {

/// Alice's labeling sigma: for every line, the side currently labeled "-".
class Orientation {
public:
  explicit Orientation(std::vector<Side> minus_sides) : minus_(std::move(minus_sides)) {}

  /// "-" on the smaller side of every line (exact-half ties: the side without b_1).
  static Orientation optimal(const Arrangement& arr);

  Side minus_side(LineId l) const { return minus_.at(l); }
  void flip(LineId l) { minus_.at(l) = opposite(minus_.at(l)); }
  std::span<const Side> minus_sides() const noexcept { return minus_; }
  std::size_t size() const noexcept { return minus_.size(); }

  /// |tau(b)|: number of lines whose "-" side contains b.
  int minus_count(const Arrangement& arr, BoxId b) const;

  friend bool operator==(const Orientation&, const Orientation&) = default;

private:
  std::vector<Side> minus_;
};

/// p(b) = |tau(b)| + 1.
Distribution autopilot_distribution(const Arrangement& arr, const Orientation& sigma);

/// The optimal autopilot distribution with one pebble taken from its largest box
/// (smallest id on ties); total f(L) - 1.
Distribution one_short_distribution(const Arrangement& arr);

/// p(b) - |tau(b)| - 1 per box; all zeros exactly when `pebbles` is the autopilot distribution of sigma.
std::vector<std::int64_t> autopilot_residual(const Arrangement& arr, const Orientation& sigma,
                                             std::span<const std::int64_t> pebbles);

/// Removes from the "-" side of the played line, then flips that line's labels.
class AutopilotAlice final : public AliceStrategy {
public:
  /// With `check_invariant`, every observed state must be the autopilot
  /// distribution of the current sigma; a mismatch throws InvariantViolation.
  AutopilotAlice(Orientation sigma, bool check_invariant = false)
      : sigma_(std::move(sigma)), check_(check_invariant)
  {
  }

  std::string name() const override { return "autopilot"; }
  Side respond(const GameState& state, LineId line) override;
  void observe(const GameState& after, const Move& move) override;

  const Orientation& orientation() const noexcept { return sigma_; }

private:
  Orientation sigma_;
  bool check_;
};

/// Uniform random side, reproducible per seed.
class RandomAlice final : public AliceStrategy {
public:
  explicit RandomAlice(std::uint64_t seed) : rng_(seed) {}
  std::string name() const override { return "random"; }
  Side respond(const GameState& state, LineId line) override;

private:
  std::mt19937_64 rng_;
};

/// Removes from the side that leaves the largest minimum; ties go to Plus.
class GreedyAlice final : public AliceStrategy {
public:
  std::string name() const override { return "greedy"; }
  Side respond(const GameState& state, LineId line) override;
};

/// "autopilot" (optimal orientation), "random", "greedy". Throws InputError otherwise.
std::unique_ptr<AliceStrategy> make_alice(std::string_view name, const Arrangement& arr, std::uint64_t seed);

} // namespace pebble

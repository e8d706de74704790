#pragma once

#include <stdexcept>
#include <string>

namespace pebble {

/// Malformed input: duplicate lines, bad files, invalid ids.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operation not allowed in the current game state (e.g. moving after the game ended).
class StateError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A strategy was asked to act outside its preconditions or returned an invalid decision.
class StrategyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A runtime-checked invariant of a strategy failed. Tests count these.
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Search exceeded its node budget; no verdict was produced.
class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace pebble

#pragma once

#include "pebble/io.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pebble::cli {

struct CaseResult {
  std::string key;
  bool passed = true;
  Json data = Json::object();
};

struct SuiteReport {
  std::string suite;
  std::string claim;
  std::vector<CaseResult> cases;
  Json summary = Json::object();

  bool passed() const;
  Json to_json() const;
  std::string to_text() const;
};

/// Unset fields take the suite's own default.
struct SuiteOptions {
  std::optional<int> n_max;
  std::optional<int> seeds;
  std::uint64_t seed = 1;
  std::optional<int> depth;
  int sequences = 1000;
  int length = 1000;
  int distributions = 100;
  std::int64_t max_rounds = default_max_rounds;
  unsigned jobs = 0; // 0: hardware concurrency
};

const std::vector<std::string_view>& suite_names();
/// Throws InputError for an unknown suite.
SuiteReport run_suite(std::string_view name, const SuiteOptions& options);

/// `total` pebbles over `boxes` boxes, uniformly at random; every box gets one first when there are enough.
Distribution random_distribution(std::size_t boxes, std::int64_t total, std::uint64_t seed);

/// The autopilot distribution of a randomly flipped optimal orientation, then trimmed or padded
/// one pebble at a time to `total` without emptying a box.
Distribution near_optimal_distribution(const Arrangement& arr, std::int64_t total, std::uint64_t seed);

/// Evaluates `count` cases on up to `jobs` threads and returns them sorted by key.
std::vector<CaseResult> run_cases(std::size_t count, unsigned jobs,
                                  const std::function<CaseResult(std::size_t)>& evaluate);

} // namespace pebble::cli

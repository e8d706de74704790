#pragma once

#include "pebble/alice.hpp"
#include "pebble/bob.hpp"
#include "pebble/oracle.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace pebble {

using Json = nlohmann::ordered_json;

// All ids on the wire are one-based: cell k is b_k, line k is the k-th entry of "lines".

/// {"lines": [{"a": "1", "b": "0", "c": "-3"}, ...]}; coefficients may also be JSON integers.
/// Throws InputError naming the offending field.
std::vector<Line> lines_from_json(const nlohmann::json& j);
Json lines_to_json(std::span<const Line> lines);
std::vector<Line> read_lines_file(const std::filesystem::path& path);

/// {"pebbles": [...]} in box order.
Distribution distribution_from_json(const nlohmann::json& j);
Json distribution_to_json(std::span<const std::int64_t> pebbles);
Distribution read_distribution_file(const std::filesystem::path& path);

Json point_to_json(const Point& p);

/// R, f_value, per-line rank/smaller side/counts, cells with sign vectors and witnesses.
/// With `polygons`, each cell also carries its clipped display polygon as decimal floats.
Json analysis_to_json(const Arrangement& arr, bool polygons);

Json orientation_to_json(const Orientation& sigma);
Json pair_to_json(const PairRecord& pair);
Json status_to_json(const GameState& state);

/// Engine internals for the UI and golden tests; {"strategy": name, ...}.
Json alice_diagnostics(const AliceStrategy& alice, const GameState& state);
Json bob_diagnostics(const BobStrategy& bob, const GameState& state);

Json search_result_to_json(const SearchResult& r);
Json certification_to_json(const Certification& c);

std::string read_text_file(const std::filesystem::path& path);

} // namespace pebble

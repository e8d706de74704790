#include "pebble/arrangement.hpp"

#include "pebble/error.hpp"

#include <random>

namespace pebble {

namespace {

// Bounded draw from the raw engine output; std distributions are not
// reproducible across standard libraries.
std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi)
{
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<std::int64_t>(rng() % span);
}

bool keeps_general_position(const std::vector<Line>& accepted, const Line& candidate)
{
  for (std::size_t i = 0; i < accepted.size(); ++i) {
    if (accepted[i].parallel_to(candidate))
      return false;
    for (std::size_t j = i + 1; j < accepted.size(); ++j) {
      const auto p = intersect(accepted[i], accepted[j]);
      if (p && candidate.passes_through(*p))
        return false;
    }
  }
  return true;
}

} // namespace

std::string_view to_string(Family f) noexcept
{
  switch (f) {
  case Family::GeneralPosition:
    return "general_position";
  case Family::Parallel:
    return "parallel";
  case Family::Grid:
    return "grid";
  case Family::Concurrent:
    return "concurrent";
  }
  return "unknown";
}

Family parse_family(std::string_view text)
{
  if (text == "general_position" || text == "general")
    return Family::GeneralPosition;
  if (text == "parallel")
    return Family::Parallel;
  if (text == "grid")
    return Family::Grid;
  if (text == "concurrent")
    return Family::Concurrent;
  throw InputError("unknown arrangement kind '" + std::string(text) +
                   "' (expected general_position, parallel, grid or concurrent)");
}

std::vector<Line> generate(Family family, int n, std::uint64_t seed)
{
  if (n < 1)
    throw InputError("n must be at least 1");
  std::vector<Line> lines;
  lines.reserve(static_cast<std::size_t>(n));
  switch (family) {
  case Family::Parallel:
    for (int i = n; i >= 1; --i)
      lines.emplace_back(1, 0, -i);
    break;
  case Family::Grid:
    for (int i = 0; i < n; ++i) {
      const int offset = i / 2 + 1;
      if (i % 2 == 0)
        lines.emplace_back(1, 0, -offset);
      else
        lines.emplace_back(0, 1, -offset);
    }
    break;
  case Family::Concurrent:
    // Slopes 0, -1, 1, -2, 2, ... through the origin.
    for (int i = 0; i < n; ++i) {
      const int k = (i % 2 == 1) ? (i + 1) / 2 : -(i / 2);
      lines.emplace_back(k, 1, 0);
    }
    break;
  case Family::GeneralPosition: {
    std::mt19937_64 rng(seed);
    const std::int64_t bound = std::max(10, 3 * n);
    while (static_cast<int>(lines.size()) < n) {
      const std::int64_t a = draw(rng, -bound, bound);
      const std::int64_t b = draw(rng, -bound, bound);
      const std::int64_t c = draw(rng, -bound * bound, bound * bound);
      if (a == 0 && b == 0)
        continue;
      Line candidate(a, b, c);
      if (keeps_general_position(lines, candidate))
        lines.push_back(std::move(candidate));
    }
    break;
  }
  }
  return lines;
}

} // namespace pebble

#pragma once

#include "pebble/geometry.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pebble {

/// Index of a cell (box) in canonical order; box b_{i+1} in one-based notation.
using BoxId = std::size_t;
/// Index of a line in its arrangement.
using LineId = std::size_t;

/// Per-line side of one cell, indexed by line id.
using SignVector = std::vector<Side>;

struct Cell {
  BoxId id;
  SignVector signs;
  Point witness;
};

struct LineInfo {
  Line line;
  int rank;
  Side smaller_side;
  /// Number of cells on the Plus and on the Minus side.
  std::array<int, 2> counts;

  int count(Side s) const noexcept { return counts[static_cast<std::size_t>(s)]; }
};

/// The cell complex of a set of distinct lines. Cells are ordered lexicographically
/// by sign vector with Plus before Minus; cell 0 is b_1.
class Arrangement {
public:
  /// Throws InputError on an empty input or duplicate lines.
  static Arrangement build(std::vector<Line> lines);

  std::size_t num_lines() const noexcept { return lines_.size(); }
  std::size_t num_cells() const noexcept { return cells_.size(); }

  std::span<const Line> lines() const noexcept { return lines_; }
  const Line& line(LineId l) const { return lines_.at(l); }
  std::span<const Cell> cells() const noexcept { return cells_; }
  const Cell& cell(BoxId b) const { return cells_.at(b); }
  const LineInfo& line_info(LineId l) const { return info_.at(l); }

  Side side(LineId l, BoxId b) const { return cells_[b].signs[l]; }
  bool on_smaller_side(LineId l, BoxId b) const { return side(l, b) == info_[l].smaller_side; }
  /// Cells on one side of a line, ascending.
  std::span<const BoxId> boxes_on(LineId l, Side s) const { return sides_[l][static_cast<std::size_t>(s)]; }

  int rank(LineId l) const { return info_.at(l).rank; }
  std::int64_t f_value() const noexcept { return f_value_; }

  /// Number of lines separating two cells (Hamming distance of the sign vectors).
  int dual_distance(BoxId u, BoxId v) const;
  /// |{v != u : dual_distance(u, v) <= r}|; requires r >= 1.
  int ball_size(BoxId u, int r) const;

  /// Dual-graph adjacency lists, ascending.
  const std::vector<std::vector<BoxId>>& neighbors() const noexcept { return adjacency_; }
  std::vector<std::pair<BoxId, BoxId>> edges() const;
  /// The unique line separating two adjacent cells.
  LineId separating_line(BoxId u, BoxId v) const;
  /// BFS shortest path from u to v, expanding smaller ids first. Includes both ends.
  std::vector<BoxId> shortest_path(BoxId u, BoxId v) const;
  /// Hop distances from `source` in the dual graph.
  std::vector<int> bfs_distances(BoxId source) const;

  /// Constraints whose intersection is the open cell.
  std::vector<HalfPlane> constraints(BoxId b) const;
  /// A box that contains every vertex of the arrangement with margin to spare.
  BoundingBox display_box() const;
  std::vector<Point> polygon(BoxId b, const BoundingBox& box) const;

  /// "+-+..." sign string of a cell.
  std::string sign_string(BoxId b) const;

private:
  std::vector<Line> lines_;
  std::vector<Cell> cells_;
  std::vector<LineInfo> info_;
  std::vector<std::array<std::vector<BoxId>, 2>> sides_;
  std::vector<std::vector<BoxId>> adjacency_;
  std::int64_t f_value_ = 0;
};

enum class Family { GeneralPosition, Parallel, Grid, Concurrent };

std::string_view to_string(Family f) noexcept;
/// Accepts "general_position", "parallel", "grid", "concurrent".
Family parse_family(std::string_view text);

/// Deterministic test families.
///  - parallel: x = n, x = n-1, ..., x = 1, so line i separates the i rightmost cells.
///  - grid: alternating vertical and horizontal lines.
///  - concurrent: n lines through the origin with distinct slopes.
///  - general_position: random small integer coefficients, re-sampled until no two
///    lines are parallel and no three meet in a point.
std::vector<Line> generate(Family family, int n, std::uint64_t seed);

} // namespace pebble

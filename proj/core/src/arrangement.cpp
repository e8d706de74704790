#include "pebble/arrangement.hpp"

#include "pebble/error.hpp"

#include <algorithm>
#include <deque>

namespace pebble {

namespace {

std::vector<HalfPlane> constraints_of(std::span<const Line> lines, const SignVector& signs)
{
  std::vector<HalfPlane> out;
  out.reserve(signs.size());
  for (std::size_t l = 0; l < signs.size(); ++l)
    out.push_back({lines[l], signs[l]});
  return out;
}

struct PartialCell {
  SignVector signs;
  Point witness;
};

} // namespace

Arrangement Arrangement::build(std::vector<Line> lines)
{
  if (lines.empty())
    throw InputError("an arrangement needs at least one line");
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (lines[i] == lines[j])
        throw InputError("duplicate line: lines " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                         " are equal");

  // Insert lines one at a time; every existing cell is split into one or two children.
  std::vector<PartialCell> current{{{}, Point{0, 0}}};
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const Line& line = lines[k];
    std::vector<PartialCell> next;
    next.reserve(current.size() * 2);
    for (auto& cell : current) {
      std::vector<HalfPlane> base = constraints_of(lines, cell.signs);
      const Position where = side_of(line, cell.witness);
      for (Side s : {Side::Plus, Side::Minus}) {
        SignVector signs = cell.signs;
        signs.push_back(s);
        if ((where == Position::Plus && s == Side::Plus) || (where == Position::Minus && s == Side::Minus)) {
          next.push_back({std::move(signs), cell.witness});
          continue;
        }
        base.push_back({line, s});
        if (auto witness = feasible(base))
          next.push_back({std::move(signs), std::move(*witness)});
        base.pop_back();
      }
    }
    current = std::move(next);
  }

  std::sort(current.begin(), current.end(),
            [](const PartialCell& l, const PartialCell& r) { return l.signs < r.signs; });

  Arrangement arr;
  arr.lines_ = std::move(lines);
  const std::size_t n = arr.lines_.size();
  const std::size_t cell_count = current.size();
  arr.cells_.reserve(cell_count);
  for (std::size_t b = 0; b < cell_count; ++b)
    arr.cells_.push_back({b, std::move(current[b].signs), std::move(current[b].witness)});

  arr.sides_.resize(n);
  for (std::size_t l = 0; l < n; ++l)
    for (const Cell& c : arr.cells_)
      arr.sides_[l][static_cast<std::size_t>(c.signs[l])].push_back(c.id);

  arr.info_.reserve(n);
  arr.f_value_ = static_cast<std::int64_t>(cell_count);
  for (std::size_t l = 0; l < n; ++l) {
    const int plus = static_cast<int>(arr.sides_[l][0].size());
    const int minus = static_cast<int>(arr.sides_[l][1].size());
    Side smaller;
    if (plus != minus)
      smaller = plus < minus ? Side::Plus : Side::Minus;
    else
      smaller = opposite(arr.cells_.front().signs[l]);
    const int rank = std::min(plus, minus);
    arr.info_.push_back({arr.lines_[l], rank, smaller, {plus, minus}});
    arr.f_value_ += rank;
  }

  arr.adjacency_.assign(cell_count, {});
  for (std::size_t u = 0; u < cell_count; ++u)
    for (std::size_t v = u + 1; v < cell_count; ++v)
      if (arr.dual_distance(u, v) == 1) {
        arr.adjacency_[u].push_back(v);
        arr.adjacency_[v].push_back(u);
      }
  for (auto& adj : arr.adjacency_)
    std::sort(adj.begin(), adj.end());
  return arr;
}

int Arrangement::dual_distance(BoxId u, BoxId v) const
{
  const SignVector& su = cells_.at(u).signs;
  const SignVector& sv = cells_.at(v).signs;
  int d = 0;
  for (std::size_t l = 0; l < su.size(); ++l)
    d += su[l] != sv[l];
  return d;
}

int Arrangement::ball_size(BoxId u, int r) const
{
  if (r < 1)
    throw InputError("ball radius must be at least 1");
  int count = 0;
  for (BoxId v = 0; v < cells_.size(); ++v)
    if (v != u && dual_distance(u, v) <= r)
      ++count;
  return count;
}

std::vector<std::pair<BoxId, BoxId>> Arrangement::edges() const
{
  std::vector<std::pair<BoxId, BoxId>> out;
  for (BoxId u = 0; u < adjacency_.size(); ++u)
    for (BoxId v : adjacency_[u])
      if (u < v)
        out.emplace_back(u, v);
  return out;
}

LineId Arrangement::separating_line(BoxId u, BoxId v) const
{
  if (dual_distance(u, v) != 1)
    throw InputError("cells " + std::to_string(u + 1) + " and " + std::to_string(v + 1) + " are not adjacent");
  const SignVector& su = cells_[u].signs;
  const SignVector& sv = cells_[v].signs;
  return static_cast<LineId>(std::mismatch(su.begin(), su.end(), sv.begin()).first - su.begin());
}

std::vector<int> Arrangement::bfs_distances(BoxId source) const
{
  std::vector<int> dist(cells_.size(), -1);
  std::deque<BoxId> queue{source};
  dist.at(source) = 0;
  while (!queue.empty()) {
    const BoxId u = queue.front();
    queue.pop_front();
    for (BoxId v : adjacency_[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
  }
  return dist;
}

std::vector<BoxId> Arrangement::shortest_path(BoxId u, BoxId v) const
{
  constexpr BoxId unset = static_cast<BoxId>(-1);
  std::vector<BoxId> parent(cells_.size(), unset);
  std::deque<BoxId> queue{u};
  parent.at(u) = u;
  while (!queue.empty() && parent.at(v) == unset) {
    const BoxId x = queue.front();
    queue.pop_front();
    for (BoxId y : adjacency_[x])
      if (parent[y] == unset) {
        parent[y] = x;
        queue.push_back(y);
      }
  }
  std::vector<BoxId> path{v};
  while (path.back() != u)
    path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<HalfPlane> Arrangement::constraints(BoxId b) const
{
  return constraints_of(lines_, cells_.at(b).signs);
}

BoundingBox Arrangement::display_box() const
{
  std::vector<Point> anchors;
  for (const Line& line : lines_) {
    if (line.b() != 0)
      anchors.push_back({Rational(0), ratio(-line.c(), line.b())});
    else
      anchors.push_back({ratio(-line.c(), line.a()), Rational(0)});
  }
  for (std::size_t i = 0; i < lines_.size(); ++i)
    for (std::size_t j = i + 1; j < lines_.size(); ++j)
      if (auto p = intersect(lines_[i], lines_[j]))
        anchors.push_back(std::move(*p));

  BoundingBox box{anchors[0].x, anchors[0].y, anchors[0].x, anchors[0].y};
  for (const Point& p : anchors) {
    box.xmin = std::min(box.xmin, p.x);
    box.xmax = std::max(box.xmax, p.x);
    box.ymin = std::min(box.ymin, p.y);
    box.ymax = std::max(box.ymax, p.y);
  }
  const Rational margin = std::max(box.xmax - box.xmin, box.ymax - box.ymin) / 4 + 1;
  box.xmin -= margin;
  box.ymin -= margin;
  box.xmax += margin;
  box.ymax += margin;
  return box;
}

std::vector<Point> Arrangement::polygon(BoxId b, const BoundingBox& box) const
{
  const auto cs = constraints(b);
  return clip_cell(cs, box);
}

std::string Arrangement::sign_string(BoxId b) const
{
  std::string out;
  for (Side s : cells_.at(b).signs)
    out.push_back(sign_char(s));
  return out;
}

} // namespace pebble

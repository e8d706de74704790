#include "pebble/oracle.hpp"

#include "pebble/alice.hpp"
#include "pebble/error.hpp"

#include <algorithm>

namespace pebble {

namespace {

bool has_empty(std::span<const std::int64_t> p)
{
  return std::find(p.begin(), p.end(), 0) != p.end();
}

void add(Distribution& p, std::span<const std::int64_t> delta, int sign)
{
  for (std::size_t b = 0; b < p.size(); ++b)
    p[b] += sign * delta[b];
}

// Calls fn on every composition of `total` into `parts` non-negative entries.
template <typename Fn>
void for_each_composition(std::int64_t total, std::size_t parts, Fn&& fn)
{
  Distribution p(parts, 0);
  auto rec = [&](auto&& self, std::size_t i, std::int64_t left) -> void {
    if (i + 1 == parts) {
      p[i] = left;
      fn(p);
      return;
    }
    for (std::int64_t v = 0; v <= left; ++v) {
      p[i] = v;
      self(self, i + 1, left - v);
    }
  };
  rec(rec, 0, total);
}

double composition_count(std::int64_t total, std::size_t parts)
{
  // C(total + parts - 1, parts - 1)
  double c = 1;
  for (std::size_t k = 1; k < parts; ++k)
    c = c * static_cast<double>(total + static_cast<std::int64_t>(k)) / static_cast<double>(k);
  return c;
}

} // namespace

std::int64_t f_1d(int n)
{
  if (n < 2)
    throw InputError("f_1d needs at least two boxes");
  const std::int64_t m = n;
  if (m % 2 == 0)
    return m * (m + 4) / 4;
  return (m + 1) * (m + 3) / 4 - 1;
}

std::size_t GameSolver::Hash::operator()(const Distribution& d) const noexcept
{
  return static_cast<std::size_t>(state_hash(0, d));
}

GameSolver::GameSolver(const Arrangement& arr, std::int64_t node_budget) : arr_(&arr), budget_(node_budget)
{
  for (LineId l = 0; l < arr.num_lines(); ++l)
    for (Side s : {Side::Plus, Side::Minus})
      deltas_.push_back(move_delta(arr, {l, s}));
}

bool GameSolver::bob_line_wins(Distribution& p, LineId line, int depth)
{
  for (std::size_t s = 0; s < 2; ++s) {
    const auto& delta = deltas_[2 * line + s];
    add(p, delta, 1);
    const bool win = has_empty(p) || search(p, depth - 1);
    add(p, delta, -1);
    if (!win)
      return false;
  }
  return true;
}

bool GameSolver::search(Distribution& p, int depth)
{
  if (depth <= 0)
    return false;
  auto found = memo_.find(p);
  if (found != memo_.end()) {
    if (found->second.win_at >= 0 && found->second.win_at <= depth)
      return true;
    if (found->second.safe_at >= depth)
      return false;
  }
  if (++nodes_ > budget_)
    throw BudgetExceeded("search exceeded " + std::to_string(budget_) + " nodes");

  bool win = false;
  for (LineId l = 0; l < arr_->num_lines() && !win; ++l)
    win = bob_line_wins(p, l, depth);

  // The recursion may have rehashed the table.
  Bounds& bounds = memo_[p];
  if (win) {
    if (bounds.win_at < 0 || depth < bounds.win_at)
      bounds.win_at = depth;
  } else {
    bounds.safe_at = std::max(bounds.safe_at, depth);
  }
  return win;
}

bool GameSolver::bob_wins(std::span<const std::int64_t> pebbles, int depth)
{
  if (pebbles.size() != arr_->num_cells())
    throw InputError("distribution does not match the arrangement");
  if (has_empty(pebbles))
    return true;
  Distribution p(pebbles.begin(), pebbles.end());
  return search(p, depth);
}

SearchResult GameSolver::solve(std::span<const std::int64_t> pebbles, int depth)
{
  if (depth < 1)
    throw InputError("search depth must be at least 1");
  const std::int64_t start_nodes = nodes_;
  if (!bob_wins(pebbles, depth))
    return {Verdict::NoForcedWin, depth, {}, nodes_ - start_nodes};

  // Walk one winning line of play; Alice takes the reply that takes longest to lose.
  std::vector<Move> pv;
  Distribution p(pebbles.begin(), pebbles.end());
  int left = depth;
  while (!has_empty(p) && left > 0) {
    LineId line = 0;
    while (line < arr_->num_lines() && !bob_line_wins(p, line, left))
      ++line;
    if (line == arr_->num_lines())
      break;
    Side reply = Side::Plus;
    int longest = -1;
    for (Side s : {Side::Plus, Side::Minus}) {
      Distribution child = p;
      add(child, deltas_[2 * line + static_cast<std::size_t>(s)], 1);
      int needed = 0;
      if (!has_empty(child))
        for (needed = 1; needed < left && !search(child, needed);)
          ++needed;
      if (needed > longest) {
        longest = needed;
        reply = s;
      }
    }
    pv.push_back({line, reply});
    add(p, deltas_[2 * line + static_cast<std::size_t>(reply)], 1);
    --left;
  }
  return {Verdict::BobForcesWin, depth, std::move(pv), nodes_ - start_nodes};
}

SearchResult exhaustive_bob_wins(const Arrangement& arr, std::span<const std::int64_t> pebbles, int depth,
                                 std::int64_t node_budget)
{
  GameSolver solver(arr, node_budget);
  return solver.solve(pebbles, depth);
}

Certification certify_f(const Arrangement& arr, std::span<const int> depth_schedule, std::int64_t node_budget)
{
  Certification out{false, arr.f_value(), 0, 0, 0, {}};
  if (depth_schedule.empty()) {
    out.detail = "empty depth schedule";
    return out;
  }
  std::vector<int> schedule(depth_schedule.begin(), depth_schedule.end());
  std::sort(schedule.begin(), schedule.end());
  const std::int64_t below = arr.f_value() - 1;
  if (composition_count(below, arr.num_cells()) > 1e6) {
    out.detail = "too many distributions to enumerate";
    return out;
  }

  GameSolver solver(arr, node_budget);
  try {
    bool all_lost = true;
    std::string survivor;
    for_each_composition(below, arr.num_cells(), [&](const Distribution& p) {
      if (!all_lost)
        return;
      ++out.distributions_checked;
      if (has_empty(p))
        return;
      for (int d : schedule)
        if (solver.bob_wins(p, d)) {
          out.depth_needed = std::max(out.depth_needed, d);
          return;
        }
      all_lost = false;
      for (auto v : p)
        survivor += std::to_string(v) + " ";
    });
    if (!all_lost) {
      out.detail = "distribution [ " + survivor + "] with f - 1 pebbles survives depth " +
                   std::to_string(schedule.back());
      out.nodes = solver.nodes();
      return out;
    }
    const Distribution optimal = autopilot_distribution(arr, Orientation::optimal(arr));
    if (solver.bob_wins(optimal, schedule.back())) {
      out.detail = "optimal autopilot distribution loses within depth " + std::to_string(schedule.back());
      out.nodes = solver.nodes();
      return out;
    }
  } catch (const BudgetExceeded& e) {
    out.detail = std::string("inconclusive: ") + e.what();
    out.nodes = solver.nodes();
    return out;
  }
  out.certified = true;
  out.nodes = solver.nodes();
  out.detail = "certified";
  return out;
}

} // namespace pebble

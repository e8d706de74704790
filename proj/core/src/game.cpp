#include "pebble/game.hpp"

#include "pebble/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace pebble {

std::int64_t total(std::span<const std::int64_t> pebbles) noexcept
{
  return std::accumulate(pebbles.begin(), pebbles.end(), std::int64_t{0});
}

std::strong_ordering lex_compare(std::span<const std::int64_t> lhs, std::span<const std::int64_t> rhs)
{
  if (lhs.size() != rhs.size())
    throw InputError("cannot compare distributions of different lengths");
  return std::lexicographical_compare_three_way(lhs.begin(), lhs.end(), rhs.begin(), rhs.end());
}

std::uint64_t state_hash(std::int64_t round, std::span<const std::int64_t> pebbles) noexcept
{
  constexpr std::uint64_t offset_basis = 0xcbf29ce484222325ULL;
  constexpr std::uint64_t prime = 0x100000001b3ULL;
  std::uint64_t h = offset_basis;
  auto feed = [&h](std::int64_t value) {
    auto bits = static_cast<std::uint64_t>(value);
    for (int i = 0; i < 8; ++i) {
      h ^= bits & 0xffU;
      h *= prime;
      bits >>= 8;
    }
  };
  feed(round);
  for (std::int64_t p : pebbles)
    feed(p);
  return h;
}

std::string hash_hex(std::uint64_t hash)
{
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::vector<std::int64_t> move_delta(const Arrangement& arr, const Move& move)
{
  std::vector<std::int64_t> delta(arr.num_cells(), 1);
  for (BoxId b : arr.boxes_on(move.line, move.removal_side))
    delta[b] = -1;
  return delta;
}

std::optional<std::pair<BoxId, BoxId>> find_small_pair(const Arrangement& arr, std::span<const std::int64_t> pebbles)
{
  for (BoxId u = 0; u < arr.num_cells(); ++u)
    for (BoxId v = u + 1; v < arr.num_cells(); ++v)
      if (pebbles[u] + pebbles[v] < arr.dual_distance(u, v) + 2)
        return std::pair{u, v};
  return std::nullopt;
}

std::string Transcript::to_jsonl() const
{
  std::ostringstream out;
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["round"] = r.round;
    j["line"] = r.line + 1;
    j["side"] = to_string(r.removal_side);
    j["total"] = r.total_after;
    j["hash"] = hash_hex(r.hash);
    out << j.dump() << '\n';
  }
  return out.str();
}

std::vector<TranscriptRecord> Transcript::parse_jsonl(std::string_view text)
{
  std::vector<TranscriptRecord> out;
  std::istringstream in{std::string(text)};
  std::string row;
  std::size_t line_no = 0;
  while (std::getline(in, row)) {
    ++line_no;
    if (row.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    try {
      const auto j = nlohmann::json::parse(row);
      const auto line = j.at("line").get<std::int64_t>();
      if (line < 1)
        throw InputError("line ids are one-based");
      const std::string hash = j.at("hash").get<std::string>();
      if (hash.size() != 16)
        throw InputError("hash must be 16 hex digits");
      out.push_back({j.at("round").get<std::int64_t>(), static_cast<LineId>(line - 1),
                     parse_side(j.at("side").get<std::string>()), j.at("total").get<std::int64_t>(),
                     std::stoull(hash, nullptr, 16)});
    } catch (const nlohmann::json::exception& e) {
      throw InputError("transcript line " + std::to_string(line_no) + ": " + e.what());
    } catch (const InputError& e) {
      throw InputError("transcript line " + std::to_string(line_no) + ": " + e.what());
    } catch (const std::invalid_argument&) {
      throw InputError("transcript line " + std::to_string(line_no) + ": malformed hash");
    }
  }
  return out;
}

std::optional<std::size_t> verify_replay(const Arrangement& arr, const Distribution& initial,
                                         std::span<const TranscriptRecord> records)
{
  Distribution p = initial;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.line >= arr.num_lines() || r.round != static_cast<std::int64_t>(i + 1))
      return i;
    const auto delta = move_delta(arr, {r.line, r.removal_side});
    for (std::size_t b = 0; b < p.size(); ++b)
      p[b] += delta[b];
    if (total(p) != r.total_after || state_hash(r.round, p) != r.hash)
      return i;
  }
  return std::nullopt;
}

GameState::GameState(std::shared_ptr<const Arrangement> arr, Distribution pebbles)
    : arr_(std::move(arr)), pebbles_(std::move(pebbles))
{
  if (!arr_)
    throw InputError("game needs an arrangement");
  if (pebbles_.size() != arr_->num_cells())
    throw InputError("distribution has " + std::to_string(pebbles_.size()) + " entries but the arrangement has " +
                     std::to_string(arr_->num_cells()) + " boxes");
  for (std::size_t b = 0; b < pebbles_.size(); ++b)
    if (pebbles_[b] < 0)
      throw InputError("box " + std::to_string(b + 1) + " has a negative pebble count");
  transcript_.initial = pebbles_;
  update_status();
}

void GameState::update_status()
{
  const auto it = std::find(pebbles_.begin(), pebbles_.end(), 0);
  if (it != pebbles_.end()) {
    status_ = Status::BobWon;
    empty_box_ = static_cast<BoxId>(it - pebbles_.begin());
  }
}

const TranscriptRecord& GameState::apply(const Move& move)
{
  if (!ongoing())
    throw StateError("the game is over");
  if (move.line >= arr_->num_lines())
    throw InputError("line " + std::to_string(move.line + 1) + " does not exist");
  for (std::int64_t& p : pebbles_)
    ++p;
  for (BoxId b : arr_->boxes_on(move.line, move.removal_side))
    pebbles_[b] -= 2;
  ++round_;
  update_status();
  last_ = {round_, move.line, move.removal_side, total(), hash()};
  if (recording_)
    transcript_.records.push_back(last_);
  return last_;
}

Outcome play(GameState& state, AliceStrategy& alice, BobStrategy& bob, std::int64_t max_rounds)
{
  while (state.ongoing() && state.round() < max_rounds) {
    const LineId line = bob.choose_line(state);
    if (line >= state.arrangement().num_lines())
      throw StrategyError("bob strategy '" + bob.name() + "' returned invalid line " + std::to_string(line + 1));
    const Side side = alice.respond(state, line);
    if (side != Side::Plus && side != Side::Minus)
      throw StrategyError("alice strategy '" + alice.name() + "' returned an invalid side");
    const Move move{line, side};
    state.apply(move);
    alice.observe(state, move);
    bob.observe(state, move);
  }
  return {state.status(), state.round(), state.empty_box()};
}

} // namespace pebble

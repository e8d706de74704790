#include "pebble/service.hpp"

#include "pebble/error.hpp"

#include <fstream>
#include <random>

namespace pebble {

std::string_view to_string(Role r) noexcept
{
  return r == Role::Alice ? "alice" : "bob";
}

void EventQueue::push(Json event)
{
  {
    std::lock_guard lock(mu_);
    if (closed_)
      return;
    events_.push_back(std::move(event));
  }
  cv_.notify_all();
}

std::optional<Json> EventQueue::pop(std::chrono::milliseconds timeout)
{
  std::unique_lock lock(mu_);
  cv_.wait_for(lock, timeout, [&] { return !events_.empty() || closed_; });
  if (events_.empty())
    return std::nullopt;
  Json e = std::move(events_.front());
  events_.pop_front();
  return e;
}

void EventQueue::close()
{
  {
    std::lock_guard lock(mu_);
    closed_ = true;
  }
  cv_.notify_all();
}

bool EventQueue::closed() const
{
  std::lock_guard lock(mu_);
  return closed_;
}

struct GameService::Session {
  std::mutex mu;
  std::string id;
  std::shared_ptr<const Arrangement> arr;
  Json analysis;
  Role human = Role::Bob;
  std::unique_ptr<GameState> state;
  std::unique_ptr<AliceStrategy> alice;
  std::unique_ptr<BobStrategy> bob;
  std::optional<LineId> pending_line;
  std::optional<TranscriptRecord> last;
  std::chrono::system_clock::time_point created;
  Clock::time_point touched;
  std::vector<std::weak_ptr<EventQueue>> subscribers;
  std::optional<std::filesystem::path> log;

  const char* to_move() const
  {
    if (!state->ongoing())
      return nullptr;
    return pending_line ? "alice" : "bob";
  }

  Json event(const std::optional<TranscriptRecord>& rec) const
  {
    Json move = nullptr;
    if (rec)
      move = {{"line", rec->line + 1}, {"side", to_string(rec->removal_side)}};
    return Json{{"round", state->round()},
                {"move", std::move(move)},
                {"pebbles", state->pebbles()},
                {"status", status_to_json(*state)},
                {"hash", hash_hex(state->hash())}};
  }

  Json record_json(const TranscriptRecord& r) const
  {
    return Json{{"round", r.round},
                {"line", r.line + 1},
                {"side", to_string(r.removal_side)},
                {"total", r.total_after},
                {"hash", hash_hex(r.hash)}};
  }

  Json descriptor() const
  {
    const char* mover = to_move();
    Json out{{"id", id},
             {"human_role", to_string(human)},
             {"engine", human == Role::Bob ? alice->name() : bob->name()},
             {"arrangement", analysis},
             {"f_value", arr->f_value()},
             {"pebbles", state->pebbles()},
             {"total", state->total()},
             {"round", state->round()},
             {"status", status_to_json(*state)},
             {"hash", hash_hex(state->hash())},
             {"to_move", mover ? Json(mover) : Json(nullptr)},
             {"pending_line", pending_line ? Json(*pending_line + 1) : Json(nullptr)},
             {"last_record", last ? record_json(*last) : Json(nullptr)}};
    return out;
  }

  void publish(const Json& e)
  {
    std::erase_if(subscribers, [&](const std::weak_ptr<EventQueue>& w) {
      auto q = w.lock();
      if (!q || q->closed())
        return true;
      q->push(e);
      return false;
    });
  }

  void persist(const TranscriptRecord& r) const
  {
    if (!log)
      return;
    std::ofstream out(*log, std::ios::app);
    out << record_json(r).dump() << '\n';
  }

  void engine_pick_line()
  {
    pending_line.reset();
    if (!state->ongoing())
      return;
    const LineId l = bob->choose_line(*state);
    if (l >= arr->num_lines())
      throw StrategyError(bob->name() + " chose line " + std::to_string(l + 1) + " which does not exist");
    pending_line = l;
  }
};

namespace {

Role parse_role(const nlohmann::json& j)
{
  const std::string s = j.is_string() ? j.get<std::string>() : std::string();
  if (s == "alice")
    return Role::Alice;
  if (s == "bob")
    return Role::Bob;
  throw ServiceError(400, "invalid_request", "human_role must be \"alice\" or \"bob\"");
}

std::vector<Line> request_lines(const nlohmann::json& req)
{
  if (req.contains("lines"))
    return lines_from_json(req);
  const auto gen = req.find("generator");
  if (gen == req.end())
    throw ServiceError(400, "invalid_request", "request needs \"lines\" or \"generator\"");
  if (!gen->is_string() || !req.contains("n") || !req.at("n").is_number_integer())
    throw ServiceError(400, "invalid_request", "a generator needs a kind name and an integer \"n\"");
  const int n = req.at("n").get<int>();
  if (n < 1 || n > 64)
    throw ServiceError(400, "invalid_request", "n must be between 1 and 64");
  std::uint64_t seed = 1;
  if (req.contains("seed")) {
    if (!req.at("seed").is_number_integer() || req.at("seed").get<std::int64_t>() < 0)
      throw ServiceError(400, "invalid_request", "seed must be a non-negative integer");
    seed = req.at("seed").get<std::uint64_t>();
  }
  return generate(parse_family(gen->get<std::string>()), n, seed);
}

std::shared_ptr<const Arrangement> build(const nlohmann::json& req, std::size_t max_cells)
{
  auto arr = std::make_shared<const Arrangement>(Arrangement::build(request_lines(req)));
  if (arr->num_cells() > max_cells)
    throw ServiceError(400, "too_large", "arrangement has " + std::to_string(arr->num_cells()) + " cells");
  return arr;
}

Distribution request_pebbles(const nlohmann::json& req, const Arrangement& arr)
{
  const nlohmann::json src = req.value("pebbles", nlohmann::json("optimal"));
  nlohmann::json values;
  if (src.is_string()) {
    const auto s = src.get<std::string>();
    if (s == "optimal")
      return autopilot_distribution(arr, Orientation::optimal(arr));
    if (s == "deficit1")
      return one_short_distribution(arr);
    throw ServiceError(400, "invalid_request", "pebbles must be \"optimal\", \"deficit1\" or explicit counts");
  }
  if (src.is_array())
    values = src;
  else if (src.is_object() && src.contains("values"))
    values = src.at("values");
  else
    throw ServiceError(400, "invalid_request", "pebbles must be \"optimal\", \"deficit1\" or explicit counts");
  Distribution p = distribution_from_json(nlohmann::json{{"pebbles", values}});
  if (p.size() != arr.num_cells())
    throw ServiceError(400, "invalid_request",
                       "expected " + std::to_string(arr.num_cells()) + " pebble counts, got " +
                           std::to_string(p.size()));
  return p;
}

std::optional<std::int64_t> round_token(const nlohmann::json& payload)
{
  if (!payload.contains("round"))
    return std::nullopt;
  if (!payload.at("round").is_number_integer())
    throw ServiceError(400, "invalid_request", "round must be an integer");
  return payload.at("round").get<std::int64_t>();
}

} // namespace

GameService::GameService(ServiceConfig config) : config_(std::move(config)), id_state_(std::random_device{}())
{
  id_state_ = (id_state_ << 32) ^ std::random_device{}();
  if (config_.transcript_dir)
    std::filesystem::create_directories(*config_.transcript_dir);
}

GameService::~GameService()
{
  std::unique_lock lock(map_mu_);
  for (auto& [id, s] : sessions_) {
    std::lock_guard sl(s->mu);
    for (auto& w : s->subscribers)
      if (auto q = w.lock())
        q->close();
  }
}

std::string GameService::new_id()
{
  std::lock_guard lock(id_mu_);
  std::mt19937_64 rng(id_state_ ^ ++created_);
  id_state_ = rng();
  return hash_hex(rng()) + hash_hex(id_state_);
}

Json GameService::create_session(const nlohmann::json& req)
{
  if (!req.is_object())
    throw ServiceError(400, "invalid_request", "expected a JSON object");
  evict_idle();
  auto s = std::make_shared<Session>();
  try {
    s->human = parse_role(req.value("human_role", nlohmann::json()));
    s->arr = build(req, config_.max_cells);
    Distribution p = request_pebbles(req, *s->arr);
    const std::string engine =
        req.value("engine", std::string(s->human == Role::Bob ? "autopilot" : "monovariant"));
    const std::uint64_t seed = req.value("engine_seed", config_.seed);
    if (s->human == Role::Bob)
      s->alice = make_alice(engine, *s->arr, seed);
    else
      s->bob = make_bob(engine, *s->arr, p, seed);
    s->state = std::make_unique<GameState>(s->arr, std::move(p));
    if (s->human == Role::Alice)
      s->engine_pick_line();
  } catch (const InputError& e) {
    throw ServiceError(400, "invalid_request", e.what());
  } catch (const StrategyError& e) {
    throw ServiceError(400, "strategy_unavailable", e.what());
  }
  s->analysis = analysis_to_json(*s->arr, true);
  s->id = new_id();
  s->created = std::chrono::system_clock::now();
  s->touched = Clock::now();
  if (config_.transcript_dir) {
    s->log = *config_.transcript_dir / (s->id + ".jsonl");
    std::ofstream head(*config_.transcript_dir / (s->id + ".json"));
    head << Json{{"lines", lines_to_json(s->arr->lines())["lines"]},
                 {"initial", s->state->pebbles()},
                 {"human_role", to_string(s->human)}}
                .dump()
         << '\n';
    std::ofstream(*s->log).flush();
  }
  Json out = s->descriptor();
  std::unique_lock lock(map_mu_);
  sessions_.emplace(s->id, s);
  return out;
}

std::shared_ptr<GameService::Session> GameService::find(const std::string& id) const
{
  std::shared_lock lock(map_mu_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end())
    throw ServiceError(404, "not_found", "no session " + id);
  return it->second;
}

Json GameService::get_state(const std::string& id)
{
  auto s = find(id);
  std::lock_guard lock(s->mu);
  s->touched = Clock::now();
  return s->descriptor();
}

Json GameService::submit_move(const std::string& id, const nlohmann::json& payload)
{
  auto s = find(id);
  std::lock_guard lock(s->mu);
  s->touched = Clock::now();
  if (!payload.is_object())
    throw ServiceError(400, "invalid_request", "expected a JSON object");
  if (!s->state->ongoing())
    throw ServiceError(409, "game_over", "the game is over", status_to_json(*s->state));
  if (const auto r = round_token(payload); r && *r != s->state->round())
    throw ServiceError(409, "out_of_turn", "round " + std::to_string(*r) + " has already been played",
                       Json{{"round", s->state->round()}});

  Move move{};
  if (s->human == Role::Bob) {
    if (payload.contains("side"))
      throw ServiceError(409, "out_of_turn", "the engine plays Alice in this session");
    if (!payload.contains("line") || !payload.at("line").is_number_integer())
      throw ServiceError(400, "invalid_request", "expected an integer \"line\"");
    const auto line = payload.at("line").get<std::int64_t>();
    if (line < 1 || line > static_cast<std::int64_t>(s->arr->num_lines()))
      throw ServiceError(400, "invalid_line", "line " + std::to_string(line) + " does not exist",
                         Json{{"lines", s->arr->num_lines()}});
    move.line = static_cast<LineId>(line - 1);
  } else {
    if (payload.contains("line"))
      throw ServiceError(409, "out_of_turn", "the engine plays Bob in this session");
    if (!payload.contains("side") || !payload.at("side").is_string())
      throw ServiceError(400, "invalid_request", "expected \"side\": \"plus\" or \"minus\"");
    try {
      move.removal_side = parse_side(payload.at("side").get<std::string>());
    } catch (const InputError& e) {
      throw ServiceError(400, "invalid_request", e.what());
    }
    move.line = *s->pending_line;
  }

  try {
    if (s->human == Role::Bob)
      move.removal_side = s->alice->respond(*s->state, move.line);
    s->last = s->state->apply(move);
    if (s->human == Role::Bob)
      s->alice->observe(*s->state, move);
    else
      s->bob->observe(*s->state, move);
    s->persist(*s->last);
    if (s->human == Role::Alice)
      s->engine_pick_line();
  } catch (const StrategyError& e) {
    throw ServiceError(500, "engine_error", e.what());
  } catch (const InvariantViolation& e) {
    throw ServiceError(500, "engine_error", e.what());
  }
  s->publish(s->event(s->last));
  return s->descriptor();
}

Json GameService::diagnostics(const std::string& id)
{
  auto s = find(id);
  std::lock_guard lock(s->mu);
  s->touched = Clock::now();
  Json lines = Json::array();
  for (LineId l = 0; l < s->arr->num_lines(); ++l) {
    const auto& info = s->arr->line_info(l);
    lines.push_back({{"id", l + 1}, {"rank", info.rank}, {"smaller_side", to_string(info.smaller_side)}});
  }
  Json engine = s->human == Role::Bob ? alice_diagnostics(*s->alice, *s->state)
                                      : bob_diagnostics(*s->bob, *s->state);
  return Json{{"id", s->id},
              {"f_value", s->arr->f_value()},
              {"lines", std::move(lines)},
              {"engine", std::move(engine)},
              {"round", s->state->round()},
              {"hash", hash_hex(s->state->hash())}};
}

Json GameService::analyze(const nlohmann::json& req) const
{
  if (!req.is_object())
    throw ServiceError(400, "invalid_request", "expected a JSON object");
  try {
    return analysis_to_json(*build(req, config_.max_cells), true);
  } catch (const InputError& e) {
    throw ServiceError(400, "invalid_request", e.what());
  }
}

std::shared_ptr<EventQueue> GameService::subscribe(const std::string& id)
{
  auto s = find(id);
  auto q = std::make_shared<EventQueue>();
  std::lock_guard lock(s->mu);
  q->push(s->event(std::nullopt));
  s->subscribers.push_back(q);
  return q;
}

std::size_t GameService::evict_idle(Clock::time_point now)
{
  std::unique_lock lock(map_mu_);
  return std::erase_if(sessions_, [&](auto& entry) {
    auto& s = entry.second;
    std::lock_guard sl(s->mu);
    if (now - s->touched < config_.ttl)
      return false;
    for (auto& w : s->subscribers)
      if (auto q = w.lock())
        q->close();
    return true;
  });
}

std::size_t GameService::session_count() const
{
  std::shared_lock lock(map_mu_);
  return sessions_.size();
}

} // namespace pebble

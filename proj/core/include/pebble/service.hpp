#pragma once

#include "pebble/io.hpp"

#include <chrono>
#include <condition_variable>
#include <deque>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace pebble {

/// A request the service rejects. `status` is the HTTP status code; the body is {code, message, detail}.
class ServiceError : public std::runtime_error {
public:
  ServiceError(int status, std::string code, const std::string& message, Json detail = nullptr)
      : std::runtime_error(message), status_(status), code_(std::move(code)), detail_(std::move(detail))
  {
  }

  int status() const noexcept { return status_; }
  const std::string& code() const noexcept { return code_; }
  const Json& detail() const noexcept { return detail_; }
  Json to_json() const { return Json{{"code", code_}, {"message", what()}, {"detail", detail_}}; }

private:
  int status_;
  std::string code_;
  Json detail_;
};

/// Events pushed to one stream subscriber, in round order.
class EventQueue {
public:
  void push(Json event);
  /// Waits up to `timeout`; nullopt on timeout or once closed and drained.
  std::optional<Json> pop(std::chrono::milliseconds timeout);
  void close();
  bool closed() const;

private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Json> events_;
  bool closed_ = false;
};

struct ServiceConfig {
  std::chrono::seconds ttl{3600};
  /// When set, each session appends its transcript to <dir>/<id>.jsonl.
  std::optional<std::filesystem::path> transcript_dir;
  /// Base seed for engine strategies that use randomness.
  std::uint64_t seed = 0;
  /// Sessions above this many cells are refused.
  std::size_t max_cells = 4096;
};

enum class Role { Alice, Bob };

class GameService {
public:
  using Clock = std::chrono::steady_clock;

  explicit GameService(ServiceConfig config = {});
  ~GameService();

  /// {lines | generator+n+seed, human_role, engine, pebbles}; returns the session descriptor.
  Json create_session(const nlohmann::json& request);
  Json get_state(const std::string& id);
  /// {line} when the human is Bob, {side} when the human is Alice; an optional "round"
  /// must equal the current round, so concurrent submissions of one turn serialize to one winner.
  Json submit_move(const std::string& id, const nlohmann::json& payload);
  Json diagnostics(const std::string& id);
  /// Arrangement in ({lines} or a generator spec), analysis with display polygons out.
  Json analyze(const nlohmann::json& request) const;

  /// Registers a stream subscriber; the first queued event is a snapshot of the current state.
  std::shared_ptr<EventQueue> subscribe(const std::string& id);

  /// Drops sessions idle since before `now - ttl`; returns how many were removed.
  std::size_t evict_idle(Clock::time_point now = Clock::now());
  std::size_t session_count() const;

private:
  struct Session;

  std::shared_ptr<Session> find(const std::string& id) const;
  std::string new_id();

  ServiceConfig config_;
  mutable std::shared_mutex map_mu_;
  std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex id_mu_;
  std::uint64_t id_state_;
  std::uint64_t created_ = 0;
};

std::string_view to_string(Role r) noexcept;

} // namespace pebble

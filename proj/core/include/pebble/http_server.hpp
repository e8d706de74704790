#pragma once

#include "pebble/service.hpp"

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>

namespace pebble {

/// HTTP JSON API and WebSocket stream on one port. One thread per connection.
///
///   POST /api/games                   create a session
///   GET  /api/games/{id}              session state
///   POST /api/games/{id}/moves        {line} or {side}, optional {round}
///   GET  /api/games/{id}/diagnostics  engine internals
///   POST /api/analyze                 arrangement analysis
///   GET  /api/games/{id}/stream       WebSocket upgrade; {round, move, pebbles, status, hash} events
class HttpServer {
public:
  HttpServer(GameService& service, std::string address, std::uint16_t port);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds and starts accepting in a background thread. Returns the bound port (useful with port 0).
  std::uint16_t start();
  /// Blocks until stop() has been called from another thread.
  void wait();
  void stop();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

} // namespace pebble

#include "pebble/http_server.hpp"

#include "pebble/error.hpp"

#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include <sys/socket.h>

#include <condition_variable>
#include <list>
#include <mutex>
#include <thread>
#include <unordered_set>

namespace pebble {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

using Request = http::request<http::string_body>;
using Response = http::response<http::string_body>;

std::vector<std::string> split_path(beast::string_view raw)
{
  std::string_view target(raw.data(), raw.size());
  if (const auto q = target.find('?'); q != std::string_view::npos)
    target = target.substr(0, q);
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= target.size()) {
    auto end = target.find('/', start);
    if (end == std::string_view::npos)
      end = target.size();
    if (end > start)
      parts.emplace_back(target.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

Response make_response(const Request& req, http::status status, const Json& body)
{
  Response res{status, req.version()};
  res.set(http::field::content_type, "application/json");
  res.set(http::field::access_control_allow_origin, "*");
  res.keep_alive(req.keep_alive());
  if (!body.is_null())
    res.body() = body.dump();
  res.prepare_payload();
  return res;
}

Response error_response(const Request& req, int status, const std::string& code, const std::string& message,
                        Json detail = nullptr)
{
  return make_response(req, static_cast<http::status>(status),
                       Json{{"code", code}, {"message", message}, {"detail", std::move(detail)}});
}

nlohmann::json parse_body(const Request& req)
{
  if (req.body().empty())
    return nlohmann::json::object();
  return nlohmann::json::parse(req.body());
}

} // namespace

struct HttpServer::Impl {
  struct Worker {
    std::thread thread;
    std::shared_ptr<std::atomic<bool>> done;
  };

  GameService& service;
  std::string address;
  std::uint16_t port;
  asio::io_context ioc;
  tcp::acceptor acceptor{ioc};
  std::thread accept_thread;
  std::atomic<bool> stopping{false};

  std::mutex mu;
  std::condition_variable stopped_cv;
  bool stopped = false;
  std::list<Worker> workers;
  std::unordered_set<int> open_fds;

  Impl(GameService& s, std::string a, std::uint16_t p) : service(s), address(std::move(a)), port(p) {}

  Response route(const Request& req);
  void serve(tcp::socket sock);
  void stream(tcp::socket sock, const Request& req, const std::string& id);
  void accept_loop();
  void reap();
};

Response HttpServer::Impl::route(const Request& req)
{
  const auto parts = split_path(req.target());
  const auto method = req.method();
  try {
    if (method == http::verb::options) {
      Response res = make_response(req, http::status::no_content, nullptr);
      res.set(http::field::access_control_allow_methods, "GET, POST, OPTIONS");
      res.set(http::field::access_control_allow_headers, "Content-Type");
      return res;
    }
    if (parts.size() < 2 || parts[0] != "api")
      return error_response(req, 404, "not_found", "no route for " + std::string(req.target()));

    auto require = [&](http::verb v) {
      if (method != v)
        throw ServiceError(405, "method_not_allowed", std::string(req.method_string()) + " not allowed here");
    };
    if (parts.size() == 2 && parts[1] == "analyze") {
      require(http::verb::post);
      return make_response(req, http::status::ok, service.analyze(parse_body(req)));
    }
    if (parts[1] == "games") {
      if (parts.size() == 2) {
        require(http::verb::post);
        return make_response(req, http::status::created, service.create_session(parse_body(req)));
      }
      const std::string& id = parts[2];
      if (parts.size() == 3) {
        require(http::verb::get);
        return make_response(req, http::status::ok, service.get_state(id));
      }
      if (parts.size() == 4 && parts[3] == "moves") {
        require(http::verb::post);
        return make_response(req, http::status::ok, service.submit_move(id, parse_body(req)));
      }
      if (parts.size() == 4 && parts[3] == "diagnostics") {
        require(http::verb::get);
        return make_response(req, http::status::ok, service.diagnostics(id));
      }
      if (parts.size() == 4 && parts[3] == "stream")
        return error_response(req, 426, "upgrade_required", "the stream is a WebSocket endpoint");
    }
    return error_response(req, 404, "not_found", "no route for " + std::string(req.target()));
  } catch (const ServiceError& e) {
    return make_response(req, static_cast<http::status>(e.status()), e.to_json());
  } catch (const nlohmann::json::exception& e) {
    return error_response(req, 400, "invalid_json", e.what());
  } catch (const InputError& e) {
    return error_response(req, 400, "invalid_request", e.what());
  } catch (const std::exception& e) {
    return error_response(req, 500, "internal", e.what());
  }
}

void HttpServer::Impl::stream(tcp::socket sock, const Request& req, const std::string& id)
{
  beast::error_code ec;
  std::shared_ptr<EventQueue> queue;
  try {
    queue = service.subscribe(id);
  } catch (const ServiceError& e) {
    http::write(sock, make_response(req, static_cast<http::status>(e.status()), e.to_json()), ec);
    return;
  }
  websocket::stream<tcp::socket> ws(std::move(sock));
  ws.accept(req, ec);
  if (ec)
    return;
  ws.text(true);
  beast::flat_buffer incoming;
  while (!stopping) {
    if (auto event = queue->pop(std::chrono::milliseconds(100))) {
      ws.write(asio::buffer(event->dump()), ec);
      if (ec)
        break;
    } else if (queue->closed()) {
      ws.close(websocket::close_code::going_away, ec);
      break;
    }
    if (ws.next_layer().available(ec) > 0) {
      ws.read(incoming, ec);
      if (ec)
        break;
      incoming.consume(incoming.size());
    }
  }
  queue->close();
}

void HttpServer::Impl::serve(tcp::socket sock)
{
  beast::flat_buffer buffer;
  beast::error_code ec;
  for (;;) {
    Request req;
    http::read(sock, buffer, req, ec);
    if (ec)
      break;
    if (websocket::is_upgrade(req)) {
      const auto parts = split_path(req.target());
      if (parts.size() == 4 && parts[0] == "api" && parts[1] == "games" && parts[3] == "stream") {
        stream(std::move(sock), req, parts[2]);
        return;
      }
      http::write(sock, error_response(req, 404, "not_found", "no stream at " + std::string(req.target())), ec);
      break;
    }
    Response res = route(req);
    http::write(sock, res, ec);
    if (ec || !res.keep_alive())
      break;
  }
  sock.shutdown(tcp::socket::shutdown_both, ec);
}

void HttpServer::Impl::reap()
{
  std::lock_guard lock(mu);
  for (auto it = workers.begin(); it != workers.end();) {
    if (*it->done) {
      it->thread.join();
      it = workers.erase(it);
    } else {
      ++it;
    }
  }
}

void HttpServer::Impl::accept_loop()
{
  while (!stopping) {
    beast::error_code ec;
    tcp::socket sock{ioc};
    acceptor.accept(sock, ec);
    if (ec || stopping)
      break;
    reap();
    auto done = std::make_shared<std::atomic<bool>>(false);
    std::lock_guard lock(mu);
    const int fd = sock.native_handle();
    open_fds.insert(fd);
    workers.push_back(Worker{std::thread([this, done, fd, s = std::move(sock)]() mutable {
                               serve(std::move(s));
                               {
                                 std::lock_guard l(mu);
                                 open_fds.erase(fd);
                               }
                               *done = true;
                             }),
                             done});
  }
}

HttpServer::HttpServer(GameService& service, std::string address, std::uint16_t port)
    : impl_(std::make_unique<Impl>(service, std::move(address), port))
{
}

HttpServer::~HttpServer()
{
  stop();
}

std::uint16_t HttpServer::start()
{
  const tcp::endpoint endpoint{asio::ip::make_address(impl_->address), impl_->port};
  impl_->acceptor.open(endpoint.protocol());
  impl_->acceptor.set_option(asio::socket_base::reuse_address(true));
  impl_->acceptor.bind(endpoint);
  impl_->acceptor.listen();
  impl_->port = impl_->acceptor.local_endpoint().port();
  impl_->accept_thread = std::thread([this] { impl_->accept_loop(); });
  return impl_->port;
}

void HttpServer::wait()
{
  std::unique_lock lock(impl_->mu);
  impl_->stopped_cv.wait(lock, [&] { return impl_->stopped; });
}

void HttpServer::stop()
{
  if (impl_->stopping.exchange(true))
    return;
  if (impl_->acceptor.is_open())
    ::shutdown(impl_->acceptor.native_handle(), SHUT_RDWR);
  if (impl_->accept_thread.joinable())
    impl_->accept_thread.join();
  beast::error_code ec;
  impl_->acceptor.close(ec);
  std::list<Impl::Worker> workers;
  {
    std::lock_guard lock(impl_->mu);
    for (int fd : impl_->open_fds)
      ::shutdown(fd, SHUT_RDWR);
    workers.swap(impl_->workers);
  }
  for (auto& w : workers)
    w.thread.join();
  {
    std::lock_guard lock(impl_->mu);
    impl_->stopped = true;
  }
  impl_->stopped_cv.notify_all();
}

} // namespace pebble

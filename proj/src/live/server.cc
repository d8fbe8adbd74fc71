// Copyright 2026 The Tamer Mario Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tamer/live/server.h"

#include <chrono>
#include <condition_variable>
#include <deque>
#include <filesystem>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include <boost/asio.hpp>
#include <boost/beast.hpp>

#include "tamer/common/rng.h"

namespace tamer::live {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::size_t kMaxQueuedMessages = 1024;

class WsConn;

// A session plus everything that must only be touched on its strand.
struct Host {
  Host(net::io_context& ioc, std::unique_ptr<Session> s)
      : strand(net::make_strand(ioc)), timer(strand), session(std::move(s)) {}

  net::strand<net::io_context::executor_type> strand;
  net::steady_timer timer;
  std::unique_ptr<Session> session;
  Clock::time_point origin;
  std::int64_t ticks_scheduled = 0;
  TimeUs last_tick = -1;
  std::vector<std::weak_ptr<WsConn>> conns;

  TimeUs now_us() const {
    if (session->state() == SessionState::kIdle) return 0;
    return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - origin).count();
  }
};

nlohmann::json error_json(const std::string& message) {
  return {{"type", "error"}, {"message", message}};
}

class WsConn : public std::enable_shared_from_this<WsConn> {
 public:
  using Handler = std::function<void(std::shared_ptr<WsConn>, const std::string&)>;

  WsConn(tcp::socket socket, std::shared_ptr<Host> host, Handler on_message)
      : ws_(std::move(socket)), host_(std::move(host)), on_message_(std::move(on_message)) {}

  void run(http::request<http::string_body> req) {
    net::dispatch(ws_.get_executor(), [self = shared_from_this(), req = std::move(req)]() mutable {
      self->ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
      self->ws_.async_accept(req, [self](beast::error_code ec) {
        if (ec) return;
        net::post(self->host_->strand, [self] {
          self->host_->conns.push_back(self);
          self->send(self->host_->session->frame().dump());
        });
        self->read();
      });
    });
  }

  // Safe from any thread.
  void send(std::string text) {
    net::post(ws_.get_executor(), [self = shared_from_this(), text = std::move(text)]() mutable {
      if (self->closed_) return;
      if (self->queue_.size() >= kMaxQueuedMessages) {
        // The client stopped reading; drop it rather than grow unbounded.
        self->closed_ = true;
        beast::error_code ignored;
        beast::get_lowest_layer(self->ws_).socket().close(ignored);
        return;
      }
      self->queue_.push_back(std::move(text));
      if (self->queue_.size() == 1) self->write_front();
    });
  }

  const std::shared_ptr<Host>& host() const { return host_; }

 private:
  void read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) {
        self->closed_ = true;
        return;
      }
      std::string text = beast::buffers_to_string(self->buffer_.data());
      self->buffer_.consume(self->buffer_.size());
      self->on_message_(self, text);
      self->read();
    });
  }

  void write_front() {
    ws_.text(true);
    ws_.async_write(net::buffer(queue_.front()),
                    [self = shared_from_this()](beast::error_code ec, std::size_t) {
                      if (ec) {
                        self->closed_ = true;
                        self->queue_.clear();
                        return;
                      }
                      self->queue_.pop_front();
                      if (!self->queue_.empty()) self->write_front();
                    });
  }

  websocket::stream<beast::tcp_stream> ws_;
  std::shared_ptr<Host> host_;
  Handler on_message_;
  beast::flat_buffer buffer_;
  std::deque<std::string> queue_;
  bool closed_ = false;
};

void broadcast(Host& host, const std::string& text) {
  std::erase_if(host.conns, [](const std::weak_ptr<WsConn>& w) { return w.expired(); });
  for (auto& w : host.conns) {
    if (auto c = w.lock()) c->send(text);
  }
}

}  // namespace

struct Server::Impl {
  explicit Impl(ServerOptions o) : options(std::move(o)), acceptor(ioc) {
    levels = sim::make_level_set(options.config.level_seed);
  }

  ServerOptions options;
  net::io_context ioc;
  tcp::acceptor acceptor;
  std::vector<std::thread> threads;
  std::shared_ptr<const sim::LevelSet> levels;
  Leaderboard board;

  std::mutex mu;  // guards hosts and next_id
  std::map<std::string, std::shared_ptr<Host>> hosts;
  std::uint64_t next_id = 1;

  std::mutex stop_mu;
  std::condition_variable stop_cv;
  bool stopped = false;

  std::shared_ptr<Host> find(const std::string& id) {
    std::lock_guard lock(mu);
    auto it = hosts.find(id);
    return it == hosts.end() ? nullptr : it->second;
  }

  std::shared_ptr<Host> create(const SessionOptions& so) {
    std::lock_guard lock(mu);
    const std::uint64_t n = next_id++;
    const std::string id = "s" + std::to_string(n);
    const std::uint64_t env_seed = Rng::derive(options.seed, n).next();
    auto session = std::make_unique<Session>(id, so, options.config, levels, env_seed,
                                             so.competitive ? &board : nullptr);
    auto host = std::make_shared<Host>(ioc, std::move(session));
    hosts.emplace(id, host);
    return host;
  }

  // --- ticking (host strand) ---

  void begin(const std::shared_ptr<Host>& host) {
    host->session->start();
    host->origin = Clock::now();
    host->ticks_scheduled = 0;
    host->last_tick = -1;
    do_tick(host);
  }

  void schedule(const std::shared_ptr<Host>& host) {
    ++host->ticks_scheduled;
    const auto period = std::chrono::duration<double>(1.0 / options.config.tick_rate);
    host->timer.expires_at(host->origin + std::chrono::duration_cast<Clock::duration>(
                                              period * static_cast<double>(host->ticks_scheduled)));
    host->timer.async_wait([this, host](beast::error_code ec) {
      if (!ec) do_tick(host);
    });
  }

  void do_tick(const std::shared_ptr<Host>& host) {
    auto& s = *host->session;
    if (s.state() != SessionState::kRunning) return;
    // Steady clock reads can repeat at microsecond resolution.
    const TimeUs now = std::max(host->now_us(), host->last_tick + 1);
    host->last_tick = now;
    TickResult r;
    try {
      r = s.tick(now);
    } catch (const std::exception& e) {
      broadcast(*host, error_json(e.what()).dump());
      return;
    }
    broadcast(*host, r.frame.dump());
    if (r.leaderboard) announce(s.options().group, *r.leaderboard);
    if (r.closed) {
      persist(*host);
      return;
    }
    schedule(host);
  }

  void announce(const std::string& group, const std::vector<LeaderboardEntry>& entries) {
    const std::string text =
        nlohmann::json{{"type", "leaderboard"}, {"group", group}, {"entries", leaderboard_json(entries)}}
            .dump();
    for (const auto& id : board.members(group)) {
      if (auto h = find(id)) net::post(h->strand, [h, text] { broadcast(*h, text); });
    }
  }

  void persist(const Host& host) {
    if (options.log_dir.empty()) return;
    std::filesystem::create_directories(options.log_dir);
    harness::save_log((std::filesystem::path(options.log_dir) / (host.session->id() + ".jsonl")).string(),
                      host.session->log());
  }

  // --- client messages (host strand) ---

  void handle_message(const std::shared_ptr<WsConn>& conn, const std::string& text) {
    auto host = conn->host();
    net::post(host->strand, [this, host, conn, text] {
      auto& s = *host->session;
      try {
        const auto msg = nlohmann::json::parse(text);
        const auto type = msg.at("type").get<std::string>();
        if (type == "start") {
          begin(host);
        } else if (type == "toggle") {
          s.toggle(host->now_us());
          conn->send(nlohmann::json{{"type", "ack"}, {"of", "toggle"},
                                    {"mode", std::string(mode_name(s.mode()))}}
                         .dump());
        } else if (type == "feedback") {
          const int sign = msg.at("sign").get<int>();
          std::optional<TimeUs> client;
          if (msg.contains("t_client") && !msg["t_client"].is_null()) {
            client = learn::from_seconds(msg["t_client"].get<double>());
          }
          const TimeUs now = host->now_us();
          s.submit_feedback(sign, now, client);
          conn->send(nlohmann::json{{"type", "ack"}, {"of", "feedback"},
                                    {"time", harness::format_seconds(now)}}
                         .dump());
        } else {
          conn->send(error_json("unknown message type: " + type).dump());
        }
      } catch (const std::exception& e) {
        conn->send(error_json(e.what()).dump());
      }
    });
  }
};

namespace {

http::response<http::string_body> make_response(const http::request<http::string_body>& req,
                                                http::status status, std::string body,
                                                std::string content_type = "application/json") {
  http::response<http::string_body> res{status, req.version()};
  res.set(http::field::server, "tamer-live");
  res.set(http::field::content_type, content_type);
  res.set(http::field::access_control_allow_origin, "*");
  res.keep_alive(req.keep_alive());
  res.body() = std::move(body);
  res.prepare_payload();
  return res;
}

// Splits "/sessions/{id}/{leaf}" into id and leaf.
bool parse_session_path(std::string_view target, std::string& id, std::string& leaf) {
  constexpr std::string_view prefix = "/sessions/";
  if (target.substr(0, prefix.size()) != prefix) return false;
  target.remove_prefix(prefix.size());
  const auto slash = target.find('/');
  if (slash == std::string_view::npos || slash == 0) return false;
  id = std::string(target.substr(0, slash));
  leaf = std::string(target.substr(slash + 1));
  return leaf.find('/') == std::string::npos;
}

class HttpConn : public std::enable_shared_from_this<HttpConn> {
 public:
  HttpConn(tcp::socket socket, Server::Impl* server)
      : stream_(std::move(socket)), server_(server) {}

  void run() {
    net::dispatch(stream_.get_executor(), [self = shared_from_this()] { self->read(); });
  }

 private:
  void read() {
    req_ = {};
    stream_.expires_after(std::chrono::seconds(30));
    http::async_read(stream_, buffer_, req_,
                     [self = shared_from_this()](beast::error_code ec, std::size_t) {
                       if (ec) return self->shutdown();
                       self->route();
                     });
  }

  void route() {
    std::string id, leaf;
    const std::string target(req_.target());
    if (websocket::is_upgrade(req_)) {
      std::shared_ptr<Host> host;
      if (parse_session_path(target, id, leaf) && leaf == "ws") host = server_->find(id);
      if (!host) return reply(http::status::not_found, error_json("unknown session").dump());
      stream_.expires_never();
      auto conn = std::make_shared<WsConn>(
          stream_.release_socket(), host,
          [server = server_](std::shared_ptr<WsConn> c, const std::string& text) {
            server->handle_message(c, text);
          });
      conn->run(std::move(req_));
      return;
    }
    if (req_.method() == http::verb::post && target == "/sessions") return create_session();
    if (req_.method() == http::verb::get && parse_session_path(target, id, leaf) && leaf == "log") {
      auto host = server_->find(id);
      if (!host) return reply(http::status::not_found, error_json("unknown session").dump());
      // The log belongs to the session strand; copy it there, reply here.
      net::post(host->strand, [self = shared_from_this(), host] {
        std::ostringstream out;
        harness::write_log(out, host->session->log());
        net::post(self->stream_.get_executor(), [self, body = out.str()]() mutable {
          self->reply(http::status::ok, std::move(body), "application/x-ndjson");
        });
      });
      return;
    }
    if (req_.method() == http::verb::options) return reply(http::status::no_content, "");
    reply(http::status::not_found, error_json("no such endpoint").dump());
  }

  void create_session() {
    try {
      const auto doc = nlohmann::json::parse(req_.body().empty() ? "{}" : req_.body());
      SessionOptions so;
      so.name = doc.value("name", std::string());
      so.competitive = doc.value("competitive", false);
      so.facial_expression_told = doc.value("facial_expression_told", false);
      so.group = doc.value("group", std::string("default"));
      auto host = server_->create(so);
      const auto& s = *host->session;
      nlohmann::json body = {{"id", s.id()},
                             {"name", s.display_name()},
                             {"condition", condition_tag(s.options())},
                             {"ws", "/sessions/" + s.id() + "/ws"},
                             {"log", "/sessions/" + s.id() + "/log"}};
      if (so.competitive) body["group"] = so.group;
      reply(http::status::created, body.dump());
    } catch (const std::exception& e) {
      reply(http::status::bad_request, error_json(e.what()).dump());
    }
  }

  void reply(http::status status, std::string body, std::string type = "application/json") {
    auto res = std::make_shared<http::response<http::string_body>>(
        make_response(req_, status, std::move(body), std::move(type)));
    http::async_write(stream_, *res,
                      [self = shared_from_this(), res](beast::error_code ec, std::size_t) {
                        if (ec || !res->keep_alive()) return self->shutdown();
                        self->read();
                      });
  }

  void shutdown() {
    beast::error_code ignored;
    stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
  }

  beast::tcp_stream stream_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
  Server::Impl* server_;
};

void accept_loop(Server::Impl* server) {
  server->acceptor.async_accept(net::make_strand(server->ioc),
                                [server](beast::error_code ec, tcp::socket socket) {
                                  if (ec == net::error::operation_aborted) return;
                                  if (!ec) std::make_shared<HttpConn>(std::move(socket), server)->run();
                                  accept_loop(server);
                                });
}

}  // namespace

Server::Server(ServerOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {
  if (impl_->options.threads < 1) throw std::invalid_argument("server needs at least one thread");
  if (!(impl_->options.config.tick_rate > 0.0)) throw std::invalid_argument("tick rate must be positive");
}

Server::~Server() { stop(); }

unsigned short Server::start() {
  auto& im = *impl_;
  const tcp::endpoint endpoint(net::ip::make_address(im.options.address), im.options.port);
  im.acceptor.open(endpoint.protocol());
  im.acceptor.set_option(net::socket_base::reuse_address(true));
  im.acceptor.bind(endpoint);
  im.acceptor.listen(net::socket_base::max_listen_connections);
  accept_loop(&im);
  for (int i = 0; i < im.options.threads; ++i) im.threads.emplace_back([&im] { im.ioc.run(); });
  return im.acceptor.local_endpoint().port();
}

void Server::stop() {
  auto& im = *impl_;
  {
    std::lock_guard lock(im.stop_mu);
    if (im.stopped) return;
    im.stopped = true;
  }
  im.ioc.stop();
  for (auto& t : im.threads) t.join();
  im.threads.clear();
  im.stop_cv.notify_all();
}

void Server::wait() {
  std::unique_lock lock(impl_->stop_mu);
  impl_->stop_cv.wait(lock, [this] { return impl_->stopped; });
}

}  // namespace tamer::live

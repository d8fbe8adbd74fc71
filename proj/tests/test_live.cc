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

#include <chrono>
#include <sstream>

#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <gtest/gtest.h>

#include "json.hpp"
#include "tamer/live/leaderboard.h"
#include "tamer/live/server.h"
#include "tamer/live/session.h"

namespace tamer::live {
namespace {

TEST(Leaderboard, RanksByScoreThenArrival) {
  Leaderboard b;
  EXPECT_EQ(b.join("g", "s1", "ann"), "ann");
  EXPECT_EQ(b.join("g", "s2", "bob"), "bob");
  EXPECT_EQ(b.join("g", "s3", "cat"), "cat");
  b.report_game("g", "s2", 500);
  b.report_game("g", "s3", 500);
  const auto st = b.report_game("g", "s1", 100);
  ASSERT_EQ(st.size(), 3u);
  // bob reached 500 first.
  EXPECT_EQ(st[0].name, "bob");
  EXPECT_EQ(st[1].name, "cat");
  EXPECT_EQ(st[2].name, "ann");
  for (int i = 0; i < 3; ++i) EXPECT_EQ(st[static_cast<std::size_t>(i)].rank, i + 1);
  // cat overtakes with a new game.
  EXPECT_EQ(b.report_game("g", "s3", 700)[0].name, "cat");
}

TEST(Leaderboard, FirstJoinerIsRankOneWithZero) {
  Leaderboard b;
  b.join("g", "s1", "ann");
  const auto st = b.standings("g");
  ASSERT_EQ(st.size(), 1u);
  EXPECT_EQ(st[0].rank, 1);
  EXPECT_EQ(st[0].score, 0);
  b.join("g", "s2", "bob");
  EXPECT_EQ(b.standings("g").size(), 2u);
}

TEST(Leaderboard, DuplicateNamesGetSuffixes) {
  Leaderboard b;
  EXPECT_EQ(b.join("g", "s1", "ann"), "ann");
  EXPECT_EQ(b.join("g", "s2", "ann"), "ann-2");
  EXPECT_EQ(b.join("g", "s3", "ann"), "ann-3");
  EXPECT_EQ(b.join("other", "s4", "ann"), "ann");
  b.leave("g", "s2");
  EXPECT_EQ(b.members("g").size(), 2u);
}

TEST(Leaderboard, JsonInPoints) {
  Leaderboard b;
  b.join("g", "s1", "ann");
  const auto doc = leaderboard_json(b.report_game("g", "s1", 12345));
  EXPECT_DOUBLE_EQ(doc[0]["score"].get<double>(), 123.45);
  EXPECT_EQ(doc[0]["rank"], 1);
}

LiveConfig fast_config() {
  LiveConfig c;
  c.tick_rate = 24.0;
  return c;
}

TimeUs tick_at(int k) { return harness::step_time(k, 24.0); }

std::unique_ptr<Session> make_session(const LiveConfig& cfg, Leaderboard* board = nullptr,
                                      bool competitive = false,
                                      std::shared_ptr<const sim::LevelSet> levels = nullptr) {
  SessionOptions o;
  o.name = "tester";
  o.competitive = competitive;
  o.group = "g";
  if (!levels) levels = sim::make_level_set(cfg.level_seed);
  return std::make_unique<Session>("s1", o, cfg, levels, 42, board);
}

// Levels with no floor: every game ends a few ticks after it starts.
std::shared_ptr<const sim::LevelSet> bottomless_levels() {
  auto set = std::make_shared<sim::LevelSet>();
  for (auto& lv : set->levels) {
    lv.length = 40;
    lv.tiles.assign(static_cast<std::size_t>(lv.length * lv.height), sim::TileKind::kEmpty);
    lv.finish_x = 35;
  }
  return set;
}

TEST(Session, LifecycleChecks) {
  auto s = make_session(fast_config());
  EXPECT_THROW(s->tick(0), IllegalState);
  EXPECT_THROW(s->submit_feedback(1, 0), IllegalState);
  s->start();
  EXPECT_THROW(s->start(), IllegalState);
  EXPECT_THROW(s->submit_feedback(1, 0), IllegalState);  // nothing in flight yet
  s->tick(0);
  EXPECT_THROW(s->submit_feedback(0, 10), std::invalid_argument);
  EXPECT_THROW(s->tick(0), std::invalid_argument);
  s->close(100);
  EXPECT_THROW(s->tick(200), IllegalState);
  EXPECT_EQ(s->log().steps.size(), 1u);
}

TEST(Session, ConditionTags) {
  EXPECT_EQ(condition_tag({"a", false, false, ""}), "control");
  EXPECT_EQ(condition_tag({"a", false, true, ""}), "facial-expression");
  EXPECT_EQ(condition_tag({"a", true, false, ""}), "competitive");
  EXPECT_EQ(condition_tag({"a", true, true, ""}), "competitive-facial-expression");
  EXPECT_THROW(make_session(fast_config(), nullptr, true), std::invalid_argument);
}

TEST(Session, PressesAreLoggedOnTheirStep) {
  auto s = make_session(fast_config());
  s->start();
  s->tick(tick_at(0));
  s->submit_feedback(1, tick_at(0) + 10, 5);
  s->submit_feedback(-1, tick_at(1));  // same microsecond as the next tick
  s->tick(tick_at(1));
  s->tick(tick_at(2));
  const auto& steps = s->log().steps;
  ASSERT_EQ(steps.size(), 2u);
  ASSERT_EQ(steps[0].events.size(), 2u);
  EXPECT_EQ(steps[0].events[0].value, 1.0);
  EXPECT_EQ(steps[0].events[0].client_time, 5);
  EXPECT_EQ(steps[0].events[1].value, -1.0);
  EXPECT_EQ(steps[0].events[1].time, tick_at(1));
  EXPECT_NO_THROW(harness::validate_log(s->log()));
  EXPECT_EQ(s->log().header.source, "live");
  EXPECT_EQ(s->log().header.conditions, std::vector<std::string>{"control"});
}

// Three presses in a burst label every step with three times the credit
// of a single press.
TEST(Session, BurstLabelsAddUp) {
  std::vector<double> h1, h3;
  for (int presses : {1, 3}) {
    auto s = make_session(fast_config());
    s->start();
    for (int k = 0; k < 60; ++k) {
      s->tick(tick_at(k));
      if (k == 30) {
        for (int i = 0; i < presses; ++i) s->submit_feedback(1, tick_at(k) + 100);
      }
    }
    s->close(tick_at(60));
    auto& out = presses == 1 ? h1 : h3;
    for (const auto& r : s->log().steps) out.push_back(r.h);
  }
  ASSERT_EQ(h1.size(), h3.size());
  double total = 0.0;
  for (std::size_t i = 0; i < h1.size(); ++i) {
    EXPECT_NEAR(h3[i], 3.0 * h1[i], 1e-12);
    total += h3[i];
  }
  EXPECT_NEAR(total, 3.0, 1e-9);
}

TEST(Session, FrozenModeNeverChangesTheModel) {
  auto s = make_session(fast_config());
  s->start();
  int k = 0;
  for (; k < 100; ++k) {
    s->tick(tick_at(k));
    if (k % 3 == 0) s->submit_feedback(k % 2 ? 1 : -1, tick_at(k) + 1000);
  }
  s->toggle(tick_at(k - 1) + 5);
  s->tick(tick_at(k++));  // applies the toggle and flushes pending labels
  const auto frozen = s->model().hash();
  const auto logged_before = s->log().steps.size();
  for (; k < 300; ++k) {
    s->tick(tick_at(k));
    s->submit_feedback(1, tick_at(k) + 1000);
  }
  EXPECT_EQ(s->model().hash(), frozen);
  EXPECT_EQ(s->mode(), Mode::kNotTraining);
  // Presses are still recorded, with no label.
  // The first frozen step was in flight when the toggle applied; it got no
  // press.
  for (std::size_t i = logged_before + 1; i < s->log().steps.size(); ++i) {
    EXPECT_EQ(s->log().steps[i].events.size(), 1u);
    EXPECT_EQ(s->log().steps[i].h, 0.0);
  }
  EXPECT_EQ(s->frame()["mode"], "not-training");
  // Back to training: the next press changes the model.
  s->toggle(tick_at(k - 1) + 5);
  for (int j = 0; j < 40; ++j, ++k) {
    s->tick(tick_at(k));
    if (j == 0) s->submit_feedback(1, tick_at(k) + 1000);
  }
  EXPECT_NE(s->model().hash(), frozen);
}

TEST(Session, CapClosesTheSession) {
  auto cfg = fast_config();
  cfg.cap_seconds = 1.0;
  auto s = make_session(cfg);
  s->start();
  int k = 0;
  TickResult r;
  while (!r.closed) r = s->tick(tick_at(k++));
  EXPECT_EQ(k, 25);  // tick 24 lands exactly on 1 s
  EXPECT_EQ(s->state(), SessionState::kClosed);
  EXPECT_EQ(s->log().steps.back().end, 1'000'000);
  EXPECT_EQ(r.frame["state"], "closed");
  EXPECT_THROW(s->submit_feedback(1, 999'999), IllegalState);
  auto too_long = fast_config();
  too_long.cap_seconds = 901;
  EXPECT_THROW(make_session(too_long), std::invalid_argument);
}

// Bars hold the last games' scores and empty out once the window is full.
TEST(Session, BarsClearWhenFull) {
  auto cfg = fast_config();
  cfg.bar_capacity = 2;
  auto s = make_session(cfg, nullptr, false, bottomless_levels());
  s->start();
  std::vector<std::size_t> sizes;
  int k = 0;
  while (s->games_played() < 4 && k < 2000) {
    const auto before = s->games_played();
    s->tick(tick_at(k++));
    if (s->games_played() != before) sizes.push_back(s->bars().size());
  }
  ASSERT_EQ(s->games_played(), 4);
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 2, 1, 2}));
  EXPECT_EQ(s->frame()["bars"].size(), 2u);
}

TEST(Session, CompetitiveSessionsReportGames) {
  Leaderboard board;
  auto s = make_session(fast_config(), &board, true, bottomless_levels());
  EXPECT_TRUE(s->frame().contains("leaderboard"));
  EXPECT_FALSE(make_session(fast_config())->frame().contains("leaderboard"));
  s->start();
  std::optional<std::vector<LeaderboardEntry>> last;
  for (int k = 0; k < 2000 && !last; ++k) last = s->tick(tick_at(k)).leaderboard;
  ASSERT_TRUE(last);
  ASSERT_EQ(last->size(), 1u);
  EXPECT_EQ(static_cast<double>((*last)[0].score) / 100.0, s->bars().front());
}

// --- server, over real sockets ---

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

http::response<http::string_body> request(unsigned short port, http::verb verb,
                                          const std::string& target, const std::string& body = "") {
  net::io_context ioc;
  tcp::resolver resolver(ioc);
  beast::tcp_stream stream(ioc);
  stream.connect(resolver.resolve("127.0.0.1", std::to_string(port)));
  http::request<http::string_body> req{verb, target, 11};
  req.set(http::field::host, "127.0.0.1");
  req.set(http::field::content_type, "application/json");
  req.body() = body;
  req.prepare_payload();
  http::write(stream, req);
  beast::flat_buffer buf;
  http::response<http::string_body> res;
  http::read(stream, buf, res);
  beast::error_code ec;
  stream.socket().shutdown(tcp::socket::shutdown_both, ec);
  return res;
}

class ServerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    ServerOptions o;
    o.port = 0;
    o.seed = 3;
    server_ = std::make_unique<Server>(o);
    port_ = server_->start();
  }
  void TearDown() override { server_->stop(); }

  std::unique_ptr<Server> server_;
  unsigned short port_ = 0;
};

TEST_F(ServerTest, CreateRejectsMissingName) {
  EXPECT_EQ(request(port_, http::verb::post, "/sessions", "{}").result(), http::status::bad_request);
  EXPECT_EQ(request(port_, http::verb::get, "/nowhere").result(), http::status::not_found);
  EXPECT_EQ(request(port_, http::verb::get, "/sessions/s99/log").result(), http::status::not_found);
}

TEST_F(ServerTest, FeedbackOverWebSocketReachesTheLog) {
  const auto created = request(port_, http::verb::post, "/sessions", R"({"name":"ann"})");
  ASSERT_EQ(created.result(), http::status::created);
  const auto info = nlohmann::json::parse(created.body());
  EXPECT_EQ(info["condition"], "control");

  net::io_context ioc;
  tcp::resolver resolver(ioc);
  websocket::stream<beast::tcp_stream> ws(ioc);
  net::connect(beast::get_lowest_layer(ws).socket(), resolver.resolve("127.0.0.1", std::to_string(port_)));
  ws.handshake("127.0.0.1", info["ws"].get<std::string>());
  beast::get_lowest_layer(ws).expires_after(std::chrono::seconds(20));

  auto read_json = [&] {
    beast::flat_buffer buf;
    ws.read(buf);
    return nlohmann::json::parse(beast::buffers_to_string(buf.data()));
  };
  const auto hello = read_json();
  EXPECT_EQ(hello["type"], "frame");
  EXPECT_EQ(hello["state"], "idle");

  ws.write(net::buffer(std::string(R"({"type":"start"})")));
  nlohmann::json msg;
  do msg = read_json();
  while (!(msg["type"] == "frame" && msg["tick"].get<int>() >= 2));

  ws.write(net::buffer(std::string(R"({"type":"feedback","sign":-1,"t_client":1.25})")));
  bool acked = false;
  TimeUs ack_time = -1;
  int frames_after = 0;
  while (!acked || frames_after < 3) {
    msg = read_json();
    if (msg["type"] == "ack") {
      EXPECT_EQ(msg["of"], "feedback");
      ack_time = harness::parse_seconds(msg["time"].get<std::string>());
      acked = true;
    } else if (msg["type"] == "frame" && acked) {
      ++frames_after;
    }
    ASSERT_NE(msg["type"], "error") << msg.dump();
  }
  ws.write(net::buffer(std::string(R"({"type":"bogus"})")));
  do msg = read_json();
  while (msg["type"] == "frame");
  EXPECT_EQ(msg["type"], "error");
  beast::error_code ec;
  ws.close(websocket::close_code::normal, ec);

  const auto log_res = request(port_, http::verb::get, info["log"].get<std::string>());
  ASSERT_EQ(log_res.result(), http::status::ok);
  std::istringstream in(log_res.body());
  const auto log = harness::read_log(in);
  EXPECT_EQ(log.header.source, "live");
  int presses = 0;
  for (const auto& r : log.steps) {
    for (const auto& e : r.events) {
      ++presses;
      EXPECT_EQ(e.value, -1.0);
      EXPECT_EQ(e.client_time, 1'250'000);
      // Server stamp is the receive time, nudged at most 1 us past a tick.
      EXPECT_GE(e.time, ack_time);
      EXPECT_LE(e.time, ack_time + 1);
      EXPECT_GT(e.time, r.start);
      EXPECT_LE(e.time, r.end);
    }
  }
  EXPECT_EQ(presses, 1);
}

TEST_F(ServerTest, CompetitiveSessionsShareAGroup) {
  const auto a = nlohmann::json::parse(
      request(port_, http::verb::post, "/sessions", R"({"name":"ann","competitive":true,"group":"x"})").body());
  const auto b = nlohmann::json::parse(
      request(port_, http::verb::post, "/sessions", R"({"name":"ann","competitive":true,"group":"x"})").body());
  EXPECT_EQ(a["name"], "ann");
  EXPECT_EQ(b["name"], "ann-2");
  EXPECT_EQ(b["condition"], "competitive");
  EXPECT_NE(a["id"], b["id"]);
}

}  // namespace
}  // namespace tamer::live

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

#ifndef TAMER_LIVE_SERVER_H_
#define TAMER_LIVE_SERVER_H_

#include <cstdint>
#include <memory>
#include <string>

#include "tamer/live/session.h"

namespace tamer::live {

struct ServerOptions {
  std::string address = "127.0.0.1";
  unsigned short port = 8080;  // 0 picks a free port
  LiveConfig config;
  std::uint64_t seed = 0;      // session n plays env seed derived from (seed, n)
  int threads = 1;
  std::string log_dir;         // closed sessions save <id>.jsonl here if set
};

// HTTP + WebSocket front end.
//   POST /sessions            {"name", "competitive"?, "facial_expression_told"?, "group"?}
//   GET  /sessions/{id}/log   JSONL training log
//   GET  /sessions/{id}/ws    WebSocket upgrade
// Client messages: {"type":"start"}, {"type":"toggle"},
// {"type":"feedback","sign":1|-1,"t_client":seconds}.
// Server messages: frames every tick, {"type":"leaderboard"} to a whole
// group after any member's game ends, {"type":"ack"} and {"type":"error"}.
//
// Every session runs on its own strand; the leaderboard is the only shared
// state.
class Server {
 public:
  explicit Server(ServerOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds and starts the I/O threads. Returns the bound port.
  unsigned short start();
  void stop();
  // Blocks until stop() is called from elsewhere.
  void wait();

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

}  // namespace tamer::live

#endif  // TAMER_LIVE_SERVER_H_

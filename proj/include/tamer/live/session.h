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

#ifndef TAMER_LIVE_SESSION_H_
#define TAMER_LIVE_SESSION_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tamer/harness/training_log.h"
#include "tamer/learn/learner.h"
#include "tamer/live/leaderboard.h"
#include "tamer/sim/world.h"

namespace tamer::live {

using learn::TimeUs;

inline constexpr double kSessionCapSeconds = 900.0;

struct SessionOptions {
  std::string name;
  bool competitive = false;
  bool facial_expression_told = false;  // metadata only
  std::string group;                    // leaderboard room, competitive only
  friend bool operator==(const SessionOptions&, const SessionOptions&) = default;
};

struct LiveConfig {
  sim::PhysicsConfig physics;
  learn::LearnerConfig learner;
  double tick_rate = 24.0;
  std::uint64_t level_seed = 121;
  int bar_capacity = 20;
  double cap_seconds = kSessionCapSeconds;
};

enum class Mode { kTraining, kNotTraining };
enum class SessionState { kIdle, kRunning, kClosed };

std::string_view mode_name(Mode m);

// Thrown for inputs that the session's state does not allow.
struct IllegalState : std::logic_error {
  using std::logic_error::logic_error;
};

// Condition tag for the log header: control, facial-expression, competitive
// or competitive-facial-expression.
std::string condition_tag(const SessionOptions& options);

struct TickResult {
  nlohmann::json frame;
  // Standings after a game ended in a competitive session.
  std::optional<std::vector<LeaderboardEntry>> leaderboard;
  bool closed = false;
};

// One trainer's session. Not thread-safe: the owner serializes all calls.
// Times are microseconds since start(); the caller owns the clock.
//
// Each tick closes the step that began at the previous tick, feeds it and
// the presses received meanwhile to the learner, then picks and executes
// the next action, so the frame shows what the trainer is reacting to.
class Session {
 public:
  Session(std::string id, SessionOptions options, LiveConfig config,
          std::shared_ptr<const sim::LevelSet> levels, std::uint64_t env_seed,
          Leaderboard* board = nullptr);

  const std::string& id() const { return id_; }
  const std::string& display_name() const { return display_name_; }
  const SessionOptions& options() const { return options_; }
  SessionState state() const { return state_; }
  Mode mode() const { return mode_; }
  const harness::TrainingLog& log() const { return log_; }
  const learn::RewardModel& model() const { return learner_.model(); }
  const std::vector<double>& bars() const { return bars_; }
  std::int64_t games_played() const { return game_; }
  TimeUs cap_us() const;

  void start();
  // Tick times must increase. A tick at or past the cap closes the session.
  TickResult tick(TimeUs now);
  // +1 or -1, stamped with the server receive time. A press stamped at the
  // same microsecond as the last tick belongs to the step that tick began.
  void submit_feedback(int sign, TimeUs now, std::optional<TimeUs> client_time = {});
  // Mode change is applied to the learner at the next tick.
  void toggle(TimeUs now);
  // Ends the session: the in-flight step closes at `now` and pending labels
  // are finalized.
  void close(TimeUs now);

  nlohmann::json frame() const;

 private:
  struct InFlight {
    features::Theta theta{};
    sim::Action action;
    TimeUs start = 0;
    std::int64_t score_delta = 0;
  };
  struct Press {
    double value;
    TimeUs time;
    std::optional<TimeUs> client_time;
    bool credit;  // received in training mode
  };

  void require_running(TimeUs now) const;
  void close_step(TimeUs end);
  void take_action(TimeUs now, TickResult& out);
  void apply_finalized(const std::vector<learn::FinalizedLabel>& labels);
  void record_game_end(TickResult& out);

  std::string id_;
  SessionOptions options_;
  LiveConfig config_;
  std::shared_ptr<const sim::LevelSet> levels_;
  std::uint64_t env_seed_;
  Leaderboard* board_;
  std::string display_name_;

  SessionState state_ = SessionState::kIdle;
  Mode mode_ = Mode::kTraining;
  learn::TamerLearner learner_;
  sim::World world_;
  std::int64_t game_ = 0;
  std::optional<InFlight> in_flight_;
  std::vector<Press> presses_;  // received since the last tick
  TimeUs last_tick_ = 0;
  std::int64_t ticks_ = 0;
  std::vector<double> bars_;
  harness::TrainingLog log_;
};

}  // namespace tamer::live

#endif  // TAMER_LIVE_SESSION_H_

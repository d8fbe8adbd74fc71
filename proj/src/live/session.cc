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

#include "tamer/live/session.h"

#include <algorithm>
#include <cmath>

#include "tamer/features/features.h"
#include "tamer/harness/experiment.h"

namespace tamer::live {

std::string_view mode_name(Mode m) {
  return m == Mode::kTraining ? "training" : "not-training";
}

std::string condition_tag(const SessionOptions& options) {
  if (options.competitive) {
    return options.facial_expression_told ? "competitive-facial-expression" : "competitive";
  }
  return options.facial_expression_told ? "facial-expression" : "control";
}

Session::Session(std::string id, SessionOptions options, LiveConfig config,
                 std::shared_ptr<const sim::LevelSet> levels, std::uint64_t env_seed,
                 Leaderboard* board)
    : id_(std::move(id)),
      options_(std::move(options)),
      config_(std::move(config)),
      levels_(std::move(levels)),
      env_seed_(env_seed),
      board_(board),
      learner_(config_.learner),
      world_(levels_, harness::game_seed(env_seed, 0), config_.physics) {
  if (options_.name.empty()) throw std::invalid_argument("session name must be non-empty");
  if (!(config_.tick_rate > 0.0)) throw std::invalid_argument("tick rate must be positive");
  if (config_.bar_capacity < 1) throw std::invalid_argument("bar capacity must be >= 1");
  if (!(config_.cap_seconds > 0.0) || config_.cap_seconds > kSessionCapSeconds) {
    throw std::invalid_argument("session cap must be in (0, 900] seconds");
  }
  display_name_ = options_.name;
  if (options_.competitive) {
    if (board_ == nullptr) throw std::invalid_argument("competitive session needs a leaderboard");
    display_name_ = board_->join(options_.group, id_, options_.name);
  }
  log_.header.env_seed = env_seed;
  log_.header.trainer_seed = 0;
  log_.header.level_seed = config_.level_seed;
  log_.header.conditions = {condition_tag(options_)};
  log_.header.tick_rate = config_.tick_rate;
  log_.header.pdf_lo = config_.learner.pdf.lo();
  log_.header.pdf_hi = config_.learner.pdf.hi();
  log_.header.source = "live";
}

TimeUs Session::cap_us() const { return learn::from_seconds(config_.cap_seconds); }

void Session::start() {
  if (state_ != SessionState::kIdle) throw IllegalState("session already started");
  state_ = SessionState::kRunning;
}

void Session::require_running(TimeUs now) const {
  if (state_ == SessionState::kIdle) throw IllegalState("session not started");
  if (state_ == SessionState::kClosed) throw IllegalState("session closed");
  if (now < 0) throw std::invalid_argument("negative session time");
  if (now >= cap_us()) throw IllegalState("session expired");
}

TickResult Session::tick(TimeUs now) {
  if (state_ != SessionState::kRunning) {
    throw IllegalState(state_ == SessionState::kIdle ? "session not started" : "session closed");
  }
  if (in_flight_ && now <= in_flight_->start) {
    throw std::invalid_argument("tick times must increase");
  }
  TickResult out;
  if (now >= cap_us()) {
    close(cap_us());
    out.closed = true;
    out.frame = frame();
    return out;
  }
  // Re-enable learning before the step closes so presses made after the
  // toggle are credited; disable it only after, so earlier ones still are.
  if (mode_ == Mode::kTraining && !learner_.training()) learner_.set_training(true);
  if (in_flight_) close_step(now);
  if (mode_ == Mode::kNotTraining && learner_.training()) {
    // Nothing received from here on can credit these steps.
    apply_finalized(learner_.flush());
    learner_.set_training(false);
  }
  take_action(now, out);
  out.frame = frame();
  return out;
}

void Session::submit_feedback(int sign, TimeUs now, std::optional<TimeUs> client_time) {
  require_running(now);
  if (sign != 1 && sign != -1) throw std::invalid_argument("feedback sign must be +1 or -1");
  if (!in_flight_) throw IllegalState("no step in progress");
  const TimeUs stamped = std::max(now, in_flight_->start + 1);
  presses_.push_back({static_cast<double>(sign), stamped, client_time,
                      mode_ == Mode::kTraining});
}

void Session::toggle(TimeUs now) {
  require_running(now);
  mode_ = mode_ == Mode::kTraining ? Mode::kNotTraining : Mode::kTraining;
}

void Session::close(TimeUs now) {
  if (state_ == SessionState::kClosed) return;
  if (state_ == SessionState::kRunning) {
    if (in_flight_) close_step(std::max(now, in_flight_->start + 1));
    apply_finalized(learner_.flush());
  }
  state_ = SessionState::kClosed;
}

void Session::close_step(TimeUs end) {
  const auto k = static_cast<std::int64_t>(log_.steps.size());
  const InFlight step = *in_flight_;
  in_flight_.reset();
  learner_.push_step(k, step.theta, step.action, step.start, end);

  harness::StepRecord rec;
  rec.step = k;
  rec.theta = step.theta;
  rec.action = step.action.index();
  rec.start = step.start;
  rec.end = end;
  rec.score_delta = step.score_delta;
  for (const auto& p : presses_) {
    // Frozen-mode presses are logged, never credited.
    if (p.credit) learner_.add_feedback({p.value, p.time});
    rec.events.push_back({p.value, p.time, p.client_time});
  }
  presses_.clear();
  log_.steps.push_back(std::move(rec));
  apply_finalized(learner_.finalize_until(end));
}

void Session::take_action(TimeUs now, TickResult& out) {
  const auto fv = features::build_theta(world_.observe());
  const auto action = learner_.act(fv.flat);
  const auto result = world_.step(action);
  in_flight_ = InFlight{fv.flat, action, now, result.score_delta};
  last_tick_ = now;
  ++ticks_;
  if (world_.game_over()) record_game_end(out);
}

void Session::apply_finalized(const std::vector<learn::FinalizedLabel>& labels) {
  for (const auto& f : labels) log_.steps[static_cast<std::size_t>(f.index)].h = f.h;
}

void Session::record_game_end(TickResult& out) {
  // A full window is cleared before the next bar goes in.
  if (static_cast<int>(bars_.size()) >= config_.bar_capacity) bars_.clear();
  bars_.push_back(world_.score_points());
  if (options_.competitive) {
    out.leaderboard = board_->report_game(options_.group, id_, world_.score());
  }
  ++game_;
  world_ = sim::World(levels_, harness::game_seed(env_seed_, game_), config_.physics);
}

nlohmann::json Session::frame() const {
  const auto obs = world_.observe();
  nlohmann::json tiles = nlohmann::json::array();
  for (int row = 0; row < sim::kViewHeight; ++row) {
    nlohmann::json r = nlohmann::json::array();
    for (int col = 0; col < sim::kViewWidth; ++col) r.push_back(obs.tiles.at(col, row));
    tiles.push_back(std::move(r));
  }
  nlohmann::json entities = nlohmann::json::array();
  for (const auto& e : obs.entities) {
    entities.push_back({{"kind", std::string(sim::entity_name(e.kind))}, {"x", e.x}, {"y", e.y}});
  }
  const auto& m = world_.mario();
  nlohmann::json doc = {
      {"type", "frame"},
      {"session", id_},
      {"tick", ticks_},
      {"state", state_ == SessionState::kIdle      ? "idle"
                : state_ == SessionState::kRunning ? "running"
                                                   : "closed"},
      {"elapsed", learn::to_seconds(last_tick_)},
      {"game", game_},
      {"level", world_.level_number()},
      {"view_x", obs.view_x},
      {"tiles", std::move(tiles)},
      {"entities", std::move(entities)},
      {"mario", {{"x", m.x}, {"y", m.y}, {"vx", m.vx}, {"vy", m.vy}, {"on_ground", m.on_ground}}},
      {"score", world_.score_points()},
      {"bars", bars_},
      {"bar_capacity", config_.bar_capacity},
      {"mode", std::string(mode_name(mode_))},
  };
  if (options_.competitive) doc["leaderboard"] = leaderboard_json(board_->standings(options_.group));
  return doc;
}

}  // namespace tamer::live

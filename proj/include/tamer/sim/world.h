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

#ifndef TAMER_SIM_WORLD_H_
#define TAMER_SIM_WORLD_H_

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "tamer/common/rng.h"
#include "tamer/sim/action.h"
#include "tamer/sim/level.h"
#include "tamer/sim/physics.h"
#include "tamer/sim/tile.h"

namespace tamer::sim {

struct MarioState {
  double x = 0.0;  // left edge, tiles
  double y = 0.0;  // feet, tiles
  double vx = 0.0;
  double vy = 0.0;
  bool on_ground = false;
  bool right_of_wall = false;  // a solid tile touches Mario's right side
  friend bool operator==(const MarioState&, const MarioState&) = default;
};

struct Entity {
  EntityKind kind = EntityKind::kWalker;
  double x = 0.0;
  double y = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  bool alive = true;
  bool active = false;
  int ttl = -1;  // steps left for transient entities, -1 = unlimited
  friend bool operator==(const Entity&, const Entity&) = default;
};

enum class ScoreKind { kKill, kCoin, kFinishLevel, kDie, kStep };

// Points are held as integer hundredths so the per-step -0.01 accumulates
// exactly.
inline constexpr std::int64_t score_hundredths(ScoreKind k) {
  switch (k) {
    case ScoreKind::kKill: return 100;
    case ScoreKind::kCoin: return 100;
    case ScoreKind::kFinishLevel: return 10000;
    case ScoreKind::kDie: return -1000;
    case ScoreKind::kStep: return -1;
  }
  return 0;
}

inline constexpr double to_points(std::int64_t hundredths) {
  return static_cast<double>(hundredths) / 100.0;
}

struct ScoreEvent {
  ScoreKind kind;
  std::int64_t value;  // hundredths
  friend bool operator==(const ScoreEvent&, const ScoreEvent&) = default;
};

enum class Outcome { kFinishedLevel, kDied };

struct StepResult {
  std::int64_t score_delta = 0;  // hundredths
  std::vector<ScoreEvent> events;
  bool finished_level = false;
  bool died = false;
  double points() const { return to_points(score_delta); }
};

inline constexpr int kViewWidth = 16;
inline constexpr int kViewHeight = 21;

// The 16 x 21 tile window the agent perceives. Row 0 is the bottom.
struct TileGrid {
  std::array<std::uint8_t, kViewWidth * kViewHeight> codes{};

  std::uint8_t at(int col, int row) const {
    return codes[static_cast<std::size_t>(row * kViewWidth + col)];
  }
  void set(int col, int row, std::uint8_t c) {
    codes[static_cast<std::size_t>(row * kViewWidth + col)] = c;
  }
  friend bool operator==(const TileGrid&, const TileGrid&) = default;
};

struct Observation {
  TileGrid tiles;
  int view_x = 0;  // level column of the grid's left edge
  std::vector<Entity> entities;  // in view, level coordinates
  MarioState mario;
  double mario_width = 0.75;
  double mario_height = 1.0;
  friend bool operator==(const Observation&, const Observation&) = default;
};

// One game of the platformer. Copyable value type; instances share only the
// immutable level templates.
class World {
 public:
  World(std::shared_ptr<const LevelSet> levels, std::uint64_t game_seed,
        PhysicsConfig physics = {});

  // Advances one tick. Throws std::logic_error once the game is over.
  StepResult step(Action action);

  // Level automaton: finished 0->1, 1->2, 2->0; died -> level 0, game over.
  void advance_or_reset(Outcome outcome);

  Observation observe() const;

  const MarioState& mario() const { return mario_; }
  MarioState& mutable_mario() { return mario_; }
  const std::vector<Entity>& entities() const { return entities_; }
  std::vector<Entity>& mutable_entities() { return entities_; }
  const LevelSpec& level() const { return level_; }
  LevelSpec& mutable_level() { return level_; }
  const PhysicsConfig& physics() const { return physics_; }

  int level_number() const { return level_number_; }
  bool game_over() const { return game_over_; }
  std::int64_t step_index() const { return step_index_; }
  std::int64_t score() const { return score_; }
  double score_points() const { return to_points(score_); }
  int levels_finished() const { return levels_finished_; }

  // Left edge of the 16-column camera window.
  int camera_x() const;

  friend bool operator==(const World& a, const World& b);

 private:
  void load_level(int number);
  bool solid_at(int x, int y) const;
  void move_mario_x();
  void move_mario_y(StepResult& result);
  void bump(int x, int y, StepResult& result);
  void collect_tiles(StepResult& result);
  void update_entities();
  void interact_entities(double prev_y, StepResult& result);
  void emit(ScoreKind kind, StepResult& result);

  std::shared_ptr<const LevelSet> levels_;
  PhysicsConfig physics_;
  Rng rng_;
  LevelSpec level_;
  MarioState mario_;
  std::vector<Entity> entities_;
  std::int64_t step_index_ = 0;
  std::int64_t score_ = 0;
  int level_number_ = 0;
  int levels_finished_ = 0;
  bool game_over_ = false;
};

}  // namespace tamer::sim

#endif  // TAMER_SIM_WORLD_H_

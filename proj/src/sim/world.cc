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

#include "tamer/sim/world.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tamer::sim {

namespace {

constexpr double kEps = 1e-9;
constexpr double kEntitySize = 0.875;
constexpr double kFallDeathY = -1.0;
constexpr int kCoinPickupTtl = 8;

int floor_int(double v) { return static_cast<int>(std::floor(v)); }

bool overlaps(double a0, double a1, double b0, double b1) {
  return a0 < b1 && b0 < a1;
}

}  // namespace

World::World(std::shared_ptr<const LevelSet> levels, std::uint64_t game_seed,
             PhysicsConfig physics)
    : levels_(std::move(levels)), physics_(physics), rng_(game_seed) {
  if (!levels_) throw std::invalid_argument("World needs a level set");
  load_level(0);
}

void World::load_level(int number) {
  level_number_ = number;
  level_ = levels_->levels[static_cast<std::size_t>(number)];
  mario_ = MarioState{};
  mario_.x = level_.spawn_x;
  mario_.y = level_.spawn_y;
  mario_.on_ground = true;
  entities_.clear();
  for (const auto& s : level_.spawns) {
    Entity e;
    e.kind = s.kind;
    e.x = s.x;
    e.y = s.y;
    switch (s.kind) {
      case EntityKind::kWalker:
      case EntityKind::kShell: {
        const double speed = s.kind == EntityKind::kWalker
                                 ? physics_.walker_speed
                                 : physics_.shell_speed;
        // Per-game variation: heading and a sub-tile offset.
        e.vx = rng_.bernoulli(0.75) ? -speed : speed;
        e.x += rng_.uniform(0.0, 1.0);
        break;
      }
      case EntityKind::kFireball:
        e.vx = -physics_.fireball_speed;
        e.x += rng_.uniform(0.0, 1.0);
        break;
      case EntityKind::kMushroom:
        e.vx = physics_.mushroom_speed;
        break;
      default:
        break;
    }
    entities_.push_back(e);
  }
}

bool World::solid_at(int x, int y) const {
  if (x < 0 || x >= level_.length) return true;
  if (y < 0 || y >= level_.height) return false;
  return is_solid(level_.at(x, y));
}

int World::camera_x() const {
  const int max_x = std::max(0, level_.length - kViewWidth);
  return std::clamp(floor_int(mario_.x) - 6, 0, max_x);
}

void World::emit(ScoreKind kind, StepResult& result) {
  const ScoreEvent ev{kind, score_hundredths(kind)};
  result.events.push_back(ev);
  result.score_delta += ev.value;
}

void World::move_mario_x() {
  const double w = physics_.mario_width;
  const double h = physics_.mario_height;
  const int r0 = floor_int(mario_.y);
  const int r1 = floor_int(mario_.y + h - kEps);
  auto blocked = [&](int c) {
    for (int r = r0; r <= r1; ++r) {
      if (solid_at(c, r)) return true;
    }
    return false;
  };
  double nx = mario_.x + mario_.vx;
  if (mario_.vx > 0) {
    const int c = floor_int(nx + w - kEps);
    if (blocked(c)) nx = std::max(mario_.x, c - w);
  } else if (mario_.vx < 0) {
    const int c = floor_int(nx);
    if (blocked(c)) nx = std::min(mario_.x, static_cast<double>(c + 1));
  }
  mario_.vx = nx - mario_.x;
  mario_.x = nx;
}

void World::move_mario_y(StepResult& result) {
  const double w = physics_.mario_width;
  const double h = physics_.mario_height;
  const int c0 = floor_int(mario_.x);
  const int c1 = floor_int(mario_.x + w - kEps);
  mario_.vy = std::max(mario_.vy - physics_.gravity, -physics_.max_fall_speed);
  double ny = mario_.y + mario_.vy;
  mario_.on_ground = false;
  if (mario_.vy < 0) {
    const int r = floor_int(ny);
    for (int c = c0; c <= c1; ++c) {
      const bool platform_top = r >= 0 && r < level_.height &&
                                level_.at(c, r) == TileKind::kPlatform &&
                                mario_.y >= r + 1 - kEps;
      if (solid_at(c, r) || platform_top) {
        ny = r + 1;
        mario_.vy = 0.0;
        mario_.on_ground = true;
        break;
      }
    }
  } else if (mario_.vy > 0) {
    const int r = floor_int(ny + h - kEps);
    const int center = floor_int(mario_.x + w / 2);
    int hit = -1;
    if (solid_at(center, r)) {
      hit = center;
    } else {
      for (int c = c0; c <= c1; ++c) {
        if (solid_at(c, r)) {
          hit = c;
          break;
        }
      }
    }
    if (hit >= 0) {
      ny = r - h;
      mario_.vy = 0.0;
      bump(hit, r, result);
    }
  }
  mario_.y = ny;
}

void World::bump(int x, int y, StepResult& result) {
  if (x < 0 || x >= level_.length || y < 0 || y >= level_.height) return;
  const TileKind k = level_.at(x, y);
  auto spawn_above = [&](EntityKind kind, double vx) {
    Entity e;
    e.kind = kind;
    e.x = x;
    e.y = y + 1;
    e.vx = vx;
    e.active = true;
    if (kind == EntityKind::kCoinPickup) {
      e.vy = 0.2;
      e.ttl = kCoinPickupTtl;
    }
    entities_.push_back(e);
  };
  switch (k) {
    case TileKind::kBrick:
      level_.set(x, y, TileKind::kEmpty);
      break;
    case TileKind::kQuestion:
      level_.set(x, y, TileKind::kUsedBlock);
      emit(ScoreKind::kCoin, result);
      spawn_above(EntityKind::kCoinPickup, 0.0);
      break;
    case TileKind::kMushroomSpawner:
      level_.set(x, y, TileKind::kUsedBlock);
      spawn_above(EntityKind::kMushroom, physics_.mushroom_speed);
      break;
    case TileKind::kFlowerSpawner:
      level_.set(x, y, TileKind::kUsedBlock);
      spawn_above(EntityKind::kFlower, 0.0);
      break;
    default:
      break;
  }
}

void World::collect_tiles(StepResult& result) {
  const int c0 = floor_int(mario_.x);
  const int c1 = floor_int(mario_.x + physics_.mario_width - kEps);
  const int r0 = floor_int(mario_.y);
  const int r1 = floor_int(mario_.y + physics_.mario_height - kEps);
  for (int c = std::max(c0, 0); c <= c1 && c < level_.length; ++c) {
    for (int r = std::max(r0, 0); r <= r1 && r < level_.height; ++r) {
      if (level_.at(c, r) == TileKind::kCoin) {
        level_.set(c, r, TileKind::kEmpty);
        emit(ScoreKind::kCoin, result);
      }
    }
  }
}

void World::update_entities() {
  for (auto& e : entities_) {
    if (!e.alive) continue;
    if (!e.active) {
      if (std::abs(e.x - mario_.x) < physics_.activation_range) {
        e.active = true;
      } else {
        continue;
      }
    }
    if (e.kind == EntityKind::kCoinPickup) {
      e.y += e.vy;
      if (--e.ttl <= 0) e.alive = false;
      continue;
    }
    if (e.kind == EntityKind::kFlower) continue;

    // Horizontal.
    const int r0 = floor_int(e.y);
    const int r1 = floor_int(e.y + kEntitySize - kEps);
    double nx = e.x + e.vx;
    const int c = e.vx > 0 ? floor_int(nx + kEntitySize - kEps) : floor_int(nx);
    bool blocked = false;
    for (int r = r0; r <= r1; ++r) blocked = blocked || solid_at(c, r);
    if (blocked) {
      if (e.kind == EntityKind::kFireball) {
        e.alive = false;
        continue;
      }
      e.vx = -e.vx;
    } else {
      e.x = nx;
    }

    // Vertical.
    e.vy = std::max(e.vy - physics_.gravity, -physics_.max_fall_speed);
    double ny = e.y + e.vy;
    if (e.vy < 0) {
      const int r = floor_int(ny);
      const int c0 = floor_int(e.x);
      const int c1 = floor_int(e.x + kEntitySize - kEps);
      for (int cc = c0; cc <= c1; ++cc) {
        const bool platform_top = r >= 0 && r < level_.height &&
                                  level_.at(cc, r) == TileKind::kPlatform &&
                                  e.y >= r + 1 - kEps;
        if (solid_at(cc, r) || platform_top) {
          ny = r + 1;
          e.vy = e.kind == EntityKind::kFireball ? physics_.fireball_hop : 0.0;
          break;
        }
      }
    }
    e.y = ny;
    if (e.y < kFallDeathY || e.x < 0 || e.x > level_.length) e.alive = false;
  }
}

void World::interact_entities(double prev_y, StepResult& result) {
  const double w = physics_.mario_width;
  const double h = physics_.mario_height;
  constexpr double kMargin = 0.1;
  for (auto& e : entities_) {
    if (!e.alive || e.kind == EntityKind::kCoinPickup) continue;
    const bool touching =
        overlaps(mario_.x, mario_.x + w, e.x + kMargin,
                 e.x + kEntitySize - kMargin) &&
        overlaps(mario_.y, mario_.y + h, e.y + kMargin,
                 e.y + kEntitySize - kMargin);
    if (!touching) continue;
    if (e.kind == EntityKind::kMushroom || e.kind == EntityKind::kFlower) {
      e.alive = false;  // pickups score nothing
      continue;
    }
    const bool descending = mario_.y < prev_y;
    if (descending && prev_y >= e.y + kEntitySize * 0.5) {
      e.alive = false;
      if (is_monster(e.kind)) emit(ScoreKind::kKill, result);
      mario_.vy = physics_.stomp_bounce;
      mario_.on_ground = false;
    } else {
      result.died = true;
      return;
    }
  }
}

StepResult World::step(Action action) {
  if (game_over_) throw std::logic_error("step() called on a finished game");
  StepResult result;
  const double prev_y = mario_.y;

  const double speed =
      action.sprint() ? physics_.sprint_speed : physics_.walk_speed;
  switch (action.direction()) {
    case Direction::kLeft: mario_.vx = -speed; break;
    case Direction::kNone: mario_.vx = 0.0; break;
    case Direction::kRight: mario_.vx = speed; break;
  }
  if (action.jump() && mario_.on_ground) mario_.vy = physics_.jump_impulse;

  move_mario_x();
  move_mario_y(result);
  {
    const int c = floor_int(mario_.x + physics_.mario_width + 0.05);
    const int r0 = floor_int(mario_.y);
    const int r1 = floor_int(mario_.y + physics_.mario_height - kEps);
    bool wall = false;
    for (int r = r0; r <= r1; ++r) wall = wall || solid_at(c, r);
    mario_.right_of_wall = wall && c < level_.length;
  }
  collect_tiles(result);
  update_entities();
  interact_entities(prev_y, result);
  entities_.erase(std::remove_if(entities_.begin(), entities_.end(),
                                 [](const Entity& e) { return !e.alive; }),
                  entities_.end());

  if (!result.died && mario_.y < kFallDeathY) result.died = true;
  if (!result.died &&
      mario_.x + physics_.mario_width / 2 >= level_.finish_x) {
    result.finished_level = true;
  }
  if (result.died) emit(ScoreKind::kDie, result);
  if (result.finished_level) emit(ScoreKind::kFinishLevel, result);
  emit(ScoreKind::kStep, result);

  score_ += result.score_delta;
  ++step_index_;
  if (result.died) {
    advance_or_reset(Outcome::kDied);
  } else if (result.finished_level) {
    advance_or_reset(Outcome::kFinishedLevel);
  }
  return result;
}

void World::advance_or_reset(Outcome outcome) {
  if (outcome == Outcome::kDied) {
    load_level(0);
    game_over_ = true;
    return;
  }
  ++levels_finished_;
  load_level((level_number_ + 1) % 3);
}

Observation World::observe() const {
  Observation obs;
  obs.view_x = camera_x();
  for (int col = 0; col < kViewWidth; ++col) {
    for (int row = 0; row < kViewHeight; ++row) {
      obs.tiles.set(col, row,
                    static_cast<std::uint8_t>(code(level_.at(obs.view_x + col, row))));
    }
  }
  for (const auto& e : entities_) {
    if (!e.alive) continue;
    if (e.x + kEntitySize > obs.view_x && e.x < obs.view_x + kViewWidth) {
      obs.entities.push_back(e);
    }
  }
  obs.mario = mario_;
  obs.mario_width = physics_.mario_width;
  obs.mario_height = physics_.mario_height;
  return obs;
}

bool operator==(const World& a, const World& b) {
  return a.level_ == b.level_ && a.mario_ == b.mario_ &&
         a.entities_ == b.entities_ && a.step_index_ == b.step_index_ &&
         a.score_ == b.score_ && a.level_number_ == b.level_number_ &&
         a.levels_finished_ == b.levels_finished_ &&
         a.game_over_ == b.game_over_ && a.rng_.state() == b.rng_.state();
}

}  // namespace tamer::sim

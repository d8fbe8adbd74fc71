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

#include "tamer/sim/level.h"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "tamer/common/rng.h"

namespace tamer::sim {

std::string_view tile_name(TileKind k) {
  static constexpr std::string_view kNames[kNumTileKinds] = {
      "empty",   "ground",   "pit-marker", "brick-smashable",  "question-block",
      "coin",    "pipe",     "wall",       "platform",         "used-block",
      "flower-spawner", "mushroom-spawner", "finish-marker", "decoration"};
  return kNames[code(k)];
}

std::string_view entity_name(EntityKind k) {
  switch (k) {
    case EntityKind::kWalker: return "monster-walker";
    case EntityKind::kShell: return "monster-shell";
    case EntityKind::kFireball: return "fireball";
    case EntityKind::kMushroom: return "mushroom";
    case EntityKind::kFlower: return "flower";
    case EntityKind::kCoinPickup: return "coin-pickup";
  }
  return "unknown";
}

EntityKind entity_from_name(std::string_view name) {
  for (auto k : {EntityKind::kWalker, EntityKind::kShell, EntityKind::kFireball,
                 EntityKind::kMushroom, EntityKind::kFlower,
                 EntityKind::kCoinPickup}) {
    if (entity_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown entity kind: " + std::string(name));
}

int LevelSpec::pit_count() const {
  int n = 0;
  for (int x = 0; x < length; ++x) {
    if (at(x, kGroundTop - 1) == TileKind::kPitMarker) ++n;
  }
  return n;
}

namespace {

using Column = std::array<TileKind, kLevelHeight>;

struct Tuning {
  int body_length;
  int flat_min, flat_max;
  int wall_min, wall_max;
  int pipe_max;
  double monster_prob;
  double shell_prob;
  double fireball_prob;
  int max_pits;
  double spawner_prob;
  bool coin_trail;  // coins every other column along open flat stretches
};

Tuning tuning_for(int difficulty) {
  switch (difficulty) {
    case 0: return {100, 4, 9, 1, 2, 2, 0.35, 0.0, 0.0, 0, 0.3, true};
    case 1: return {120, 4, 8, 1, 3, 3, 0.5, 0.3, 0.0, 1, 0.4, false};
    default: return {140, 3, 7, 2, 3, 3, 0.6, 0.35, 0.15, 2, 0.5, false};
  }
}

class Assembler {
 public:
  Assembler(std::uint64_t seed, int difficulty)
      : rng_(Rng::derive(seed, static_cast<std::uint64_t>(difficulty))),
        difficulty_(difficulty),
        tune_(tuning_for(difficulty)) {}

  LevelSpec build(std::uint64_t seed) {
    flat(10, /*allow_monster=*/false, /*allow_coins=*/false);
    const int body_end = 10 + tune_.body_length;
    while (width() < body_end) {
      if (pits_ < tune_.max_pits && pit_due(body_end)) {
        pit();
        continue;
      }
      switch (pick_idiom()) {
        case 0: flat(rng_.range(tune_.flat_min, tune_.flat_max), true, true); break;
        case 1: wall(); break;
        case 2: pipe(); break;
        case 3: coin_arc(); break;
        case 4: block_cluster(); break;
        case 5: platform(); break;
        case 6: pit(); break;
      }
    }
    flat(4, false, false);
    const int finish_x = width();
    flat(8, false, false);
    for (int y = kGroundTop; y < kGroundTop + 5; ++y) {
      columns_[static_cast<std::size_t>(finish_x)][y] = TileKind::kFinish;
    }

    LevelSpec lv;
    lv.seed = seed;
    lv.difficulty = difficulty_;
    lv.length = width();
    lv.height = kLevelHeight;
    lv.tiles.assign(static_cast<std::size_t>(lv.length * lv.height),
                    TileKind::kEmpty);
    for (int x = 0; x < lv.length; ++x) {
      for (int y = 0; y < kLevelHeight; ++y) {
        lv.set(x, y, columns_[static_cast<std::size_t>(x)][y]);
      }
    }
    lv.spawns = spawns_;
    lv.spawn_x = 2.0;
    lv.spawn_y = kGroundTop;
    lv.finish_x = finish_x;
    return lv;
  }

 private:
  int width() const { return static_cast<int>(columns_.size()); }

  // Forces the guaranteed pit into the first 60% of the body.
  bool pit_due(int body_end) const {
    return pits_ == 0 && width() >= 10 + (body_end - 10) * 6 / 10;
  }

  int pick_idiom() {
    // flat, wall, pipe, coin arc, blocks, platform, pit
    std::array<int, 7> weights = {4, 2, 1, 1, 1, 1, 0};
    if (pits_ < tune_.max_pits && width() > 20) weights[6] = 1;
    int total = 0;
    for (int w : weights) total += w;
    int r = rng_.range(0, total - 1);
    for (int i = 0; i < 7; ++i) {
      if (r < weights[static_cast<std::size_t>(i)]) return i;
      r -= weights[static_cast<std::size_t>(i)];
    }
    return 0;
  }

  Column ground_column() {
    Column c{};
    c.fill(TileKind::kEmpty);
    c[0] = TileKind::kGround;
    c[1] = TileKind::kGround;
    if (rng_.bernoulli(0.06)) c[static_cast<std::size_t>(rng_.range(14, 18))] = TileKind::kDecoration;
    return c;
  }

  void flat(int len, bool allow_monster, bool allow_coins) {
    const int x0 = width();
    for (int i = 0; i < len; ++i) columns_.push_back(ground_column());
    if (allow_coins && len >= 4 && rng_.bernoulli(0.5)) {
      const int run = rng_.range(2, std::min(3, len - 2));
      const int start = x0 + 1 + rng_.range(0, len - run - 1);
      for (int x = start; x < start + run; ++x) {
        columns_[static_cast<std::size_t>(x)][kGroundTop] = TileKind::kCoin;
      }
    }
    if (allow_coins && tune_.coin_trail) {
      for (int x = x0 + 1; x < x0 + len - 1; x += 2) {
        columns_[static_cast<std::size_t>(x)][kGroundTop] = TileKind::kCoin;
      }
    }
    if (allow_monster && len >= 4 && rng_.bernoulli(tune_.monster_prob)) {
      EntityKind kind = EntityKind::kWalker;
      if (rng_.bernoulli(tune_.fireball_prob)) {
        kind = EntityKind::kFireball;
      } else if (rng_.bernoulli(tune_.shell_prob)) {
        kind = EntityKind::kShell;
      }
      spawns_.push_back({kind, static_cast<double>(x0 + len / 2),
                         static_cast<double>(kGroundTop)});
    }
  }

  void wall() {
    flat(2, false, false);
    const int h = rng_.range(tune_.wall_min, tune_.wall_max);
    const int w = rng_.range(1, 2);
    for (int i = 0; i < w; ++i) {
      Column c = ground_column();
      for (int y = kGroundTop; y < kGroundTop + h; ++y) c[static_cast<std::size_t>(y)] = TileKind::kWall;
      columns_.push_back(c);
    }
    flat(3, false, false);
  }

  void pipe() {
    flat(2, false, false);
    const int h = rng_.range(2, tune_.pipe_max);
    for (int i = 0; i < 2; ++i) {
      Column c = ground_column();
      for (int y = kGroundTop; y < kGroundTop + h; ++y) c[static_cast<std::size_t>(y)] = TileKind::kPipe;
      columns_.push_back(c);
    }
    flat(3, false, false);
  }

  void coin_arc() {
    const int x0 = width();
    flat(6, false, false);
    static constexpr int kArc[4] = {4, 5, 5, 4};
    for (int i = 0; i < 4; ++i) {
      columns_[static_cast<std::size_t>(x0 + 1 + i)][kArc[i]] = TileKind::kCoin;
    }
  }

  void block_cluster() {
    const int x0 = width();
    flat(6, false, true);
    const int y = kGroundTop + 4;
    for (int i = 0; i < 3; ++i) {
      TileKind k = TileKind::kBrick;
      if (i == 1) {
        k = TileKind::kQuestion;
        if (rng_.bernoulli(tune_.spawner_prob)) {
          k = rng_.bernoulli(0.5) ? TileKind::kMushroomSpawner
                                  : TileKind::kFlowerSpawner;
        }
      }
      columns_[static_cast<std::size_t>(x0 + 2 + i)][y] = k;
    }
  }

  void platform() {
    const int x0 = width();
    flat(6, false, false);
    for (int i = 0; i < 3; ++i) {
      columns_[static_cast<std::size_t>(x0 + 2 + i)][kGroundTop + 3] = TileKind::kPlatform;
      columns_[static_cast<std::size_t>(x0 + 2 + i)][kGroundTop + 4] = TileKind::kCoin;
    }
  }

  void pit() {
    flat(3, false, false);
    const int w = difficulty_ >= 2 ? rng_.range(2, 3) : 2;
    for (int i = 0; i < w; ++i) {
      Column c{};
      c.fill(TileKind::kEmpty);
      c[kGroundTop - 1] = TileKind::kPitMarker;
      columns_.push_back(c);
    }
    flat(3, false, false);
    ++pits_;
  }

  Rng rng_;
  int difficulty_;
  Tuning tune_;
  int pits_ = 0;
  std::vector<Column> columns_;
  std::vector<EntitySpawn> spawns_;
};

}  // namespace

LevelSpec generate_level(std::uint64_t seed, int difficulty) {
  if (difficulty < 0 || difficulty > 2) {
    throw std::invalid_argument("difficulty must be 0, 1 or 2, got " +
                                std::to_string(difficulty));
  }
  return Assembler(seed, difficulty).build(seed);
}

std::shared_ptr<const LevelSet> make_level_set(std::uint64_t seed) {
  auto set = std::make_shared<LevelSet>();
  for (int d = 0; d < 3; ++d) set->levels[static_cast<std::size_t>(d)] = generate_level(seed, d);
  return set;
}

nlohmann::json level_to_json(const LevelSpec& level) {
  nlohmann::json rows = nlohmann::json::array();
  for (int y = level.height - 1; y >= 0; --y) {
    std::vector<int> row(static_cast<std::size_t>(level.length));
    for (int x = 0; x < level.length; ++x) row[static_cast<std::size_t>(x)] = code(level.at(x, y));
    rows.push_back(row);
  }
  nlohmann::json spawns = nlohmann::json::array();
  for (const auto& s : level.spawns) {
    spawns.push_back({{"kind", entity_name(s.kind)}, {"x", s.x}, {"y", s.y}});
  }
  return {{"version", kLevelFormatVersion},
          {"seed", level.seed},
          {"difficulty", level.difficulty},
          {"length", level.length},
          {"height", level.height},
          {"finish_x", level.finish_x},
          {"mario_spawn", {level.spawn_x, level.spawn_y}},
          {"rows", rows},
          {"spawns", spawns}};
}

LevelSpec level_from_json(const nlohmann::json& doc) {
  if (doc.at("version").get<int>() != kLevelFormatVersion) {
    throw std::invalid_argument("unsupported level format version");
  }
  LevelSpec lv;
  lv.seed = doc.at("seed").get<std::uint64_t>();
  lv.difficulty = doc.at("difficulty").get<int>();
  lv.length = doc.at("length").get<int>();
  lv.height = doc.at("height").get<int>();
  lv.finish_x = doc.at("finish_x").get<int>();
  lv.spawn_x = doc.at("mario_spawn").at(0).get<double>();
  lv.spawn_y = doc.at("mario_spawn").at(1).get<double>();
  const auto& rows = doc.at("rows");
  if (static_cast<int>(rows.size()) != lv.height) {
    throw std::invalid_argument("level rows do not match height");
  }
  lv.tiles.assign(static_cast<std::size_t>(lv.length * lv.height), TileKind::kEmpty);
  for (int r = 0; r < lv.height; ++r) {
    const auto& row = rows.at(static_cast<std::size_t>(r));
    if (static_cast<int>(row.size()) != lv.length) {
      throw std::invalid_argument("level row length mismatch");
    }
    for (int x = 0; x < lv.length; ++x) {
      const int c = row.at(static_cast<std::size_t>(x)).get<int>();
      if (c < 0 || c >= kNumTileKinds) throw std::invalid_argument("bad tile code");
      lv.set(x, lv.height - 1 - r, static_cast<TileKind>(c));
    }
  }
  for (const auto& s : doc.at("spawns")) {
    lv.spawns.push_back({entity_from_name(s.at("kind").get<std::string>()),
                         s.at("x").get<double>(), s.at("y").get<double>()});
  }
  return lv;
}

}  // namespace tamer::sim

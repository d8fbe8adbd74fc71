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

#ifndef TAMER_SIM_LEVEL_H_
#define TAMER_SIM_LEVEL_H_

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tamer/sim/tile.h"

namespace tamer::sim {

enum class EntityKind {
  kWalker,
  kShell,
  kFireball,
  kMushroom,
  kFlower,
  kCoinPickup,
};

std::string_view entity_name(EntityKind k);
EntityKind entity_from_name(std::string_view name);

inline constexpr bool is_monster(EntityKind k) {
  return k == EntityKind::kWalker || k == EntityKind::kShell;
}
inline constexpr bool is_hazard(EntityKind k) {
  return is_monster(k) || k == EntityKind::kFireball;
}

struct EntitySpawn {
  EntityKind kind = EntityKind::kWalker;
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const EntitySpawn&, const EntitySpawn&) = default;
};

inline constexpr int kLevelHeight = 21;
inline constexpr int kGroundTop = 2;  // Surface row Mario stands on.

// A complete level: tile map (y = 0 is the bottom row) plus entity spawns.
struct LevelSpec {
  std::uint64_t seed = 0;
  int difficulty = 0;
  int length = 0;
  int height = kLevelHeight;
  std::vector<TileKind> tiles;  // row-major, index y * length + x
  std::vector<EntitySpawn> spawns;
  double spawn_x = 2.0;
  double spawn_y = kGroundTop;
  int finish_x = 0;

  TileKind at(int x, int y) const {
    if (x < 0 || x >= length || y < 0 || y >= height) return TileKind::kEmpty;
    return tiles[static_cast<std::size_t>(y * length + x)];
  }
  void set(int x, int y, TileKind k) {
    tiles[static_cast<std::size_t>(y * length + x)] = k;
  }

  // Columns whose surface row holds a pit marker.
  int pit_count() const;

  friend bool operator==(const LevelSpec&, const LevelSpec&) = default;
};

// Assembles a level from seeded idioms (flat stretch, wall, pipe, pit, coin
// arc, block cluster, platform). Throws std::invalid_argument unless
// difficulty is 0, 1 or 2.
LevelSpec generate_level(std::uint64_t seed, int difficulty);

// Levels 0, 1 and 2 of a game: one seed at difficulties 0, 1, 2.
struct LevelSet {
  std::array<LevelSpec, 3> levels;
};

inline constexpr std::uint64_t kDefaultLevelSeed = 121;

std::shared_ptr<const LevelSet> make_level_set(
    std::uint64_t seed = kDefaultLevelSeed);

// Versioned JSON document. Rows are listed top to bottom.
inline constexpr int kLevelFormatVersion = 1;
nlohmann::json level_to_json(const LevelSpec& level);
LevelSpec level_from_json(const nlohmann::json& doc);

}  // namespace tamer::sim

#endif  // TAMER_SIM_LEVEL_H_

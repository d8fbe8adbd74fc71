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

#ifndef TAMER_SIM_TILE_H_
#define TAMER_SIM_TILE_H_

#include <cstdint>
#include <string_view>

namespace tamer::sim {

// The 14 tile kinds; the numeric code is what observations and level files
// carry.
enum class TileKind : std::uint8_t {
  kEmpty = 0,
  kGround = 1,
  kPitMarker = 2,
  kBrick = 3,
  kQuestion = 4,
  kCoin = 5,
  kPipe = 6,
  kWall = 7,
  kPlatform = 8,
  kUsedBlock = 9,
  kFlowerSpawner = 10,
  kMushroomSpawner = 11,
  kFinish = 12,
  kDecoration = 13,
};

inline constexpr int kNumTileKinds = 14;

inline constexpr int code(TileKind k) { return static_cast<int>(k); }

// Blocks movement from every side. Platforms are one-way and handled apart.
inline constexpr bool is_solid(TileKind k) {
  switch (k) {
    case TileKind::kGround:
    case TileKind::kBrick:
    case TileKind::kQuestion:
    case TileKind::kPipe:
    case TileKind::kWall:
    case TileKind::kUsedBlock:
    case TileKind::kFlowerSpawner:
    case TileKind::kMushroomSpawner:
      return true;
    default:
      return false;
  }
}

// Spawner blocks look like question blocks to the player.
inline constexpr bool looks_like_question(TileKind k) {
  return k == TileKind::kQuestion || k == TileKind::kFlowerSpawner ||
         k == TileKind::kMushroomSpawner;
}

std::string_view tile_name(TileKind k);

}  // namespace tamer::sim

#endif  // TAMER_SIM_TILE_H_

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

#ifndef TAMER_FEATURES_FEATURES_H_
#define TAMER_FEATURES_FEATURES_H_

#include <array>
#include <cmath>
#include <vector>

#include "tamer/sim/world.h"

namespace tamer::features {

inline constexpr int kNumFlags = 7;
inline constexpr int kSlotSize = kNumFlags + 3;
inline constexpr int kThetaSize = 2 * kSlotSize + 3;  // 23
inline constexpr int kRegionSize = 8;
// Farthest possible candidate inside the 8x8 region; marks an empty slot.
inline const double kSentinelDistance = 8.0 * std::sqrt(2.0);

using Theta = std::array<double, kThetaSize>;

enum class Flag {
  kPit = 0,
  kEnemy = 1,
  kMushroom = 2,
  kFlower = 3,
  kCoin = 4,
  kSmashableBlock = 5,
  kQuestionBlock = 6,
};

// Ranking classes, most salient first.
enum class Priority { kPit = 0, kEntity = 1, kBlock = 2, kNone = 3 };

// One candidate object near Mario, positioned relative to Mario's center.
struct SalientFeature {
  int flag = -1;  // Flag index, or -1 for the empty-slot sentinel
  Priority priority = Priority::kNone;
  double dx = 0.0;
  double dy = 0.0;
  double dist = kSentinelDistance;

  static SalientFeature sentinel() { return {}; }
  static SalientFeature make(Flag f, double dx, double dy);

  bool is(Flag f) const { return flag == static_cast<int>(f); }
  friend bool operator==(const SalientFeature&, const SalientFeature&) = default;
};

struct MarioFeatures {
  bool right_of_wall = false;
  double x_speed = 0.0;
  double y_speed = 0.0;
  friend bool operator==(const MarioFeatures&, const MarioFeatures&) = default;
};

// [phi1, phi2, phiM] flattened to 23 reals: per slot the seven class flags,
// then dx, dy, dist; then right_of_wall, x speed, y speed.
struct FeatureVector {
  SalientFeature phi1;
  SalientFeature phi2;
  MarioFeatures mario;
  Theta flat{};
};

// Total order used for ranking: priority class, distance, |dx|, |dy|, then
// signed dx and dy (ahead/above first) and flag index.
bool salient_before(const SalientFeature& a, const SalientFeature& b);

// Pits, entities and blocks inside the 8x8 region around Mario, in scan order.
std::vector<SalientFeature> region_candidates(const sim::Observation& obs);

std::vector<SalientFeature> rank_salient(std::vector<SalientFeature> candidates);
std::vector<SalientFeature> rank_salient(const sim::Observation& obs);

MarioFeatures mario_features(const sim::MarioState& mario);

FeatureVector build_theta(const std::vector<SalientFeature>& ranked,
                          const MarioFeatures& mario);
FeatureVector build_theta(const sim::Observation& obs);

}  // namespace tamer::features

#endif  // TAMER_FEATURES_FEATURES_H_

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

#include "tamer/features/features.h"

#include <algorithm>
#include <tuple>

namespace tamer::features {

namespace {

constexpr double kEntitySize = 0.875;

Priority priority_of(Flag f) {
  switch (f) {
    case Flag::kPit: return Priority::kPit;
    case Flag::kEnemy:
    case Flag::kMushroom:
    case Flag::kFlower: return Priority::kEntity;
    default: return Priority::kBlock;
  }
}

int tile_flag(sim::TileKind k) {
  using sim::TileKind;
  if (k == TileKind::kPitMarker) return static_cast<int>(Flag::kPit);
  if (k == TileKind::kCoin) return static_cast<int>(Flag::kCoin);
  if (k == TileKind::kBrick) return static_cast<int>(Flag::kSmashableBlock);
  if (sim::looks_like_question(k)) return static_cast<int>(Flag::kQuestionBlock);
  return -1;
}

int entity_flag(sim::EntityKind k) {
  switch (k) {
    case sim::EntityKind::kWalker:
    case sim::EntityKind::kShell:
    case sim::EntityKind::kFireball: return static_cast<int>(Flag::kEnemy);
    case sim::EntityKind::kMushroom: return static_cast<int>(Flag::kMushroom);
    case sim::EntityKind::kFlower: return static_cast<int>(Flag::kFlower);
    case sim::EntityKind::kCoinPickup: return -1;
  }
  return -1;
}

void write_slot(const SalientFeature& s, double* out) {
  for (int i = 0; i < kNumFlags; ++i) out[i] = 0.0;
  if (s.flag >= 0) out[s.flag] = 1.0;
  out[kNumFlags] = s.dx;
  out[kNumFlags + 1] = s.dy;
  out[kNumFlags + 2] = s.dist;
}

}  // namespace

SalientFeature SalientFeature::make(Flag f, double dx, double dy) {
  SalientFeature s;
  s.flag = static_cast<int>(f);
  s.priority = priority_of(f);
  s.dx = dx;
  s.dy = dy;
  s.dist = std::sqrt(dx * dx + dy * dy);
  return s;
}

bool salient_before(const SalientFeature& a, const SalientFeature& b) {
  const auto key = [](const SalientFeature& s) {
    return std::make_tuple(static_cast<int>(s.priority), s.dist,
                           std::abs(s.dx), std::abs(s.dy), -s.dx, -s.dy,
                           s.flag);
  };
  return key(a) < key(b);
}

std::vector<SalientFeature> region_candidates(const sim::Observation& obs) {
  std::vector<SalientFeature> out;
  const double cx = obs.mario.x + obs.mario_width / 2;
  const double cy = obs.mario.y + obs.mario_height / 2;
  const int mc = static_cast<int>(std::floor(cx));
  const int mr = static_cast<int>(std::floor(cy));
  const int c_lo = mc - kRegionSize / 2 + 1;
  const int r_lo = mr - kRegionSize / 2 + 1;
  const int c_hi = c_lo + kRegionSize - 1;
  const int r_hi = r_lo + kRegionSize - 1;

  for (int c = c_lo; c <= c_hi; ++c) {
    const int col = c - obs.view_x;
    if (col < 0 || col >= sim::kViewWidth) continue;
    for (int r = r_lo; r <= r_hi; ++r) {
      if (r < 0 || r >= sim::kViewHeight) continue;
      const int flag = tile_flag(static_cast<sim::TileKind>(obs.tiles.at(col, r)));
      if (flag < 0) continue;
      out.push_back(SalientFeature::make(static_cast<Flag>(flag),
                                         c + 0.5 - cx, r + 0.5 - cy));
    }
  }
  for (const auto& e : obs.entities) {
    if (!e.alive) continue;
    const int flag = entity_flag(e.kind);
    if (flag < 0) continue;
    const double ex = e.x + kEntitySize / 2;
    const double ey = e.y + kEntitySize / 2;
    const int ec = static_cast<int>(std::floor(ex));
    const int er = static_cast<int>(std::floor(ey));
    if (ec < c_lo || ec > c_hi || er < r_lo || er > r_hi) continue;
    out.push_back(SalientFeature::make(static_cast<Flag>(flag), ex - cx, ey - cy));
  }
  return out;
}

std::vector<SalientFeature> rank_salient(std::vector<SalientFeature> candidates) {
  std::sort(candidates.begin(), candidates.end(), salient_before);
  return candidates;
}

std::vector<SalientFeature> rank_salient(const sim::Observation& obs) {
  return rank_salient(region_candidates(obs));
}

MarioFeatures mario_features(const sim::MarioState& mario) {
  return {mario.right_of_wall, mario.vx, mario.vy};
}

FeatureVector build_theta(const std::vector<SalientFeature>& ranked,
                          const MarioFeatures& mario) {
  FeatureVector fv;
  fv.phi1 = ranked.size() > 0 ? ranked[0] : SalientFeature::sentinel();
  fv.phi2 = ranked.size() > 1 ? ranked[1] : SalientFeature::sentinel();
  fv.mario = mario;
  write_slot(fv.phi1, fv.flat.data());
  write_slot(fv.phi2, fv.flat.data() + kSlotSize);
  fv.flat[2 * kSlotSize] = mario.right_of_wall ? 1.0 : 0.0;
  fv.flat[2 * kSlotSize + 1] = mario.x_speed;
  fv.flat[2 * kSlotSize + 2] = mario.y_speed;
  return fv;
}

FeatureVector build_theta(const sim::Observation& obs) {
  return build_theta(rank_salient(obs), mario_features(obs.mario));
}

}  // namespace tamer::features

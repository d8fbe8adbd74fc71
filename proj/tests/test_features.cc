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

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "tamer/common/rng.h"
#include "tamer/features/features.h"
#include "tamer/sim/level.h"
#include "tamer/sim/world.h"

namespace tamer::features {
namespace {

// Empty view with Mario's center at (5, 5).
sim::Observation empty_obs() {
  sim::Observation obs;
  obs.view_x = 0;
  obs.mario.x = 4.625;
  obs.mario.y = 4.5;
  obs.mario.on_ground = true;
  return obs;
}

TEST(RankSalient, PitBeatsNearerMonster) {
  const auto pit = SalientFeature::make(Flag::kPit, 3.0, -4.0);     // dist 5
  const auto monster = SalientFeature::make(Flag::kEnemy, 1.0, 0.0);  // dist 1
  const auto ranked = rank_salient({monster, pit});
  ASSERT_EQ(ranked.size(), 2u);
  EXPECT_TRUE(ranked[0].is(Flag::kPit));
}

TEST(RankSalient, NearerCoinFirst) {
  const auto far = SalientFeature::make(Flag::kCoin, 4.0, 0.0);
  const auto near = SalientFeature::make(Flag::kCoin, 0.0, 2.0);
  const auto ranked = rank_salient({far, near});
  EXPECT_DOUBLE_EQ(ranked[0].dist, 2.0);
}

TEST(RankSalient, EmptyRegionGivesEmptyList) {
  EXPECT_TRUE(rank_salient(empty_obs()).empty());
}

TEST(BuildTheta, EmptyRegionStandingStill) {
  const auto fv = build_theta(empty_obs());
  Theta expected{};
  expected[9] = 8.0 * std::sqrt(2.0);
  expected[19] = 8.0 * std::sqrt(2.0);
  EXPECT_EQ(fv.flat, expected);
  EXPECT_NEAR(fv.flat[9], 11.3137, 1e-4);
}

TEST(BuildTheta, MonsterAtThreeFour) {
  auto obs = empty_obs();
  sim::Entity e;
  e.kind = sim::EntityKind::kWalker;
  e.x = 7.5625;  // center 8.0
  e.y = 8.5625;  // center 9.0
  obs.entities.push_back(e);
  const auto fv = build_theta(obs);
  EXPECT_TRUE(fv.phi1.is(Flag::kEnemy));
  EXPECT_DOUBLE_EQ(fv.phi1.dx, 3.0);
  EXPECT_DOUBLE_EQ(fv.phi1.dy, 4.0);
  EXPECT_DOUBLE_EQ(fv.phi1.dist, 5.0);
  EXPECT_EQ(fv.phi2, SalientFeature::sentinel());
  EXPECT_EQ(fv.flat[1], 1.0);
  EXPECT_EQ(fv.flat[7], 3.0);
  EXPECT_EQ(fv.flat[8], 4.0);
  EXPECT_EQ(fv.flat[9], 5.0);
}

TEST(BuildTheta, SprintingMarioFeatures) {
  const sim::PhysicsConfig physics;
  auto obs = empty_obs();
  obs.mario.vx = physics.sprint_speed;
  const auto fv = build_theta(obs);
  EXPECT_EQ(fv.flat[20], 0.0);
  EXPECT_EQ(fv.flat[21], physics.sprint_speed);
  EXPECT_EQ(fv.flat[22], 0.0);
}

// Random candidate sets, shuffled: the top two never change.
TEST(RankSalient, PermutationStable) {
  Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<SalientFeature> cands;
    const int n = rng.range(1, 9);
    for (int i = 0; i < n; ++i) {
      // Half-tile grid so exact ties in dist and |dx| happen often.
      const auto f = static_cast<Flag>(rng.range(0, kNumFlags - 1));
      cands.push_back(SalientFeature::make(f, 0.5 * rng.range(-7, 7), 0.5 * rng.range(-7, 7)));
    }
    const auto base = build_theta(rank_salient(cands), {});
    for (int k = 0; k < 5; ++k) {
      for (std::size_t i = cands.size(); i > 1; --i) {
        std::swap(cands[i - 1], cands[rng.below(i)]);
      }
      EXPECT_EQ(build_theta(rank_salient(cands), {}).flat, base.flat);
    }
  }
}

TEST(BuildTheta, TranslationInvariant) {
  const auto levels = sim::make_level_set(121);
  sim::World w(levels, 2);
  for (int i = 0; i < 40; ++i) w.step(sim::Action(sim::Direction::kRight, i % 9 == 0, false));
  const auto obs = w.observe();
  const auto base = build_theta(obs);
  for (int shift : {1, 5, 37}) {
    auto moved = obs;
    moved.view_x += shift;
    moved.mario.x += shift;
    for (auto& e : moved.entities) e.x += shift;
    const auto fv = build_theta(moved);
    for (int i = 0; i < kThetaSize; ++i) EXPECT_NEAR(fv.flat[i], base.flat[i], 1e-12) << i;
  }
}

TEST(BuildTheta, InvariantsAlongRandomPlay) {
  const auto levels = sim::make_level_set(121);
  Rng rng(9);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    sim::World w(levels, seed);
    for (int t = 0; t < 800 && !w.game_over(); ++t) {
      const auto fv = build_theta(w.observe());
      ASSERT_EQ(fv.flat.size(), 23u);
      for (int slot = 0; slot < 2; ++slot) {
        const double* s = fv.flat.data() + slot * kSlotSize;
        int set = 0;
        for (int f = 0; f < kNumFlags; ++f) {
          EXPECT_TRUE(s[f] == 0.0 || s[f] == 1.0);
          set += s[f] == 1.0;
        }
        EXPECT_LE(set, 1);
        EXPECT_GE(s[9], 0.0);
        if (set == 1) {
          EXPECT_NEAR(s[9], std::hypot(s[7], s[8]), 1e-9);
        }
      }
      const sim::PhysicsConfig p;
      EXPECT_LE(std::abs(fv.flat[21]), p.sprint_speed + 1e-12);
      EXPECT_LE(std::abs(fv.flat[22]), std::max(p.jump_impulse, p.max_fall_speed));
      w.step(sim::Action::from_index(rng.bernoulli(0.6) ? 10 : rng.range(0, 11)));
    }
  }
}

}  // namespace
}  // namespace tamer::features

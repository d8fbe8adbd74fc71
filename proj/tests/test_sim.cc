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

#include <set>

#include <gtest/gtest.h>

#include "tamer/common/rng.h"
#include "tamer/features/features.h"
#include "tamer/sim/level.h"
#include "tamer/sim/world.h"
#include "tamer/trainer/trainer.h"

namespace tamer::sim {
namespace {

// Flat ground over the whole width, finish near the right end.
LevelSpec flat_level(int difficulty, int length = 60) {
  LevelSpec lv;
  lv.difficulty = difficulty;
  lv.length = length;
  lv.tiles.assign(static_cast<std::size_t>(length * kLevelHeight), TileKind::kEmpty);
  for (int x = 0; x < length; ++x) {
    lv.set(x, 0, TileKind::kGround);
    lv.set(x, 1, TileKind::kGround);
  }
  lv.finish_x = length - 8;
  for (int y = kGroundTop; y < kGroundTop + 5; ++y) lv.set(lv.finish_x, y, TileKind::kFinish);
  return lv;
}

std::shared_ptr<const LevelSet> flat_levels() {
  auto set = std::make_shared<LevelSet>();
  for (int d = 0; d < 3; ++d) set->levels[static_cast<std::size_t>(d)] = flat_level(d);
  return set;
}

// Columns with no ground underfoot, found by scanning the tile map.
int scan_pit_columns(const LevelSpec& lv) {
  int n = 0;
  for (int x = 0; x < lv.length; ++x) {
    if (lv.at(x, 0) != TileKind::kGround && lv.at(x, 1) != TileKind::kGround) ++n;
  }
  return n;
}

TEST(Action, IndexBijection) {
  std::set<int> seen;
  for (auto dir : {Direction::kLeft, Direction::kNone, Direction::kRight}) {
    for (bool jump : {false, true}) {
      for (bool sprint : {false, true}) {
        const Action a(dir, jump, sprint);
        seen.insert(a.index());
        const Action back = Action::from_index(a.index());
        EXPECT_EQ(back.direction(), dir);
        EXPECT_EQ(back.jump(), jump);
        EXPECT_EQ(back.sprint(), sprint);
      }
    }
  }
  EXPECT_EQ(seen.size(), 12u);
  EXPECT_EQ(*seen.begin(), 0);
  EXPECT_EQ(*seen.rbegin(), 11);
  EXPECT_THROW(Action::from_index(12), std::invalid_argument);
  EXPECT_THROW(Action::from_index(-1), std::invalid_argument);
}

TEST(TileKind, FourteenNamedCodes) {
  std::set<std::string_view> names;
  for (int c = 0; c < kNumTileKinds; ++c) names.insert(tile_name(static_cast<TileKind>(c)));
  EXPECT_EQ(names.size(), 14u);
}

TEST(Level, SameSeedSameLayout) {
  EXPECT_EQ(generate_level(121, 0), generate_level(121, 0));
  EXPECT_EQ(level_to_json(generate_level(121, 2)).dump(),
            level_to_json(generate_level(121, 2)).dump());
}

TEST(Level, DifficultyZeroHasNoPit) {
  const auto lv = generate_level(121, 0);
  EXPECT_EQ(scan_pit_columns(lv), 0);
  EXPECT_EQ(lv.pit_count(), 0);
}

TEST(Level, HarderLevelsHavePits) {
  for (std::uint64_t seed : {121ULL, 1ULL, 2ULL, 99ULL}) {
    for (int d : {1, 2}) {
      const auto lv = generate_level(seed, d);
      EXPECT_GE(scan_pit_columns(lv), 1) << "seed " << seed << " difficulty " << d;
      EXPECT_EQ(lv.pit_count(), scan_pit_columns(lv));
    }
  }
}

TEST(Level, DifficultyOutOfRangeRejected) {
  EXPECT_THROW(generate_level(121, 3), std::invalid_argument);
  EXPECT_THROW(generate_level(121, -1), std::invalid_argument);
}

TEST(Level, JsonRoundTrip) {
  const auto lv = generate_level(7, 2);
  EXPECT_EQ(level_from_json(level_to_json(lv)), lv);
}

TEST(World, QuietStepCostsOneHundredth) {
  World w(flat_levels(), 1);
  const auto r = w.step(Action(Direction::kNone, false, false));
  EXPECT_EQ(r.score_delta, -1);
  ASSERT_EQ(r.events.size(), 1u);
  EXPECT_EQ(r.events[0].kind, ScoreKind::kStep);
  EXPECT_EQ(w.score(), -1);
}

TEST(World, StompAndCoinInOneStep) {
  World w(flat_levels(), 1);
  w.mutable_entities().clear();
  Entity walker;
  walker.kind = EntityKind::kWalker;
  walker.x = 10.0;
  walker.y = kGroundTop;
  walker.active = true;
  w.mutable_entities().push_back(walker);
  auto& m = w.mutable_mario();
  m.x = 10.0;
  m.y = 3.0;
  m.vy = -0.3;
  m.on_ground = false;
  w.mutable_level().set(10, 3, TileKind::kCoin);

  const auto r = w.step(Action(Direction::kNone, false, false));
  EXPECT_EQ(r.score_delta, 199);
  EXPECT_DOUBLE_EQ(r.points(), 1.99);
  EXPECT_FALSE(r.died);
  EXPECT_TRUE(w.entities().empty() ||
              std::none_of(w.entities().begin(), w.entities().end(),
                           [](const Entity& e) { return e.kind == EntityKind::kWalker; }));
}

TEST(World, CrossingFinishAdvancesLevel) {
  World w(flat_levels(), 1);
  auto& m = w.mutable_mario();
  m.x = w.level().finish_x - 0.6;
  const auto r = w.step(Action(Direction::kRight, false, true));
  EXPECT_TRUE(r.finished_level);
  EXPECT_EQ(r.score_delta, 10000 - 1);
  EXPECT_EQ(w.level_number(), 1);
  EXPECT_FALSE(w.game_over());
}

TEST(World, LevelAutomaton) {
  World w(flat_levels(), 1);
  w.advance_or_reset(Outcome::kFinishedLevel);
  EXPECT_EQ(w.level_number(), 1);
  w.advance_or_reset(Outcome::kFinishedLevel);
  EXPECT_EQ(w.level_number(), 2);
  w.advance_or_reset(Outcome::kFinishedLevel);
  EXPECT_EQ(w.level_number(), 0);
  EXPECT_FALSE(w.game_over());
  w.advance_or_reset(Outcome::kDied);
  EXPECT_EQ(w.level_number(), 0);
  EXPECT_TRUE(w.game_over());
}

TEST(World, DeathEndsGameAndFurtherStepsThrow) {
  World w(flat_levels(), 1);
  w.advance_or_reset(Outcome::kFinishedLevel);
  w.advance_or_reset(Outcome::kDied);
  EXPECT_THROW(w.step(Action()), std::logic_error);
}

TEST(World, FallingIntoPitKills) {
  const auto levels = make_level_set(121);
  World w(levels, 3);
  w.advance_or_reset(Outcome::kFinishedLevel);  // level 1 has a pit
  const auto& lv = w.level();
  int pit_x = -1;
  for (int x = 0; x < lv.length && pit_x < 0; ++x) {
    if (lv.at(x, 0) != TileKind::kGround && lv.at(x, 1) != TileKind::kGround) pit_x = x;
  }
  ASSERT_GE(pit_x, 0);
  w.mutable_entities().clear();
  auto& m = w.mutable_mario();
  m.x = pit_x + 0.1;
  m.y = kGroundTop;
  m.on_ground = false;
  StepResult last;
  for (int i = 0; i < 100 && !w.game_over(); ++i) last = w.step(Action(Direction::kNone, false, false));
  EXPECT_TRUE(w.game_over());
  EXPECT_TRUE(last.died);
  EXPECT_EQ(last.score_delta, -1000 - 1);
}

TEST(World, ObservationIsPureAndShowsSpawn) {
  const auto levels = make_level_set(121);
  World w(levels, 4);
  const auto a = w.observe();
  EXPECT_EQ(a, w.observe());
  const int spawn_col = static_cast<int>(levels->levels[0].spawn_x);
  EXPECT_LE(a.view_x, spawn_col);
  EXPECT_LT(spawn_col, a.view_x + kViewWidth);
  for (auto c : a.tiles.codes) EXPECT_LT(c, kNumTileKinds);
}

// Random play: score equals the sum of emitted events, level numbers follow
// the automaton, and replaying the same actions reproduces everything.
TEST(World, RandomPlayInvariants) {
  const auto levels = make_level_set(121);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    World a(levels, seed), b(levels, seed);
    Rng rng(seed + 100);
    std::int64_t sum = 0;
    int prev_level = 0;
    for (int t = 0; t < 3000 && !a.game_over(); ++t) {
      // Bias to the right so levels actually get traversed.
      const int idx = rng.bernoulli(0.7) ? 8 + rng.range(0, 3) : rng.range(0, 11);
      const auto act = Action::from_index(idx);
      const auto r = a.step(act);
      b.step(act);
      std::int64_t ev = 0;
      for (const auto& e : r.events) ev += e.value;
      EXPECT_EQ(ev, r.score_delta);
      sum += r.score_delta;
      ASSERT_EQ(a.score(), sum);
      const int lvl = a.level_number();
      const bool legal = lvl == prev_level || lvl == (prev_level + 1) % 3 || lvl == 0;
      EXPECT_TRUE(legal) << prev_level << " -> " << lvl;
      prev_level = lvl;
    }
    EXPECT_TRUE(a == b);
  }
}

TEST(World, OracleFinishesLevelZeroQuickly) {
  const auto levels = make_level_set(121);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    World w(levels, seed);
    int steps = 0;
    while (!w.game_over() && w.levels_finished() == 0 && steps < 600) {
      w.step(trainer::oracle_action(features::build_theta(w.observe()).flat));
      ++steps;
    }
    EXPECT_EQ(w.levels_finished(), 1) << "seed " << seed;
    EXPECT_LT(steps, 600);
  }
}

}  // namespace
}  // namespace tamer::sim

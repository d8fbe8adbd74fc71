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

#include "tamer/features/features.h"
#include "tamer/harness/experiment.h"
#include "tamer/trainer/trainer.h"

namespace tamer::trainer {
namespace {

using features::Flag;
using features::SalientFeature;

features::Theta theta_with(std::vector<SalientFeature> salient, bool wall = false) {
  auto fv = features::build_theta(features::rank_salient(std::move(salient)), {});
  fv.flat[20] = wall ? 1.0 : 0.0;
  return fv.flat;
}

TEST(Oracle, RunsRightWithSprint) {
  const auto a = oracle_action(theta_with({}));
  EXPECT_EQ(a.index(), 9);
}

TEST(Oracle, JumpsAtWallsPitsAndEnemies) {
  EXPECT_EQ(oracle_action(theta_with({}, true)).index(), 11);
  EXPECT_EQ(oracle_action(theta_with({SalientFeature::make(Flag::kPit, 2.0, -1.0)})).index(), 11);
  EXPECT_EQ(oracle_action(theta_with({SalientFeature::make(Flag::kEnemy, 1.0, 0.0)})).index(), 11);
}

TEST(Oracle, IgnoresThingsBehindOrFar) {
  EXPECT_EQ(oracle_action(theta_with({SalientFeature::make(Flag::kPit, -1.0, -1.0)})).index(), 9);
  EXPECT_EQ(oracle_action(theta_with({SalientFeature::make(Flag::kEnemy, 1.0, 3.0)})).index(), 9);
  EXPECT_EQ(oracle_action(theta_with({SalientFeature::make(Flag::kEnemy, 4.0, 0.0)})).index(), 9);
  EXPECT_EQ(oracle_action(theta_with({SalientFeature::make(Flag::kCoin, 1.0, 0.0)})).index(), 9);
}

TEST(Profile, Validation) {
  TrainerProfile p;
  EXPECT_NO_THROW(p.validate());
  p.error_rate = 0.5;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.initial_rate = 1.2;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.delay_lo = 0.9;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Rate, HalvesEveryHalfLife) {
  TrainerProfile p;
  EXPECT_DOUBLE_EQ(feedback_rate(p, 0), 0.3);
  EXPECT_NEAR(feedback_rate(p, 800), 0.15, 1e-15);
  EXPECT_NEAR(feedback_rate(p, 1600), 0.075, 1e-15);
  p.half_life_steps = 0;
  EXPECT_DOUBLE_EQ(feedback_rate(p, 5000), 0.3);
}

TEST(Trainer, EmissionCountsFollowDecay) {
  TrainerProfile p;
  const features::Theta theta{};
  const sim::Action a = oracle_action(theta);
  const int seeds = 50, steps = 2400;
  std::vector<int> per_block(3, 0);
  for (int s = 0; s < seeds; ++s) {
    SimulatedTrainer t(p, static_cast<std::uint64_t>(s));
    for (int k = 0; k < steps; ++k) per_block[static_cast<std::size_t>(k / 800)] += t.judge(theta, a, k, 0).has_value();
  }
  for (int b = 0; b < 3; ++b) {
    double expected = 0.0;
    for (int k = b * 800; k < (b + 1) * 800; ++k) expected += feedback_rate(p, k);
    expected *= seeds;
    // Four binomial standard deviations.
    EXPECT_NEAR(per_block[static_cast<std::size_t>(b)], expected, 4.0 * std::sqrt(expected)) << b;
  }
}

TEST(Trainer, SignFollowsOracleUpToErrorRate) {
  TrainerProfile p;
  p.initial_rate = 1.0;
  p.half_life_steps = 0;
  p.error_rate = 0.2;
  SimulatedTrainer t(p, 3);
  const features::Theta theta{};
  int agree = 0;
  const int n = 20'000;
  for (int k = 0; k < n; ++k) agree += t.judge(theta, oracle_action(theta), k, 0)->value == 1.0;
  EXPECT_NEAR(agree / double(n), 0.8, 0.01);
}

// Kolmogorov-Smirnov distance between emitted delays and U(0.2, 0.8).
TEST(Trainer, DelaysAreUniform) {
  TrainerProfile p;
  p.initial_rate = 1.0;
  p.half_life_steps = 0;
  SimulatedTrainer t(p, 4);
  std::vector<double> d;
  const learn::TimeUs end = 5'000'000;
  for (int k = 0; k < 10'000; ++k) d.push_back(learn::to_seconds(t.judge({}, {}, k, end)->time - end));
  std::sort(d.begin(), d.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double f = std::clamp((d[i] - 0.2) / 0.6, 0.0, 1.0);
    ks = std::max({ks, std::abs(f - double(i) / d.size()), std::abs(f - double(i + 1) / d.size())});
  }
  EXPECT_LT(ks, 0.02);
}

// A trainer that always answers, never errs and whose delay lands every
// press inside exactly one step teaches the oracle policy. Greedy action
// choice can still wedge the agent against a wall it never tries jumping
// over, so the bar is 8 of 10 sessions.
TEST(Trainer, PerfectTrainerTeachesOraclePolicy) {
  harness::ExperimentConfig cfg;
  const double dt = 1.0 / cfg.tick_rate;
  cfg.trainer.initial_rate = 1.0;
  cfg.trainer.half_life_steps = 0;
  cfg.trainer.error_rate = 0.0;
  cfg.trainer.delay_lo = cfg.trainer.delay_hi = 0.5 * dt;
  cfg.learner.pdf = learn::DelayPdf::uniform(0.5 * dt, 1.5 * dt);
  int good = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto run = harness::run_live_training(cfg, seed, 2, 2000);
    int agree = 0;
    for (const auto& r : run.log.steps) {
      agree += learn::select_action(run.model, r.theta) == oracle_action(r.theta);
      // Each step but the last gets exactly one full-credit label.
      if (r.step + 1 < 2000) {
        EXPECT_NEAR(std::abs(r.h), 1.0, 1e-9) << r.step;
      }
    }
    good += agree >= 0.9 * static_cast<double>(run.log.steps.size());
  }
  EXPECT_GE(good, 8);
}

}  // namespace
}  // namespace tamer::trainer

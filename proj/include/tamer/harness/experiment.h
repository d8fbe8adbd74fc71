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

#ifndef TAMER_HARNESS_EXPERIMENT_H_
#define TAMER_HARNESS_EXPERIMENT_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tamer/channels/channel.h"
#include "tamer/harness/config.h"
#include "tamer/harness/training_log.h"
#include "tamer/learn/reward_model.h"
#include "tamer/sim/level.h"

namespace tamer::harness {

struct EvalResult {
  double mean = 0.0;
  std::vector<double> scores;  // one per evaluation seed, in seed order
};

// Plays one greedy game from level 0 until game over or `step_cap` steps and
// returns the game score in points.
double play_greedy_game(const learn::RewardModel& model,
                        std::shared_ptr<const sim::LevelSet> levels,
                        const sim::PhysicsConfig& physics, std::uint64_t seed,
                        int step_cap);

// Offline evaluation: one greedy game per seed, no learning.
EvalResult evaluate_policy(const learn::RewardModel& model,
                           std::shared_ptr<const sim::LevelSet> levels,
                           const sim::PhysicsConfig& physics,
                           const EvalConfig& eval, int threads = 1);

struct Checkpoint {
  std::int64_t step = 0;            // steps consumed so far
  std::uint64_t model_hash = 0;
  std::optional<learn::RewardModel> model;  // kept only on request
  std::optional<EvalResult> eval;
};

struct LiveRun {
  TrainingLog log;
  learn::RewardModel model;         // learner after the final flush
  std::vector<Checkpoint> checkpoints;  // hashes only
};

// Game g of a live run uses this world seed.
std::uint64_t game_seed(std::uint64_t env_seed, std::int64_t game);

// Agent and simulated trainer interact for `steps` ticks. Throws
// std::invalid_argument if steps < 1.
LiveRun run_live_training(const ExperimentConfig& config, std::uint64_t env_seed,
                          std::uint64_t trainer_seed, std::int64_t steps,
                          std::vector<std::string> conditions = {});

struct ReplayOptions {
  bool evaluate = true;
  bool keep_models = false;
  int threads = 1;  // for evaluation games
};

struct LearningCurve {
  std::string channel;
  std::vector<Checkpoint> checkpoints;
};

// Learner configured from `config` but with the log's delay pdf, so labels
// finalize on the same schedule as when the log was recorded.
learn::LearnerConfig replay_learner_config(const TrainingLog& log,
                                           const ExperimentConfig& config);

// Trains on the recorded trajectory with channel-transformed labels and
// checkpoints every config.checkpoint_interval steps up to config.max_steps.
LearningCurve run_replay_training(const TrainingLog& log,
                                  const channels::ChannelSpec& channel,
                                  const ExperimentConfig& config,
                                  const ReplayOptions& options = {});

// Model after replaying the whole log (up to max_steps) and flushing.
learn::RewardModel replay_final_model(const TrainingLog& log,
                                      const channels::ChannelSpec& channel,
                                      const ExperimentConfig& config);

}  // namespace tamer::harness

#endif  // TAMER_HARNESS_EXPERIMENT_H_

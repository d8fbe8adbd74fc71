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

#include "tamer/harness/experiment.h"

#include <map>
#include <stdexcept>
#include <utility>

#include "tamer/features/features.h"
#include "tamer/harness/work_pool.h"
#include "tamer/learn/learner.h"
#include "tamer/sim/world.h"
#include "tamer/trainer/trainer.h"

namespace tamer::harness {

double play_greedy_game(const learn::RewardModel& model,
                        std::shared_ptr<const sim::LevelSet> levels,
                        const sim::PhysicsConfig& physics, std::uint64_t seed,
                        int step_cap) {
  sim::World world(std::move(levels), seed, physics);
  for (int i = 0; i < step_cap && !world.game_over(); ++i) {
    const auto fv = features::build_theta(world.observe());
    world.step(learn::select_action(model, fv.flat));
  }
  return world.score_points();
}

EvalResult evaluate_policy(const learn::RewardModel& model,
                           std::shared_ptr<const sim::LevelSet> levels,
                           const sim::PhysicsConfig& physics,
                           const EvalConfig& eval, int threads) {
  const auto seeds = eval.seeds();
  EvalResult out;
  out.scores = parallel_map(seeds.size(), threads, [&](std::size_t i) {
    return play_greedy_game(model, levels, physics, seeds[i], eval.step_cap);
  });
  double sum = 0.0;
  for (double s : out.scores) sum += s;
  out.mean = sum / static_cast<double>(out.scores.size());
  return out;
}

std::uint64_t game_seed(std::uint64_t env_seed, std::int64_t game) {
  return Rng::derive(env_seed, static_cast<std::uint64_t>(game)).next();
}

LiveRun run_live_training(const ExperimentConfig& config, std::uint64_t env_seed,
                          std::uint64_t trainer_seed, std::int64_t steps,
                          std::vector<std::string> conditions) {
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  config.validate();
  const auto levels = sim::make_level_set(config.level_seed);
  learn::TamerLearner learner(config.learner);
  trainer::SimulatedTrainer trainer(config.trainer, trainer_seed);

  LiveRun run{{}, learner.model(), {}};
  auto& log = run.log;
  log.header.env_seed = env_seed;
  log.header.trainer_seed = trainer_seed;
  log.header.level_seed = config.level_seed;
  log.header.conditions = std::move(conditions);
  log.header.tick_rate = config.tick_rate;
  log.header.pdf_lo = config.learner.pdf.lo();
  log.header.pdf_hi = config.learner.pdf.hi();
  log.header.source = "simulated";
  log.steps.reserve(static_cast<std::size_t>(steps));

  std::int64_t game = 0;
  sim::World world(levels, game_seed(env_seed, game), config.physics);
  // Emitted but not yet delivered events, keyed by (time, emission order).
  std::map<std::pair<learn::TimeUs, std::int64_t>, learn::FeedbackEvent> pending;
  std::int64_t emitted = 0;

  auto apply_finalized = [&](const std::vector<learn::FinalizedLabel>& labels) {
    for (const auto& f : labels) log.steps[static_cast<std::size_t>(f.index)].h = f.h;
  };

  for (std::int64_t k = 0; k < steps; ++k) {
    const auto start = step_time(k, config.tick_rate);
    const auto end = step_time(k + 1, config.tick_rate);
    const auto fv = features::build_theta(world.observe());
    const auto action = learner.act(fv.flat);
    const auto result = world.step(action);

    learner.push_step(k, fv.flat, action, start, end);
    StepRecord rec;
    rec.step = k;
    rec.theta = fv.flat;
    rec.action = action.index();
    rec.start = start;
    rec.end = end;
    rec.score_delta = result.score_delta;
    log.steps.push_back(std::move(rec));

    if (auto ev = trainer.judge(fv.flat, action, k, end)) {
      pending.emplace(std::make_pair(ev->time, emitted++), *ev);
    }
    while (!pending.empty() && pending.begin()->first.first <= end) {
      const auto ev = pending.begin()->second;
      pending.erase(pending.begin());
      learner.add_feedback(ev);
      log.steps.back().events.push_back({ev.value, ev.time, std::nullopt});
    }
    apply_finalized(learner.finalize_until(end));

    if (world.game_over()) {
      ++game;
      world = sim::World(levels, game_seed(env_seed, game), config.physics);
    }
    const auto done = k + 1;
    if (done % config.checkpoint_interval == 0 && done <= config.max_steps) {
      run.checkpoints.push_back({done, learner.model().hash(), std::nullopt, std::nullopt});
    }
  }
  apply_finalized(learner.flush());
  run.model = learner.model();
  return run;
}

learn::LearnerConfig replay_learner_config(const TrainingLog& log,
                                           const ExperimentConfig& config) {
  auto lc = config.learner;
  lc.pdf = learn::DelayPdf::uniform(log.header.pdf_lo, log.header.pdf_hi);
  if (lc.window_seconds < lc.pdf.hi()) lc.window_seconds = lc.pdf.hi();
  return lc;
}

namespace {

// Drives a learner over the log; calls on_checkpoint(steps_done, learner).
template <typename Fn>
learn::TamerLearner replay(const TrainingLog& log, const channels::ChannelSpec& channel,
                           const ExperimentConfig& config, Fn on_checkpoint) {
  validate_log(log);
  const auto labels = channels::relabel(labels_of(log), channel);
  learn::TamerLearner learner(replay_learner_config(log, config));
  const auto n = std::min<std::int64_t>(static_cast<std::int64_t>(log.steps.size()),
                                        config.max_steps);
  for (std::int64_t k = 0; k < n; ++k) {
    const auto& r = log.steps[static_cast<std::size_t>(k)];
    learner.push_step(r.step, r.theta, sim::Action::from_index(r.action), r.start, r.end);
    learner.set_label(r.step, labels[static_cast<std::size_t>(k)]);
    learner.finalize_until(r.end);
    if ((k + 1) % config.checkpoint_interval == 0) on_checkpoint(k + 1, learner);
  }
  return learner;
}

}  // namespace

LearningCurve run_replay_training(const TrainingLog& log,
                                  const channels::ChannelSpec& channel,
                                  const ExperimentConfig& config,
                                  const ReplayOptions& options) {
  config.validate();
  LearningCurve curve{channels::to_string(channel), {}};
  std::vector<learn::RewardModel> models;
  replay(log, channel, config, [&](std::int64_t done, const learn::TamerLearner& l) {
    Checkpoint cp{done, l.model().hash(), std::nullopt, std::nullopt};
    if (options.keep_models) cp.model = l.model();
    curve.checkpoints.push_back(std::move(cp));
    if (options.evaluate) models.push_back(l.model());
  });
  if (options.evaluate) {
    const auto levels = sim::make_level_set(log.header.level_seed);
    const auto seeds = config.eval.seeds();
    const std::size_t per = seeds.size();
    // Flatten (checkpoint, game) so every game is one work item.
    const auto scores = parallel_map(models.size() * per, options.threads, [&](std::size_t i) {
      return play_greedy_game(models[i / per], levels, config.physics, seeds[i % per],
                              config.eval.step_cap);
    });
    for (std::size_t c = 0; c < models.size(); ++c) {
      EvalResult r;
      double sum = 0.0;
      for (std::size_t g = 0; g < per; ++g) {
        r.scores.push_back(scores[c * per + g]);
        sum += r.scores.back();
      }
      r.mean = sum / static_cast<double>(per);
      curve.checkpoints[c].eval = std::move(r);
    }
  }
  return curve;
}

learn::RewardModel replay_final_model(const TrainingLog& log,
                                      const channels::ChannelSpec& channel,
                                      const ExperimentConfig& config) {
  auto learner = replay(log, channel, config, [](std::int64_t, const learn::TamerLearner&) {});
  learner.flush();
  return learner.model();
}

}  // namespace tamer::harness

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

// Command-line front end: level generation, simulated training, replay,
// evaluation, channel comparison and the live server.

#include <pthread.h>

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tamer/channels/channel.h"
#include "tamer/harness/config.h"
#include "tamer/harness/experiment.h"
#include "tamer/harness/report.h"
#include "tamer/harness/training_log.h"
#include "tamer/harness/work_pool.h"
#include "tamer/live/server.h"
#include "tamer/sim/level.h"

namespace fs = std::filesystem;
using namespace tamer;

namespace {

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  if (const auto parent = fs::path(path).parent_path(); !parent.empty()) {
    fs::create_directories(parent);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return nlohmann::json::parse(in);
}

harness::ExperimentConfig config_or_default(const std::string& path) {
  return path.empty() ? harness::ExperimentConfig{} : harness::load_config(path);
}

// Expands directories to their *.jsonl files, sorted by name.
std::vector<std::string> expand_logs(const std::vector<std::string>& inputs) {
  std::vector<std::string> out;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<std::string> found;
      for (const auto& e : fs::directory_iterator(in)) {
        if (e.path().extension() == ".jsonl") found.push_back(e.path().string());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(in);
    }
  }
  return out;
}

nlohmann::json eval_json(const harness::EvalResult& r) {
  return {{"mean", r.mean}, {"scores", r.scores}};
}

std::string curve_json_text(const harness::LearningCurve& curve) {
  nlohmann::json cps = nlohmann::json::array();
  for (const auto& cp : curve.checkpoints) {
    nlohmann::json c = {{"step", cp.step}, {"model_hash", cp.model_hash}};
    if (cp.eval) c["eval"] = eval_json(*cp.eval);
    cps.push_back(std::move(c));
  }
  return nlohmann::json{{"channel", curve.channel}, {"checkpoints", cps}}.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TAMER agents on a tile platformer: training, replay and evaluation"};
  app.require_subcommand(1);

  std::string config_path;
  int threads = 0;

  // generate-levels
  auto* gen = app.add_subcommand("generate-levels", "Write the three levels for a seed as JSON");
  std::uint64_t level_seed = 121;
  std::string gen_out;
  gen->add_option("--seed", level_seed, "Level seed")->capture_default_str();
  gen->add_option("-o,--out", gen_out, "Output file (stdout if omitted)");

  // train-live
  auto* train = app.add_subcommand("train-live", "Train with the simulated trainer and write logs");
  std::uint64_t env_seed = 0, trainer_seed = 0;
  std::int64_t steps = 2800;
  int count = 1;
  std::string train_out, model_out, condition;
  train->add_option("-c,--config", config_path, "Experiment config JSON");
  train->add_option("--env-seed", env_seed, "World seed")->capture_default_str();
  train->add_option("--trainer-seed", trainer_seed, "Trainer seed")->capture_default_str();
  train->add_option("--steps", steps, "Training steps")->capture_default_str();
  train->add_option("--count", count,
                    "Number of logs; log i uses env-seed+i and trainer-seed+i")
      ->capture_default_str();
  train->add_option("-o,--out", train_out,
                    "Log file, or directory (log_NNN.jsonl) when --count > 1")
      ->required();
  train->add_option("--model-out", model_out, "Final model JSON (single log only)");
  train->add_option("--condition", condition, "Condition tag recorded in the log header");
  train->add_option("-j,--threads", threads, "Worker threads (0 = all cores)");

  // replay
  auto* replay = app.add_subcommand("replay", "Replay one log through a feedback channel");
  std::string log_path, channel_text = "keypress", replay_csv, replay_json, replay_model;
  replay->add_option("--log", log_path, "Training log (JSONL)")->required();
  replay->add_option("--channel", channel_text, "Channel spec")->capture_default_str();
  replay->add_option("-c,--config", config_path, "Experiment config JSON");
  replay->add_option("--csv", replay_csv, "Curve CSV (stdout if neither output is given)");
  replay->add_option("--json", replay_json, "Curve JSON with per-game scores and hashes");
  replay->add_option("--model-out", replay_model, "Model after the whole log");
  replay->add_option("-j,--threads", threads, "Worker threads (0 = all cores)");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Greedy offline evaluation of a model");
  std::string model_path, eval_out;
  evaluate->add_option("--model", model_path, "Model JSON")->required();
  evaluate->add_option("-c,--config", config_path, "Experiment config JSON");
  evaluate->add_option("-o,--out", eval_out, "Result JSON (stdout if omitted)");
  evaluate->add_option("-j,--threads", threads, "Worker threads (0 = all cores)");

  // compare
  auto* compare = app.add_subcommand("compare", "Replay a log set under several channels");
  std::vector<std::string> log_inputs, channel_texts;
  std::string cmp_csv, cmp_json;
  compare->add_option("--logs", log_inputs, "Log files or directories")->required();
  compare->add_option("--channels", channel_texts,
                      "Channel specs, least to most reliable")
      ->required();
  compare->add_option("-c,--config", config_path, "Experiment config JSON");
  compare->add_option("--csv", cmp_csv, "Curves CSV (stdout if omitted)");
  compare->add_option("--json", cmp_json, "Report JSON");
  compare->add_option("-j,--threads", threads, "Worker threads (0 = all cores)");

  // serve
  auto* serve = app.add_subcommand("serve", "Run the live training server");
  live::ServerOptions server_options;
  serve->add_option("--address", server_options.address)->capture_default_str();
  serve->add_option("--port", server_options.port)->capture_default_str();
  serve->add_option("--seed", server_options.seed, "Base seed for session worlds")
      ->capture_default_str();
  serve->add_option("--tick-rate", server_options.config.tick_rate, "Steps per second")
      ->capture_default_str();
  serve->add_option("--bar-capacity", server_options.config.bar_capacity)->capture_default_str();
  serve->add_option("--log-dir", server_options.log_dir, "Save logs of closed sessions here");
  serve->add_option("--io-threads", server_options.threads)->capture_default_str();
  serve->add_option("-c,--config", config_path, "Experiment config JSON (physics, learner)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const auto levels = sim::make_level_set(level_seed);
      nlohmann::json doc = {{"seed", level_seed}, {"levels", nlohmann::json::array()}};
      for (const auto& lv : levels->levels) doc["levels"].push_back(sim::level_to_json(lv));
      write_text(gen_out, doc.dump() + "\n");
    } else if (*train) {
      const auto cfg = config_or_default(config_path);
      std::vector<std::string> conditions;
      if (!condition.empty()) conditions.push_back(condition);
      if (count < 1) throw std::invalid_argument("--count must be >= 1");
      if (count == 1) {
        const auto run = harness::run_live_training(cfg, env_seed, trainer_seed, steps, conditions);
        harness::save_log(train_out, run.log);
        if (!model_out.empty()) write_text(model_out, learn::model_to_json(run.model).dump() + "\n");
      } else {
        if (!model_out.empty()) throw std::invalid_argument("--model-out needs --count 1");
        fs::create_directories(train_out);
        harness::parallel_map(static_cast<std::size_t>(count), threads, [&](std::size_t i) {
          const auto run = harness::run_live_training(cfg, env_seed + i, trainer_seed + i, steps,
                                                      conditions);
          char name[32];
          std::snprintf(name, sizeof name, "log_%03zu.jsonl", i);
          harness::save_log((fs::path(train_out) / name).string(), run.log);
          return 0;
        });
      }
    } else if (*replay) {
      const auto cfg = config_or_default(config_path);
      const auto log = harness::load_log(log_path);
      const auto channel = channels::parse_channel(channel_text);
      harness::ReplayOptions opts;
      opts.threads = threads;
      const auto curve = harness::run_replay_training(log, channel, cfg, opts);
      const auto report = harness::summarize_curves({{curve}});
      if (!replay_csv.empty() || replay_json.empty()) {
        write_text(replay_csv, harness::curves_csv(report));
      }
      if (!replay_json.empty()) write_text(replay_json, curve_json_text(curve));
      if (!replay_model.empty()) {
        const auto model = harness::replay_final_model(log, channel, cfg);
        write_text(replay_model, learn::model_to_json(model).dump() + "\n");
      }
    } else if (*evaluate) {
      const auto cfg = config_or_default(config_path);
      const auto model = learn::model_from_json(read_json(model_path));
      const auto levels = sim::make_level_set(cfg.level_seed);
      const auto r = harness::evaluate_policy(model, levels, cfg.physics, cfg.eval, threads);
      write_text(eval_out, eval_json(r).dump() + "\n");
    } else if (*compare) {
      const auto cfg = config_or_default(config_path);
      std::vector<harness::TrainingLog> logs;
      for (const auto& p : expand_logs(log_inputs)) logs.push_back(harness::load_log(p));
      std::vector<channels::ChannelSpec> specs;
      for (const auto& t : channel_texts) specs.push_back(channels::parse_channel(t));
      const auto report = harness::compare_channels(logs, specs, cfg, threads);
      write_text(cmp_csv, harness::curves_csv(report));
      if (!cmp_json.empty()) write_text(cmp_json, harness::report_json(report).dump(2) + "\n");
    } else if (*serve) {
      if (!config_path.empty()) {
        const auto cfg = harness::load_config(config_path);
        server_options.config.physics = cfg.physics;
        server_options.config.learner = cfg.learner;
        server_options.config.level_seed = cfg.level_seed;
      }
      // Block the stop signals before any I/O thread exists, then wait for
      // one on this thread.
      sigset_t stop_signals;
      sigemptyset(&stop_signals);
      sigaddset(&stop_signals, SIGINT);
      sigaddset(&stop_signals, SIGTERM);
      pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);
      live::Server server(server_options);
      const auto port = server.start();
      std::cerr << "listening on " << server_options.address << ":" << port << "\n";
      int sig = 0;
      sigwait(&stop_signals, &sig);
      server.stop();
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

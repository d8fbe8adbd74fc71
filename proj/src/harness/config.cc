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

#include "tamer/harness/config.h"

#include <fstream>
#include <set>
#include <stdexcept>

namespace tamer::harness {

namespace {

using nlohmann::json;

void check_keys(const json& doc, const std::set<std::string>& allowed,
                const std::string& where) {
  if (!doc.is_object()) throw std::invalid_argument(where + " must be an object");
  for (const auto& [key, _] : doc.items()) {
    if (!allowed.count(key)) {
      throw std::invalid_argument("unknown key in " + where + ": " + key);
    }
  }
}

template <typename T>
void read(const json& doc, const char* key, T& out) {
  if (doc.contains(key)) out = doc.at(key).get<T>();
}

}  // namespace

std::vector<std::uint64_t> EvalConfig::seeds() const {
  std::vector<std::uint64_t> out;
  for (int i = 0; i < games; ++i) out.push_back(seed_base + static_cast<std::uint64_t>(i));
  return out;
}

void ExperimentConfig::validate() const {
  trainer.validate();
  if (!(tick_rate > 0.0)) throw std::invalid_argument("tick_rate must be positive");
  if (checkpoint_interval < 1) throw std::invalid_argument("checkpoint_interval must be >= 1");
  if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
  if (eval.games < 1 || eval.step_cap < 1) {
    throw std::invalid_argument("eval games and step_cap must be >= 1");
  }
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
  if (learner.window_seconds < learner.pdf.hi()) {
    throw std::invalid_argument("window_seconds must cover the delay pdf");
  }
}

json physics_to_json(const sim::PhysicsConfig& p) {
  return {{"gravity", p.gravity},
          {"jump_impulse", p.jump_impulse},
          {"max_fall_speed", p.max_fall_speed},
          {"walk_speed", p.walk_speed},
          {"sprint_speed", p.sprint_speed},
          {"stomp_bounce", p.stomp_bounce},
          {"mario_width", p.mario_width},
          {"mario_height", p.mario_height},
          {"walker_speed", p.walker_speed},
          {"shell_speed", p.shell_speed},
          {"fireball_speed", p.fireball_speed},
          {"fireball_hop", p.fireball_hop},
          {"mushroom_speed", p.mushroom_speed},
          {"activation_range", p.activation_range}};
}

sim::PhysicsConfig physics_from_json(const json& doc) {
  sim::PhysicsConfig p;
  check_keys(doc, {"gravity", "jump_impulse", "max_fall_speed", "walk_speed",
                   "sprint_speed", "stomp_bounce", "mario_width", "mario_height",
                   "walker_speed", "shell_speed", "fireball_speed",
                   "fireball_hop", "mushroom_speed", "activation_range"},
             "physics");
  read(doc, "gravity", p.gravity);
  read(doc, "jump_impulse", p.jump_impulse);
  read(doc, "max_fall_speed", p.max_fall_speed);
  read(doc, "walk_speed", p.walk_speed);
  read(doc, "sprint_speed", p.sprint_speed);
  read(doc, "stomp_bounce", p.stomp_bounce);
  read(doc, "mario_width", p.mario_width);
  read(doc, "mario_height", p.mario_height);
  read(doc, "walker_speed", p.walker_speed);
  read(doc, "shell_speed", p.shell_speed);
  read(doc, "fireball_speed", p.fireball_speed);
  read(doc, "fireball_hop", p.fireball_hop);
  read(doc, "mushroom_speed", p.mushroom_speed);
  read(doc, "activation_range", p.activation_range);
  return p;
}

json trainer_to_json(const trainer::TrainerProfile& p) {
  return {{"initial_rate", p.initial_rate},
          {"half_life_steps", p.half_life_steps},
          {"error_rate", p.error_rate},
          {"delay_lo", p.delay_lo},
          {"delay_hi", p.delay_hi}};
}

trainer::TrainerProfile trainer_from_json(const json& doc) {
  trainer::TrainerProfile p;
  check_keys(doc, {"initial_rate", "half_life_steps", "error_rate", "delay_lo", "delay_hi"},
             "trainer");
  read(doc, "initial_rate", p.initial_rate);
  read(doc, "half_life_steps", p.half_life_steps);
  read(doc, "error_rate", p.error_rate);
  read(doc, "delay_lo", p.delay_lo);
  read(doc, "delay_hi", p.delay_hi);
  p.validate();
  return p;
}

json config_to_json(const ExperimentConfig& c) {
  return {{"physics", physics_to_json(c.physics)},
          {"learner",
           {{"model", learn::model_config_to_json(c.learner.model)},
            {"pdf", {{"lo", c.learner.pdf.lo()}, {"hi", c.learner.pdf.hi()}}},
            {"window_seconds", c.learner.window_seconds}}},
          {"trainer", trainer_to_json(c.trainer)},
          {"tick_rate", c.tick_rate},
          {"level_seed", c.level_seed},
          {"checkpoint_interval", c.checkpoint_interval},
          {"max_steps", c.max_steps},
          {"eval",
           {{"games", c.eval.games},
            {"step_cap", c.eval.step_cap},
            {"seed_base", c.eval.seed_base}}},
          {"threads", c.threads}};
}

ExperimentConfig config_from_json(const json& doc) {
  ExperimentConfig c;
  check_keys(doc, {"physics", "learner", "trainer", "tick_rate", "level_seed",
                   "checkpoint_interval", "max_steps", "eval", "threads"},
             "config");
  if (doc.contains("physics")) c.physics = physics_from_json(doc.at("physics"));
  if (doc.contains("learner")) {
    const auto& l = doc.at("learner");
    check_keys(l, {"model", "pdf", "window_seconds"}, "learner");
    if (l.contains("model")) c.learner.model = learn::model_config_from_json(l.at("model"));
    if (l.contains("pdf")) {
      const auto& pdf = l.at("pdf");
      check_keys(pdf, {"lo", "hi"}, "learner.pdf");
      c.learner.pdf = learn::DelayPdf::uniform(pdf.value("lo", c.learner.pdf.lo()),
                                               pdf.value("hi", c.learner.pdf.hi()));
    }
    read(l, "window_seconds", c.learner.window_seconds);
  }
  if (doc.contains("trainer")) c.trainer = trainer_from_json(doc.at("trainer"));
  read(doc, "tick_rate", c.tick_rate);
  read(doc, "level_seed", c.level_seed);
  read(doc, "checkpoint_interval", c.checkpoint_interval);
  read(doc, "max_steps", c.max_steps);
  if (doc.contains("eval")) {
    const auto& e = doc.at("eval");
    check_keys(e, {"games", "step_cap", "seed_base"}, "eval");
    read(e, "games", c.eval.games);
    read(e, "step_cap", c.eval.step_cap);
    read(e, "seed_base", c.eval.seed_base);
  }
  read(doc, "threads", c.threads);
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  return config_from_json(json::parse(in));
}

}  // namespace tamer::harness

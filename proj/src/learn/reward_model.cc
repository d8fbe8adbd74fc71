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

#include "tamer/learn/reward_model.h"

#include <stdexcept>

#include "tamer/common/hash.h"

namespace tamer::learn {

namespace {

void hash_theta(Fnv1a& h, const Theta& t) {
  for (double v : t) h.add(v);
}

nlohmann::json theta_json(const Theta& t) {
  return nlohmann::json(std::vector<double>(t.begin(), t.end()));
}

Theta theta_from(const nlohmann::json& j) {
  if (j.size() != static_cast<std::size_t>(features::kThetaSize)) {
    throw std::invalid_argument("weight vector must have 23 entries");
  }
  Theta t{};
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = j.at(i).get<double>();
  return t;
}

nlohmann::json tree_params_json(const TreeParams& p) {
  return {{"split_interval", p.split_interval},
          {"min_leaf", p.min_leaf},
          {"max_depth", p.max_depth},
          {"min_gain", p.min_gain},
          {"buffer_size", p.buffer_size},
          {"refit_passes", p.refit_passes}};
}

TreeParams tree_params_from(const nlohmann::json& j) {
  TreeParams p;
  p.split_interval = j.value("split_interval", p.split_interval);
  p.min_leaf = j.value("min_leaf", p.min_leaf);
  p.max_depth = j.value("max_depth", p.max_depth);
  p.min_gain = j.value("min_gain", p.min_gain);
  p.buffer_size = j.value("buffer_size", p.buffer_size);
  p.refit_passes = j.value("refit_passes", p.refit_passes);
  return p;
}

}  // namespace

RewardModel::RewardModel(const ModelConfig& config)
    : impl_(config.kind == ModelKind::kLinear
                ? decltype(impl_)(LinearRewardModel(config.alpha))
                : decltype(impl_)(ModelTreeRewardModel(config.alpha, config.tree))) {}

ModelKind RewardModel::kind() const {
  return std::holds_alternative<LinearRewardModel>(impl_) ? ModelKind::kLinear
                                                          : ModelKind::kTree;
}

double RewardModel::predict(const Theta& theta, sim::Action action) const {
  return std::visit([&](const auto& m) { return m.predict(theta, action); }, impl_);
}

double RewardModel::update(const Theta& theta, sim::Action action, double h) {
  return std::visit([&](auto& m) { return m.update(theta, action, h); }, impl_);
}

std::uint64_t RewardModel::hash() const {
  Fnv1a h;
  if (const auto* lin = linear()) {
    h.add(std::string_view("linear"));
    h.add(lin->alpha());
    for (const auto a : sim::all_actions()) hash_theta(h, lin->weights(a));
    return h.value();
  }
  const auto* mt = tree();
  h.add(std::string_view("tree"));
  h.add(mt->alpha());
  for (const auto a : sim::all_actions()) {
    for (const auto& n : mt->tree(a).nodes()) {
      h.add(static_cast<std::int64_t>(n.feature));
      h.add(n.threshold);
      h.add(static_cast<std::int64_t>(n.left));
      h.add(static_cast<std::int64_t>(n.right));
      h.add(n.seen);
      hash_theta(h, n.weights);
      for (const auto& s : n.samples) {
        hash_theta(h, s.theta);
        h.add(s.h);
      }
    }
  }
  return h.value();
}

sim::Action select_action(const RewardModel& model, const Theta& theta) {
  int best = 0;
  double best_value = model.predict(theta, sim::Action::from_index(0));
  for (int i = 1; i < sim::kNumActions; ++i) {
    const double v = model.predict(theta, sim::Action::from_index(i));
    if (v > best_value) {
      best = i;
      best_value = v;
    }
  }
  return sim::Action::from_index(best);
}

nlohmann::json model_to_json(const RewardModel& model) {
  nlohmann::json doc = {{"version", kModelFormatVersion}};
  if (const auto* lin = model.linear()) {
    doc["kind"] = "linear";
    doc["alpha"] = lin->alpha();
    nlohmann::json w = nlohmann::json::array();
    for (const auto a : sim::all_actions()) w.push_back(theta_json(lin->weights(a)));
    doc["weights"] = w;
    return doc;
  }
  const auto* mt = model.tree();
  doc["kind"] = "tree";
  doc["alpha"] = mt->alpha();
  doc["params"] = tree_params_json(mt->params());
  nlohmann::json trees = nlohmann::json::array();
  for (const auto a : sim::all_actions()) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : mt->tree(a).nodes()) {
      nlohmann::json samples = nlohmann::json::array();
      for (const auto& s : n.samples) samples.push_back({{"theta", theta_json(s.theta)}, {"h", s.h}});
      nodes.push_back({{"feature", n.feature},
                       {"threshold", n.threshold},
                       {"left", n.left},
                       {"right", n.right},
                       {"depth", n.depth},
                       {"seen", n.seen},
                       {"weights", theta_json(n.weights)},
                       {"samples", samples}});
    }
    trees.push_back(nodes);
  }
  doc["trees"] = trees;
  return doc;
}

RewardModel model_from_json(const nlohmann::json& doc) {
  if (doc.at("version").get<int>() != kModelFormatVersion) {
    throw std::invalid_argument("unsupported model format version");
  }
  const auto kind = doc.at("kind").get<std::string>();
  const double alpha = doc.at("alpha").get<double>();
  if (kind == "linear") {
    LinearRewardModel lin(alpha);
    const auto& w = doc.at("weights");
    if (w.size() != static_cast<std::size_t>(sim::kNumActions)) {
      throw std::invalid_argument("linear model needs 12 weight vectors");
    }
    for (const auto a : sim::all_actions()) {
      lin.mutable_weights(a) = theta_from(w.at(static_cast<std::size_t>(a.index())));
    }
    return RewardModel(std::move(lin));
  }
  if (kind != "tree") throw std::invalid_argument("unknown model kind: " + kind);
  ModelTreeRewardModel mt(alpha, tree_params_from(doc.at("params")));
  const auto& trees = doc.at("trees");
  if (trees.size() != static_cast<std::size_t>(sim::kNumActions)) {
    throw std::invalid_argument("tree model needs 12 trees");
  }
  for (const auto a : sim::all_actions()) {
    auto& nodes = mt.mutable_tree(a).mutable_nodes();
    nodes.clear();
    for (const auto& jn : trees.at(static_cast<std::size_t>(a.index()))) {
      RegressionModelTree::Node n;
      n.feature = jn.at("feature").get<int>();
      n.threshold = jn.at("threshold").get<double>();
      n.left = jn.at("left").get<int>();
      n.right = jn.at("right").get<int>();
      n.depth = jn.at("depth").get<int>();
      n.seen = jn.at("seen").get<std::int64_t>();
      n.weights = theta_from(jn.at("weights"));
      for (const auto& js : jn.at("samples")) {
        n.samples.push_back({theta_from(js.at("theta")), js.at("h").get<double>()});
      }
      nodes.push_back(std::move(n));
    }
    if (nodes.empty()) throw std::invalid_argument("empty tree");
    const int count = static_cast<int>(nodes.size());
    for (const auto& n : nodes) {
      if (n.feature >= features::kThetaSize ||
          (n.feature >= 0 && (n.left <= 0 || n.right <= 0 || n.left >= count ||
                              n.right >= count))) {
        throw std::invalid_argument("malformed tree node");
      }
    }
  }
  return RewardModel(std::move(mt));
}

nlohmann::json model_config_to_json(const ModelConfig& config) {
  return {{"model", config.kind == ModelKind::kLinear ? "linear" : "tree"},
          {"alpha", config.alpha},
          {"tree", tree_params_json(config.tree)}};
}

ModelConfig model_config_from_json(const nlohmann::json& doc) {
  ModelConfig c;
  const auto kind = doc.value("model", std::string("tree"));
  if (kind == "linear") {
    c.kind = ModelKind::kLinear;
  } else if (kind == "tree") {
    c.kind = ModelKind::kTree;
  } else {
    throw std::invalid_argument("unknown model kind: " + kind);
  }
  c.alpha = doc.value("alpha", c.alpha);
  if (doc.contains("tree")) c.tree = tree_params_from(doc.at("tree"));
  return c;
}

}  // namespace tamer::learn

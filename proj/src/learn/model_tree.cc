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

#include "tamer/learn/model_tree.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tamer::learn {

namespace {

double gd_step(Theta& w, const Theta& theta, double h, double alpha) {
  const double delta = h - dot(w, theta);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += alpha * delta * theta[i];
  return delta;
}

}  // namespace

std::optional<SplitChoice> best_split(const std::deque<TreeSample>& samples,
                                      int min_leaf) {
  const std::size_t n = samples.size();
  if (min_leaf < 1 || n < 2 * static_cast<std::size_t>(min_leaf)) return std::nullopt;

  double sum = 0.0, sum_sq = 0.0;
  for (const auto& s : samples) {
    sum += s.h;
    sum_sq += s.h * s.h;
  }
  const double parent_sse = sum_sq - sum * sum / static_cast<double>(n);

  std::optional<SplitChoice> best;
  std::vector<std::size_t> order(n);
  for (int f = 0; f < features::kThetaSize; ++f) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return samples[a].theta[static_cast<std::size_t>(f)] <
             samples[b].theta[static_cast<std::size_t>(f)];
    });
    double left_sum = 0.0, left_sq = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const auto& s = samples[order[i]];
      left_sum += s.h;
      left_sq += s.h * s.h;
      const double v = s.theta[static_cast<std::size_t>(f)];
      const double next = samples[order[i + 1]].theta[static_cast<std::size_t>(f)];
      if (next == v) continue;
      const std::size_t nl = i + 1;
      const std::size_t nr = n - nl;
      if (nl < static_cast<std::size_t>(min_leaf) ||
          nr < static_cast<std::size_t>(min_leaf)) {
        continue;
      }
      const double right_sum = sum - left_sum;
      const double right_sq = sum_sq - left_sq;
      const double sse_l = left_sq - left_sum * left_sum / static_cast<double>(nl);
      const double sse_r = right_sq - right_sum * right_sum / static_cast<double>(nr);
      const double reduction = parent_sse - (sse_l + sse_r);
      if (!best || reduction > best->sse_reduction) {
        best = SplitChoice{f, 0.5 * (v + next), reduction};
      }
    }
  }
  return best;
}

RegressionModelTree::RegressionModelTree() { nodes_.emplace_back(); }

int RegressionModelTree::leaf_of(const Theta& theta) const {
  int i = 0;
  while (nodes_[static_cast<std::size_t>(i)].feature >= 0) {
    const Node& n = nodes_[static_cast<std::size_t>(i)];
    i = theta[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
  }
  return i;
}

double RegressionModelTree::predict(const Theta& theta) const {
  return dot(nodes_[static_cast<std::size_t>(leaf_of(theta))].weights, theta);
}

int RegressionModelTree::leaf_count() const {
  return static_cast<int>(std::count_if(nodes_.begin(), nodes_.end(),
                                        [](const Node& n) { return n.feature < 0; }));
}

double RegressionModelTree::update(const Theta& theta, double h, double alpha,
                                   const TreeParams& params) {
  check_sample(theta, h);
  const int leaf = leaf_of(theta);
  Node& node = nodes_[static_cast<std::size_t>(leaf)];
  const double delta = gd_step(node.weights, theta, h, alpha);
  node.samples.push_back({theta, h});
  if (static_cast<int>(node.samples.size()) > params.buffer_size) {
    node.samples.pop_front();
  }
  ++node.seen;
  if (node.seen % params.split_interval == 0) try_split(leaf, alpha, params);
  return delta;
}

void RegressionModelTree::try_split(int leaf, double alpha,
                                    const TreeParams& params) {
  Node& node = nodes_[static_cast<std::size_t>(leaf)];
  if (node.depth >= params.max_depth) return;
  const auto choice = best_split(node.samples, params.min_leaf);
  if (!choice) return;

  double sum = 0.0, sum_sq = 0.0;
  for (const auto& s : node.samples) {
    sum += s.h;
    sum_sq += s.h * s.h;
  }
  const double parent_sse =
      sum_sq - sum * sum / static_cast<double>(node.samples.size());
  if (!(choice->sse_reduction > 0.0) ||
      choice->sse_reduction < params.min_gain * parent_sse) {
    return;
  }

  Node left, right;
  left.depth = right.depth = node.depth + 1;
  left.weights = right.weights = node.weights;
  for (const auto& s : node.samples) {
    Node& child = s.theta[static_cast<std::size_t>(choice->feature)] <= choice->threshold
                      ? left
                      : right;
    child.samples.push_back(s);
  }
  for (Node* child : {&left, &right}) {
    for (int pass = 0; pass < params.refit_passes; ++pass) {
      for (const auto& s : child->samples) gd_step(child->weights, s.theta, s.h, alpha);
    }
  }
  node.feature = choice->feature;
  node.threshold = choice->threshold;
  node.samples.clear();
  node.left = static_cast<int>(nodes_.size());
  node.right = node.left + 1;
  // `node` is invalidated below.
  nodes_.push_back(std::move(left));
  nodes_.push_back(std::move(right));
}

ModelTreeRewardModel::ModelTreeRewardModel(double alpha, TreeParams params)
    : alpha_(alpha), params_(params) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("learning rate must be positive");
  }
  if (params.split_interval < 1 || params.min_leaf < 1 || params.max_depth < 0 ||
      params.buffer_size < 2 * params.min_leaf || params.refit_passes < 0) {
    throw std::invalid_argument("invalid model tree parameters");
  }
}

double ModelTreeRewardModel::update(const Theta& theta, sim::Action action,
                                    double h) {
  return trees_[static_cast<std::size_t>(action.index())].update(theta, h, alpha_,
                                                                 params_);
}

}  // namespace tamer::learn

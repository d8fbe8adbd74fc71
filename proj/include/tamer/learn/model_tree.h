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

#ifndef TAMER_LEARN_MODEL_TREE_H_
#define TAMER_LEARN_MODEL_TREE_H_

#include <array>
#include <deque>
#include <optional>
#include <vector>

#include "tamer/learn/linear_model.h"

namespace tamer::learn {

struct TreeParams {
  int split_interval = 20;  // samples between split attempts at a leaf
  int min_leaf = 5;
  int max_depth = 6;
  // A split must remove at least this fraction of the leaf's target SSE.
  double min_gain = 0.08;
  int buffer_size = 500;  // recent samples kept per leaf for split search
  // Gradient passes a new child makes over the samples it inherits.
  int refit_passes = 30;
  friend bool operator==(const TreeParams&, const TreeParams&) = default;
};

struct TreeSample {
  Theta theta{};
  double h = 0.0;
  friend bool operator==(const TreeSample&, const TreeSample&) = default;
};

struct SplitChoice {
  int feature = -1;
  double threshold = 0.0;
  double sse_reduction = 0.0;
};

// Best axis-aligned split of `samples` by reduction of the constant-fit SSE.
// Thresholds are midpoints between consecutive distinct feature values; both
// sides must hold at least `min_leaf` samples. Ties go to the lower feature
// index, then the lower threshold.
std::optional<SplitChoice> best_split(const std::deque<TreeSample>& samples,
                                      int min_leaf);

// Incrementally grown regression tree whose leaves are linear models over
// the full Theta, each trained by the same gradient step as the linear model.
class RegressionModelTree {
 public:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int depth = 0;
    Theta weights{};
    std::deque<TreeSample> samples;
    std::int64_t seen = 0;
    friend bool operator==(const Node&, const Node&) = default;
  };

  RegressionModelTree();

  double predict(const Theta& theta) const;
  // Gradient step at the routed leaf, then maybe split it. Returns delta.
  double update(const Theta& theta, double h, double alpha,
                const TreeParams& params);

  int leaf_of(const Theta& theta) const;
  const std::vector<Node>& nodes() const { return nodes_; }
  std::vector<Node>& mutable_nodes() { return nodes_; }
  int leaf_count() const;

  friend bool operator==(const RegressionModelTree&, const RegressionModelTree&) = default;

 private:
  void try_split(int leaf, double alpha, const TreeParams& params);

  std::vector<Node> nodes_;
};

class ModelTreeRewardModel {
 public:
  explicit ModelTreeRewardModel(double alpha = kDefaultAlpha,
                                TreeParams params = {});

  double predict(const Theta& theta, sim::Action action) const {
    return trees_[static_cast<std::size_t>(action.index())].predict(theta);
  }
  double update(const Theta& theta, sim::Action action, double h);

  double alpha() const { return alpha_; }
  const TreeParams& params() const { return params_; }
  const RegressionModelTree& tree(sim::Action a) const {
    return trees_[static_cast<std::size_t>(a.index())];
  }
  RegressionModelTree& mutable_tree(sim::Action a) {
    return trees_[static_cast<std::size_t>(a.index())];
  }

  friend bool operator==(const ModelTreeRewardModel&, const ModelTreeRewardModel&) = default;

 private:
  double alpha_;
  TreeParams params_;
  std::array<RegressionModelTree, sim::kNumActions> trees_;
};

}  // namespace tamer::learn

#endif  // TAMER_LEARN_MODEL_TREE_H_

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

#ifndef TAMER_LEARN_LEARNER_H_
#define TAMER_LEARN_LEARNER_H_

#include <deque>
#include <vector>

#include "tamer/learn/credit.h"
#include "tamer/learn/reward_model.h"

namespace tamer::learn {

struct LearnerConfig {
  ModelConfig model;
  DelayPdf pdf = DelayPdf::uniform(0.2, 0.8);
  double window_seconds = 4.0;  // steps older than this get no credit
};

struct FinalizedLabel {
  std::int64_t index = 0;
  double h = 0.0;     // label the model learned from (0 if none)
  bool applied = false;
};

// Online TAMER learner. Steps enter as they complete, feedback is credited
// over the delay pdf, and each step's aggregate label is learned from once,
// when no future event can still credit it (step end + pdf upper bound).
// Live training and log replay both drive this class, so a replay with the
// logged labels performs the same updates in the same order.
class TamerLearner {
 public:
  explicit TamerLearner(const LearnerConfig& config);

  sim::Action act(const Theta& theta) const { return select_action(model_, theta); }

  // Steps must be pushed in order, contiguous in time.
  void push_step(std::int64_t index, const Theta& theta, sim::Action action,
                 TimeUs start, TimeUs end);
  // Presets a step's label (replay). The step must still be pending.
  void set_label(std::int64_t index, double h);

  // Credits one keypress. Ignored (returns no credits) when not training.
  std::vector<StepCredit> add_feedback(const FeedbackEvent& event);

  // Learns from every pending step whose end + pdf.hi <= now, oldest first.
  std::vector<FinalizedLabel> finalize_until(TimeUs now);
  // Finalizes everything still pending.
  std::vector<FinalizedLabel> flush();

  void set_training(bool on) { training_ = on; }
  bool training() const { return training_; }

  const RewardModel& model() const { return model_; }
  const LearnerConfig& config() const { return config_; }
  std::int64_t updates() const { return updates_; }

 private:
  FinalizedLabel finalize_front_pending();

  LearnerConfig config_;
  RewardModel model_;
  StepWindow window_;
  std::deque<double> labels_;     // parallel to window_
  std::deque<bool> finalized_;    // parallel to window_
  std::size_t first_pending_ = 0; // offset into window_
  bool training_ = true;
  std::int64_t updates_ = 0;
};

}  // namespace tamer::learn

#endif  // TAMER_LEARN_LEARNER_H_

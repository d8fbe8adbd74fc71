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

#ifndef TAMER_HARNESS_REPORT_H_
#define TAMER_HARNESS_REPORT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "tamer/channels/channel.h"
#include "tamer/harness/config.h"
#include "tamer/harness/experiment.h"
#include "tamer/harness/stats.h"
#include "tamer/harness/training_log.h"

namespace tamer::harness {

// One channel's curves aggregated over a set of logs.
struct ChannelSummary {
  std::string channel;
  std::vector<std::int64_t> steps;
  std::vector<double> mean;  // across logs, per checkpoint
  std::vector<double> stdev;  // sample std across logs, 0 for a single log
  std::vector<double> final_means;  // per log, last checkpoint
  std::vector<double> final_games;  // last-checkpoint game scores, log-major
};

struct ComparisonReport {
  std::size_t num_logs = 0;
  std::vector<ChannelSummary> channels;  // in request order
};

// Replays every log under every channel and evaluates every checkpoint.
// Work is spread over (log, channel) pairs; results do not depend on the
// thread count.
ComparisonReport compare_channels(const std::vector<TrainingLog>& logs,
                                  const std::vector<channels::ChannelSpec>& channels,
                                  const ExperimentConfig& config, int threads = 0);

// Same aggregation for curves that were already computed, curves[log][channel].
ComparisonReport summarize_curves(const std::vector<std::vector<LearningCurve>>& curves);

// Header step,channel,mean_score,std_score; rows channel-major then by step.
std::string curves_csv(const ComparisonReport& report);

struct OrderingTest {
  double spearman = 0.0;   // channel position vs. mean final score
  TTestResult last_vs_first;  // paired over logs
};

// Channels are taken to be listed from least to most reliable. Needs at
// least 2 channels and 2 logs.
OrderingTest ordering_test(const ComparisonReport& report);

struct ScoreDistribution {
  Histogram histogram;
  std::vector<double> modes;
  double band_fraction = 0.0;  // games scoring inside (band_lo, band_hi)
  double run_band_fraction = 0.0;  // per-run means inside the band
};

inline constexpr double kHistogramBinWidth = 10.0;
inline constexpr double kBandLo = 40.0;
inline constexpr double kBandHi = 90.0;

// Final-checkpoint game scores pooled over all channels and logs.
ScoreDistribution score_distribution(const ComparisonReport& report);

nlohmann::json report_json(const ComparisonReport& report);

}  // namespace tamer::harness

#endif  // TAMER_HARNESS_REPORT_H_

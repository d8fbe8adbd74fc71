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

#include "tamer/harness/report.h"

#include <cstdio>
#include <stdexcept>

#include "tamer/harness/work_pool.h"

namespace tamer::harness {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

ComparisonReport summarize_curves(const std::vector<std::vector<LearningCurve>>& curves) {
  ComparisonReport report;
  report.num_logs = curves.size();
  if (curves.empty()) return report;
  const std::size_t nc = curves.front().size();
  for (const auto& row : curves) {
    if (row.size() != nc) throw std::invalid_argument("ragged curve table");
  }
  for (std::size_t c = 0; c < nc; ++c) {
    ChannelSummary s;
    s.channel = curves.front()[c].channel;
    const auto& first = curves.front()[c].checkpoints;
    for (const auto& cp : first) s.steps.push_back(cp.step);
    for (std::size_t k = 0; k < s.steps.size(); ++k) {
      std::vector<double> xs;
      for (const auto& row : curves) {
        const auto& cps = row[c].checkpoints;
        if (cps.size() != s.steps.size() || cps[k].step != s.steps[k] || !cps[k].eval) {
          throw std::invalid_argument("curves disagree on checkpoints or lack evaluations");
        }
        xs.push_back(cps[k].eval->mean);
      }
      s.mean.push_back(mean_of(xs));
      s.stdev.push_back(sample_std(xs));
    }
    if (!s.steps.empty()) {
      for (const auto& row : curves) {
        const auto& last = *row[c].checkpoints.back().eval;
        s.final_means.push_back(last.mean);
        s.final_games.insert(s.final_games.end(), last.scores.begin(), last.scores.end());
      }
    }
    report.channels.push_back(std::move(s));
  }
  return report;
}

ComparisonReport compare_channels(const std::vector<TrainingLog>& logs,
                                  const std::vector<channels::ChannelSpec>& channels,
                                  const ExperimentConfig& config, int threads) {
  if (logs.empty()) throw std::invalid_argument("compare_channels needs at least one log");
  if (channels.empty()) throw std::invalid_argument("compare_channels needs at least one channel");
  config.validate();
  const std::size_t nc = channels.size();
  auto flat = parallel_map(logs.size() * nc, threads, [&](std::size_t i) {
    return run_replay_training(logs[i / nc], channels[i % nc], config, ReplayOptions{});
  });
  std::vector<std::vector<LearningCurve>> table(logs.size());
  for (std::size_t i = 0; i < flat.size(); ++i) table[i / nc].push_back(std::move(flat[i]));
  return summarize_curves(table);
}

std::string curves_csv(const ComparisonReport& report) {
  std::string out = "step,channel,mean_score,std_score\n";
  for (const auto& s : report.channels) {
    for (std::size_t k = 0; k < s.steps.size(); ++k) {
      out += std::to_string(s.steps[k]) + "," + csv_field(s.channel) + "," +
             fixed6(s.mean[k]) + "," + fixed6(s.stdev[k]) + "\n";
    }
  }
  return out;
}

OrderingTest ordering_test(const ComparisonReport& report) {
  if (report.channels.size() < 2 || report.num_logs < 2) {
    throw std::invalid_argument("ordering test needs 2 channels and 2 logs");
  }
  std::vector<double> position, score;
  for (std::size_t c = 0; c < report.channels.size(); ++c) {
    position.push_back(static_cast<double>(c));
    score.push_back(mean_of(report.channels[c].final_means));
  }
  OrderingTest t;
  t.spearman = spearman_rho(position, score);
  t.last_vs_first = paired_t_test_greater(report.channels.back().final_means,
                                          report.channels.front().final_means);
  return t;
}

ScoreDistribution score_distribution(const ComparisonReport& report) {
  std::vector<double> games, runs;
  for (const auto& s : report.channels) {
    games.insert(games.end(), s.final_games.begin(), s.final_games.end());
    runs.insert(runs.end(), s.final_means.begin(), s.final_means.end());
  }
  ScoreDistribution d;
  d.histogram = make_histogram(games, kHistogramBinWidth);
  // Ignore bins that are noise relative to the pool size.
  d.modes = histogram_modes(d.histogram, std::max<std::size_t>(1, games.size() / 50));
  d.band_fraction = band_fraction(games, kBandLo, kBandHi);
  d.run_band_fraction = band_fraction(runs, kBandLo, kBandHi);
  return d;
}

nlohmann::json report_json(const ComparisonReport& report) {
  nlohmann::json doc;
  doc["logs"] = report.num_logs;
  nlohmann::json chans = nlohmann::json::array();
  for (const auto& s : report.channels) {
    nlohmann::json c;
    c["channel"] = s.channel;
    c["steps"] = s.steps;
    c["mean_score"] = s.mean;
    c["std_score"] = s.stdev;
    c["final_means"] = s.final_means;
    c["final_mean"] = mean_of(s.final_means);
    c["final_std"] = sample_std(s.final_means);
    chans.push_back(std::move(c));
  }
  doc["channels"] = std::move(chans);

  const auto dist = score_distribution(report);
  if (!dist.histogram.counts.empty()) {
    doc["histogram"] = {{"lo", dist.histogram.lo},
                        {"bin_width", dist.histogram.bin_width},
                        {"counts", dist.histogram.counts},
                        {"modes", dist.modes},
                        {"band", {kBandLo, kBandHi}},
                        {"band_fraction_games", dist.band_fraction},
                        {"band_fraction_runs", dist.run_band_fraction}};
  }
  if (report.channels.size() >= 2 && report.num_logs >= 2) {
    const auto t = ordering_test(report);
    doc["ordering"] = {{"spearman", t.spearman},
                       {"last_vs_first", {{"mean_diff", t.last_vs_first.mean_diff},
                                          {"t", t.last_vs_first.t},
                                          {"df", t.last_vs_first.df},
                                          {"p_one_sided", t.last_vs_first.p_value}}}};
  }
  return doc;
}

}  // namespace tamer::harness

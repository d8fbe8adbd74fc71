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

#ifndef TAMER_HARNESS_TRAINING_LOG_H_
#define TAMER_HARNESS_TRAINING_LOG_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tamer/features/features.h"
#include "tamer/learn/credit.h"

namespace tamer::harness {

using learn::TimeUs;

// Seconds with exactly six decimals, e.g. "12.041667".
std::string format_seconds(TimeUs t);
// Inverse of format_seconds; throws std::invalid_argument on malformed text.
TimeUs parse_seconds(const std::string& text);

// Start time of step k at a fixed tick rate.
TimeUs step_time(std::int64_t k, double tick_rate);

struct LoggedEvent {
  double value = 1.0;
  TimeUs time = 0;                      // server receive / emission time
  std::optional<TimeUs> client_time;    // as reported by a browser client
  friend bool operator==(const LoggedEvent&, const LoggedEvent&) = default;
};

struct StepRecord {
  std::int64_t step = 0;
  features::Theta theta{};
  int action = 0;
  TimeUs start = 0;
  TimeUs end = 0;
  std::int64_t score_delta = 0;  // hundredths of a point
  double h = 0.0;                // label the learner used, 0 if none
  std::vector<LoggedEvent> events;  // presses with start < time <= end
  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct LogHeader {
  std::uint64_t env_seed = 0;
  std::uint64_t trainer_seed = 0;
  std::uint64_t level_seed = 121;
  std::vector<std::string> conditions;
  double tick_rate = 24.0;
  double pdf_lo = 0.2;
  double pdf_hi = 0.8;
  std::string source = "simulated";
  friend bool operator==(const LogHeader&, const LogHeader&) = default;
};

struct TrainingLog {
  LogHeader header;
  std::vector<StepRecord> steps;
  friend bool operator==(const TrainingLog&, const TrainingLog&) = default;
};

nlohmann::json header_to_json(const LogHeader& h);
LogHeader header_from_json(const nlohmann::json& doc);
nlohmann::json record_to_json(const StepRecord& r);
StepRecord record_from_json(const nlohmann::json& doc);

// JSONL: one header line, then one record per line.
void write_log(std::ostream& out, const TrainingLog& log);
TrainingLog read_log(std::istream& in);
void save_log(const std::string& path, const TrainingLog& log);
TrainingLog load_log(const std::string& path);

// Throws std::invalid_argument if indices are not 0..n-1, times are not
// contiguous and increasing, or an event lies outside its step.
void validate_log(const TrainingLog& log);

std::vector<double> labels_of(const TrainingLog& log);

}  // namespace tamer::harness

#endif  // TAMER_HARNESS_TRAINING_LOG_H_

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

#include "tamer/harness/training_log.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace tamer::harness {

using nlohmann::json;

std::string format_seconds(TimeUs t) {
  const bool neg = t < 0;
  const std::uint64_t a = neg ? static_cast<std::uint64_t>(-(t + 1)) + 1
                              : static_cast<std::uint64_t>(t);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%llu.%06llu", neg ? "-" : "",
                static_cast<unsigned long long>(a / 1000000),
                static_cast<unsigned long long>(a % 1000000));
  return buf;
}

TimeUs parse_seconds(const std::string& text) {
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && text[i] == '-') {
    neg = true;
    ++i;
  }
  const auto dot = text.find('.', i);
  if (dot == std::string::npos || dot == i || text.size() - dot - 1 != 6) {
    throw std::invalid_argument("time must have six decimals: " + text);
  }
  TimeUs whole = 0;
  for (std::size_t k = i; k < dot; ++k) {
    if (text[k] < '0' || text[k] > '9') throw std::invalid_argument("bad time: " + text);
    whole = whole * 10 + (text[k] - '0');
  }
  TimeUs frac = 0;
  for (std::size_t k = dot + 1; k < text.size(); ++k) {
    if (text[k] < '0' || text[k] > '9') throw std::invalid_argument("bad time: " + text);
    frac = frac * 10 + (text[k] - '0');
  }
  const TimeUs t = whole * 1000000 + frac;
  return neg ? -t : t;
}

TimeUs step_time(std::int64_t k, double tick_rate) {
  return static_cast<TimeUs>(std::llround(static_cast<double>(k) * 1e6 / tick_rate));
}

json header_to_json(const LogHeader& h) {
  return {{"header",
           {{"env_seed", h.env_seed},
            {"trainer_seed", h.trainer_seed},
            {"level_seed", h.level_seed},
            {"conditions", h.conditions},
            {"tick_rate", h.tick_rate},
            {"pdf", {{"lo", h.pdf_lo}, {"hi", h.pdf_hi}}},
            {"source", h.source}}}};
}

LogHeader header_from_json(const json& doc) {
  const auto& d = doc.at("header");
  LogHeader h;
  h.env_seed = d.at("env_seed").get<std::uint64_t>();
  h.trainer_seed = d.at("trainer_seed").get<std::uint64_t>();
  h.level_seed = d.value("level_seed", h.level_seed);
  h.conditions = d.value("conditions", std::vector<std::string>{});
  h.tick_rate = d.at("tick_rate").get<double>();
  h.pdf_lo = d.at("pdf").at("lo").get<double>();
  h.pdf_hi = d.at("pdf").at("hi").get<double>();
  h.source = d.value("source", h.source);
  return h;
}

json record_to_json(const StepRecord& r) {
  json events = json::array();
  for (const auto& e : r.events) {
    json ev = {{"value", e.value}, {"time", format_seconds(e.time)}};
    if (e.client_time) ev["t_client"] = format_seconds(*e.client_time);
    events.push_back(std::move(ev));
  }
  json theta = json::array();
  for (double v : r.theta) theta.push_back(v);
  return {{"step", r.step},
          {"theta", std::move(theta)},
          {"action", r.action},
          {"t_start", format_seconds(r.start)},
          {"t_end", format_seconds(r.end)},
          {"score_delta", static_cast<double>(r.score_delta) / 100.0},
          {"h", r.h},
          {"events", std::move(events)}};
}

StepRecord record_from_json(const json& doc) {
  StepRecord r;
  r.step = doc.at("step").get<std::int64_t>();
  const auto& theta = doc.at("theta");
  if (!theta.is_array() || theta.size() != r.theta.size()) {
    throw std::invalid_argument("theta must have 23 entries");
  }
  for (std::size_t i = 0; i < r.theta.size(); ++i) r.theta[i] = theta[i].get<double>();
  r.action = doc.at("action").get<int>();
  if (r.action < 0 || r.action >= sim::kNumActions) {
    throw std::invalid_argument("action out of range");
  }
  r.start = parse_seconds(doc.at("t_start").get<std::string>());
  r.end = parse_seconds(doc.at("t_end").get<std::string>());
  r.score_delta = std::llround(doc.at("score_delta").get<double>() * 100.0);
  r.h = doc.at("h").get<double>();
  for (const auto& e : doc.at("events")) {
    LoggedEvent ev;
    ev.value = e.at("value").get<double>();
    if (ev.value != 1.0 && ev.value != -1.0) throw std::invalid_argument("event value must be +-1");
    ev.time = parse_seconds(e.at("time").get<std::string>());
    if (e.contains("t_client")) ev.client_time = parse_seconds(e.at("t_client").get<std::string>());
    r.events.push_back(ev);
  }
  return r;
}

void write_log(std::ostream& out, const TrainingLog& log) {
  out << header_to_json(log.header).dump() << '\n';
  for (const auto& r : log.steps) out << record_to_json(r).dump() << '\n';
}

TrainingLog read_log(std::istream& in) {
  TrainingLog log;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto doc = json::parse(line);
    if (!have_header) {
      log.header = header_from_json(doc);
      have_header = true;
    } else {
      log.steps.push_back(record_from_json(doc));
    }
  }
  if (!have_header) throw std::invalid_argument("log has no header line");
  validate_log(log);
  return log;
}

void save_log(const std::string& path, const TrainingLog& log) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write log: " + path);
  write_log(out, log);
}

TrainingLog load_log(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open log: " + path);
  return read_log(in);
}

void validate_log(const TrainingLog& log) {
  for (std::size_t i = 0; i < log.steps.size(); ++i) {
    const auto& r = log.steps[i];
    if (r.step != static_cast<std::int64_t>(i)) {
      throw std::invalid_argument("step indices must run 0..n-1");
    }
    if (r.end <= r.start) throw std::invalid_argument("step must end after it starts");
    if (i > 0 && log.steps[i - 1].end != r.start) {
      throw std::invalid_argument("steps must be contiguous in time");
    }
    for (const auto& e : r.events) {
      if (e.time <= r.start || e.time > r.end) {
        throw std::invalid_argument("event outside its step at step " + std::to_string(i));
      }
    }
  }
}

std::vector<double> labels_of(const TrainingLog& log) {
  std::vector<double> out;
  out.reserve(log.steps.size());
  for (const auto& r : log.steps) out.push_back(r.h);
  return out;
}

}  // namespace tamer::harness

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

#include "tamer/channels/channel.h"

#include <charconv>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace tamer::channels {

namespace {

double parse_double(std::string_view key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) {
    throw std::invalid_argument("bad value for " + std::string(key) + ": " + v);
  }
  return out;
}

std::uint64_t parse_seed(const std::string& v) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw std::invalid_argument("bad seed: " + v);
  }
  return out;
}

std::string format_prob(double p) {
  std::ostringstream os;
  os << p;
  return os.str();
}

}  // namespace

ChannelSpec ChannelSpec::noisy(double p_pos, double p_neg, std::uint64_t seed) {
  auto ok = [](double p) { return p >= 0.5 && p <= 1.0; };
  if (!ok(p_pos) || !ok(p_neg)) {
    throw std::invalid_argument("noisy channel accuracies must lie in [0.5, 1]");
  }
  return {ChannelKind::kNoisy, p_pos, p_neg, seed};
}

ChannelSpec parse_channel(std::string_view text) {
  const auto colon = text.find(':');
  const std::string kind(text.substr(0, colon));
  std::map<std::string, std::string> args;
  if (colon != std::string_view::npos) {
    std::string rest(text.substr(colon + 1));
    std::istringstream is(rest);
    std::string item;
    while (std::getline(is, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("bad channel argument: " + item);
      args[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = args.find(key);
    if (it == args.end()) return std::nullopt;
    std::string v = it->second;
    args.erase(it);
    return v;
  };
  const auto seed_arg = take("seed");
  const std::uint64_t seed = seed_arg ? parse_seed(*seed_arg) : 0;

  ChannelSpec spec;
  if (kind == "keypress") {
    spec = ChannelSpec::keypress();
  } else if (kind == "binary") {
    spec = ChannelSpec::binary();
  } else if (kind == "random") {
    spec = ChannelSpec::random(seed);
  } else if (kind == "noisy") {
    double p_pos = 1.0, p_neg = 1.0;
    if (auto preset = take("preset")) {
      bool found = false;
      for (const auto& p : kConditionPresets) {
        if (p.name == *preset) {
          p_pos = p.p_pos;
          p_neg = p.p_neg;
          found = true;
        }
      }
      if (!found) throw std::invalid_argument("unknown preset: " + *preset);
    }
    if (auto p = take("p")) p_pos = p_neg = parse_double("p", *p);
    if (auto p = take("ppos")) p_pos = parse_double("ppos", *p);
    if (auto p = take("pneg")) p_neg = parse_double("pneg", *p);
    spec = ChannelSpec::noisy(p_pos, p_neg, seed);
  } else {
    throw std::invalid_argument("unknown channel kind: " + kind);
  }
  if (!args.empty()) {
    throw std::invalid_argument("unexpected channel argument: " + args.begin()->first);
  }
  return spec;
}

std::string to_string(const ChannelSpec& spec) {
  switch (spec.kind) {
    case ChannelKind::kKeypress: return "keypress";
    case ChannelKind::kBinary: return "binary";
    case ChannelKind::kRandom: return "random:seed=" + std::to_string(spec.seed);
    case ChannelKind::kNoisy:
      return "noisy:ppos=" + format_prob(spec.p_pos) + ",pneg=" +
             format_prob(spec.p_neg) + ",seed=" + std::to_string(spec.seed);
  }
  return "unknown";
}

double to_binary(double h) {
  if (h == 0.0) throw std::invalid_argument("cannot binarize a zero label");
  return h > 0.0 ? 1.0 : -1.0;
}

double corrupt(double label, const ChannelSpec& spec, Rng& rng) {
  const double keep = label > 0.0 ? spec.p_pos : spec.p_neg;
  return rng.bernoulli(keep) ? label : -label;
}

double random_label(Rng& rng) { return rng.bernoulli(0.5) ? 1.0 : -1.0; }

std::vector<double> relabel(const std::vector<double>& labels, const ChannelSpec& spec) {
  if (spec.kind == ChannelKind::kKeypress) return labels;
  if (spec.kind == ChannelKind::kNoisy) {
    // Revalidate: the struct can be built without the factory.
    (void)ChannelSpec::noisy(spec.p_pos, spec.p_neg, spec.seed);
  }
  Rng rng(spec.seed);
  std::vector<double> out(labels.size(), 0.0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double h = labels[i];
    if (h == 0.0) continue;
    switch (spec.kind) {
      case ChannelKind::kBinary: out[i] = to_binary(h); break;
      case ChannelKind::kNoisy: out[i] = corrupt(to_binary(h), spec, rng); break;
      case ChannelKind::kRandom: out[i] = random_label(rng); break;
      case ChannelKind::kKeypress: out[i] = h; break;
    }
  }
  return out;
}

}  // namespace tamer::channels

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

#ifndef TAMER_CHANNELS_CHANNEL_H_
#define TAMER_CHANNELS_CHANNEL_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tamer/common/rng.h"

namespace tamer::channels {

enum class ChannelKind { kKeypress, kBinary, kNoisy, kRandom };

// How logged labels are transformed before replay training.
struct ChannelSpec {
  ChannelKind kind = ChannelKind::kKeypress;
  double p_pos = 1.0;  // noisy only: P(+1 stays +1)
  double p_neg = 1.0;  // noisy only: P(-1 stays -1)
  std::uint64_t seed = 0;

  static ChannelSpec keypress() { return {}; }
  static ChannelSpec binary() { return {ChannelKind::kBinary}; }
  static ChannelSpec random(std::uint64_t seed) {
    return {ChannelKind::kRandom, 0.5, 0.5, seed};
  }
  // Throws std::invalid_argument unless both probabilities are in [0.5, 1].
  static ChannelSpec noisy(double p_pos, double p_neg, std::uint64_t seed);

  friend bool operator==(const ChannelSpec&, const ChannelSpec&) = default;
};

// Per-class accuracies of the facial-expression feedback classifier for the
// four training conditions.
struct ConditionPreset {
  std::string_view name;
  double p_pos;
  double p_neg;
};
inline constexpr ConditionPreset kConditionPresets[] = {
    {"control", 0.62, 0.69},
    {"facial-expression", 0.65, 0.73},
    {"competitive", 0.75, 0.70},
    {"competitive-facial-expression", 0.79, 0.75},
};

// Parses "keypress", "binary", "random[:seed=N]",
// "noisy:ppos=P,pneg=Q[,seed=N]", "noisy:p=P[,seed=N]" or
// "noisy:preset=NAME[,seed=N]".
ChannelSpec parse_channel(std::string_view text);
std::string to_string(const ChannelSpec& spec);

// sign(h). Throws std::invalid_argument for h == 0.
double to_binary(double h);

// Keeps +1 with probability p_pos and -1 with p_neg, otherwise flips.
double corrupt(double label, const ChannelSpec& spec, Rng& rng);

// Fair coin; never looks at the true label.
double random_label(Rng& rng);

// Applies the channel to a sequence of labels: zeros stay zero (unlabeled
// steps), nonzero labels are transformed in order with one RNG stream seeded
// with spec.seed.
std::vector<double> relabel(const std::vector<double>& labels, const ChannelSpec& spec);

}  // namespace tamer::channels

#endif  // TAMER_CHANNELS_CHANNEL_H_

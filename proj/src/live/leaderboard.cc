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

#include "tamer/live/leaderboard.h"

#include <algorithm>
#include <stdexcept>

#include "tamer/sim/world.h"

namespace tamer::live {

std::string Leaderboard::join(const std::string& group, const std::string& session_id,
                              const std::string& name) {
  std::lock_guard lock(mu_);
  auto& members = groups_[group];
  const auto taken = [&](const std::string& n) {
    return std::any_of(members.begin(), members.end(),
                       [&](const Member& m) { return m.name == n; });
  };
  std::string display = name;
  for (int k = 2; taken(display); ++k) display = name + "-" + std::to_string(k);
  members.push_back({session_id, display, 0, seq_++});
  return display;
}

void Leaderboard::leave(const std::string& group, const std::string& session_id) {
  std::lock_guard lock(mu_);
  auto it = groups_.find(group);
  if (it == groups_.end()) return;
  std::erase_if(it->second, [&](const Member& m) { return m.session_id == session_id; });
  if (it->second.empty()) groups_.erase(it);
}

std::vector<LeaderboardEntry> Leaderboard::report_game(const std::string& group,
                                                       const std::string& session_id,
                                                       std::int64_t score) {
  std::lock_guard lock(mu_);
  auto it = groups_.find(group);
  if (it == groups_.end()) throw std::invalid_argument("unknown group: " + group);
  for (auto& m : it->second) {
    if (m.session_id == session_id) {
      m.score = score;
      m.achieved = seq_++;
      return standings_locked(group);
    }
  }
  throw std::invalid_argument("session not in group: " + session_id);
}

std::vector<LeaderboardEntry> Leaderboard::standings(const std::string& group) const {
  std::lock_guard lock(mu_);
  return standings_locked(group);
}

std::vector<LeaderboardEntry> Leaderboard::standings_locked(const std::string& group) const {
  std::vector<LeaderboardEntry> out;
  auto it = groups_.find(group);
  if (it == groups_.end()) return out;
  auto members = it->second;
  std::sort(members.begin(), members.end(), [](const Member& a, const Member& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.achieved < b.achieved;
  });
  int rank = 1;
  for (const auto& m : members) out.push_back({m.session_id, m.name, m.score, rank++});
  return out;
}

std::vector<std::string> Leaderboard::members(const std::string& group) const {
  std::lock_guard lock(mu_);
  std::vector<std::string> out;
  auto it = groups_.find(group);
  if (it == groups_.end()) return out;
  for (const auto& m : it->second) out.push_back(m.session_id);
  return out;
}

nlohmann::json leaderboard_json(const std::vector<LeaderboardEntry>& entries) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : entries) {
    rows.push_back({{"rank", e.rank},
                    {"name", e.name},
                    {"session", e.session_id},
                    {"score", sim::to_points(e.score)}});
  }
  return rows;
}

}  // namespace tamer::live

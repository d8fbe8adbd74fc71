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

#ifndef TAMER_LIVE_LEADERBOARD_H_
#define TAMER_LIVE_LEADERBOARD_H_

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "json.hpp"

namespace tamer::live {

struct LeaderboardEntry {
  std::string session_id;
  std::string name;
  std::int64_t score = 0;  // last game, hundredths
  int rank = 0;
  friend bool operator==(const LeaderboardEntry&, const LeaderboardEntry&) = default;
};

// Competitive groups. The only state sessions share; every call takes the
// registry lock, so updates are applied one at a time.
class Leaderboard {
 public:
  // Adds a member with score 0 and returns its display name, suffixed
  // ("ann-2", "ann-3", ...) if the group already uses `name`.
  std::string join(const std::string& group, const std::string& session_id,
                   const std::string& name);
  void leave(const std::string& group, const std::string& session_id);
  // Records a finished game and returns the re-sorted standings.
  std::vector<LeaderboardEntry> report_game(const std::string& group,
                                            const std::string& session_id,
                                            std::int64_t score);
  // Score descending; equal scores keep the order they were reached in.
  std::vector<LeaderboardEntry> standings(const std::string& group) const;
  std::vector<std::string> members(const std::string& group) const;

 private:
  struct Member {
    std::string session_id;
    std::string name;
    std::int64_t score = 0;
    std::uint64_t achieved = 0;  // registry-wide sequence number
  };
  std::vector<LeaderboardEntry> standings_locked(const std::string& group) const;

  mutable std::mutex mu_;
  std::map<std::string, std::vector<Member>> groups_;
  std::uint64_t seq_ = 0;
};

nlohmann::json leaderboard_json(const std::vector<LeaderboardEntry>& entries);

}  // namespace tamer::live

#endif  // TAMER_LIVE_LEADERBOARD_H_

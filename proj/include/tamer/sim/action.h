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

#ifndef TAMER_SIM_ACTION_H_
#define TAMER_SIM_ACTION_H_

#include <array>
#include <stdexcept>
#include <string>

namespace tamer::sim {

enum class Direction { kLeft = 0, kNone = 1, kRight = 2 };

inline constexpr int kNumActions = 12;

// One of the 12 combined (direction, jump, sprint) actions. Indices are
// direction-major, then jump, then sprint: index = 4*dir + 2*jump + sprint.
class Action {
 public:
  constexpr Action() = default;
  constexpr Action(Direction dir, bool jump, bool sprint)
      : index_(4 * static_cast<int>(dir) + 2 * (jump ? 1 : 0) +
               (sprint ? 1 : 0)) {}

  static Action from_index(int index) {
    if (index < 0 || index >= kNumActions) {
      throw std::invalid_argument("action index out of range: " +
                                  std::to_string(index));
    }
    Action a;
    a.index_ = index;
    return a;
  }

  constexpr int index() const { return index_; }
  constexpr Direction direction() const {
    return static_cast<Direction>(index_ / 4);
  }
  constexpr bool jump() const { return (index_ / 2) % 2 == 1; }
  constexpr bool sprint() const { return index_ % 2 == 1; }

  friend constexpr bool operator==(Action a, Action b) {
    return a.index_ == b.index_;
  }

  std::string to_string() const {
    static constexpr const char* kDir[] = {"left", "none", "right"};
    std::string s = kDir[static_cast<int>(direction())];
    if (jump()) s += "+jump";
    if (sprint()) s += "+sprint";
    return s;
  }

 private:
  int index_ = 0;
};

inline std::array<Action, kNumActions> all_actions() {
  std::array<Action, kNumActions> out;
  for (int i = 0; i < kNumActions; ++i) out[i] = Action::from_index(i);
  return out;
}

}  // namespace tamer::sim

#endif  // TAMER_SIM_ACTION_H_

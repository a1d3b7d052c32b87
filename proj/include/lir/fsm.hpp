// Copyright 2026 The lir Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Search-strategy controller. Three working states choose how aggressively
// neighbors are generated; End is absorbing.
//
//   state           Changed              NothingChanged
//   NoSearch        Search, k=0          NoSearch, k+1
//   Search          SearchPlusPlus, k=0  NoSearch, k=0
//   SearchPlusPlus  Search, k=0          SearchPlusPlus, k=0
//
// Every step increments the iteration counter i; afterwards the machine
// enters End when k >= streak_threshold or i >= max_iterations.

#pragma once

#include <cstddef>
#include <string_view>

namespace lir {

enum class SearchState { no_search, search, search_plus_plus, end };
enum class StepEvent { changed, nothing_changed };

std::string_view to_string(SearchState state);
std::string_view to_string(StepEvent event);
SearchState parse_search_state(std::string_view name);

struct FsmConfig {
  std::size_t max_iterations = 8;
  std::size_t streak_threshold = 2;

  /// Both limits must be at least 1; throws ConfigError.
  void validate() const;
};

struct FsmSnapshot {
  SearchState state = SearchState::no_search;
  std::size_t iteration = 0;         // i
  std::size_t no_change_streak = 0;  // k
  std::size_t max_iterations = 8;
  std::size_t streak_threshold = 2;

  bool terminated() const { return state == SearchState::end; }
  bool operator==(const FsmSnapshot&) const = default;
};

FsmSnapshot initial(const FsmConfig& config = {});

/// Throws SteppedTerminated when `snapshot` is already in End.
FsmSnapshot step(const FsmSnapshot& snapshot, StepEvent event);

}  // namespace lir

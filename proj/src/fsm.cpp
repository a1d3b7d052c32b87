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

#include "lir/fsm.hpp"

#include <string>

#include "lir/errors.hpp"

namespace lir {

std::string_view to_string(SearchState state) {
  switch (state) {
    case SearchState::no_search:
      return "NoSearch";
    case SearchState::search:
      return "Search";
    case SearchState::search_plus_plus:
      return "SearchPlusPlus";
    case SearchState::end:
      break;
  }
  return "End";
}

std::string_view to_string(StepEvent event) {
  return event == StepEvent::changed ? "Changed" : "NothingChanged";
}

SearchState parse_search_state(std::string_view name) {
  for (auto s : {SearchState::no_search, SearchState::search, SearchState::search_plus_plus, SearchState::end}) {
    if (to_string(s) == name) return s;
  }
  throw ConfigError("unknown search state '" + std::string(name) + "'");
}

void FsmConfig::validate() const {
  if (max_iterations < 1) throw ConfigError("fsm.max_iterations must be >= 1");
  if (streak_threshold < 1) throw ConfigError("fsm.streak_threshold must be >= 1");
}

FsmSnapshot initial(const FsmConfig& config) {
  config.validate();
  FsmSnapshot s;
  s.max_iterations = config.max_iterations;
  s.streak_threshold = config.streak_threshold;
  return s;
}

FsmSnapshot step(const FsmSnapshot& snapshot, StepEvent event) {
  if (snapshot.terminated()) throw SteppedTerminated();
  FsmSnapshot next = snapshot;
  const bool changed = event == StepEvent::changed;
  switch (snapshot.state) {
    case SearchState::no_search:
      next.state = changed ? SearchState::search : SearchState::no_search;
      next.no_change_streak = changed ? 0 : snapshot.no_change_streak + 1;
      break;
    case SearchState::search:
      next.state = changed ? SearchState::search_plus_plus : SearchState::no_search;
      next.no_change_streak = 0;
      break;
    case SearchState::search_plus_plus:
      next.state = changed ? SearchState::search : SearchState::search_plus_plus;
      next.no_change_streak = 0;
      break;
    case SearchState::end:
      break;
  }
  next.iteration = snapshot.iteration + 1;
  if (next.no_change_streak >= next.streak_threshold || next.iteration >= next.max_iterations) {
    next.state = SearchState::end;
  }
  return next;
}

}  // namespace lir

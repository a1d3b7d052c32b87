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

#include <doctest.h>

#include "lir/errors.hpp"
#include "lir/fsm.hpp"

using lir::FsmSnapshot;
using lir::SearchState;
using lir::StepEvent;

namespace {

FsmSnapshot at(SearchState s, std::size_t i, std::size_t k) { return {s, i, k, 8, 2}; }

}  // namespace

TEST_SUITE("fsm") {
  TEST_CASE("initial snapshot") {
    const auto s = lir::initial();
    CHECK(s == at(SearchState::no_search, 0, 0));
    CHECK_FALSE(s.terminated());
    CHECK(lir::initial() == lir::initial());
  }

  TEST_CASE("transition table") {
    using enum SearchState;
    CHECK(lir::step(at(no_search, 0, 1), StepEvent::changed) == at(search, 1, 0));
    CHECK(lir::step(at(no_search, 0, 0), StepEvent::nothing_changed) == at(no_search, 1, 1));
    CHECK(lir::step(at(search, 3, 0), StepEvent::changed) == at(search_plus_plus, 4, 0));
    CHECK(lir::step(at(search, 3, 0), StepEvent::nothing_changed) == at(no_search, 4, 0));
    CHECK(lir::step(at(search_plus_plus, 2, 0), StepEvent::changed) == at(search, 3, 0));
    CHECK(lir::step(at(search_plus_plus, 2, 0), StepEvent::nothing_changed) == at(search_plus_plus, 3, 0));
    CHECK(lir::step(at(no_search, 0, 1), StepEvent::nothing_changed) == at(end, 1, 2));
    CHECK(lir::step(at(search_plus_plus, 7, 0), StepEvent::nothing_changed) == at(end, 8, 0));
    CHECK_THROWS_AS(lir::step(at(end, 3, 2), StepEvent::changed), lir::SteppedTerminated);
    CHECK_THROWS_AS(lir::step(at(end, 3, 2), StepEvent::nothing_changed), lir::SteppedTerminated);
  }

  TEST_CASE("two quiet steps from the start end the run") {
    auto s = lir::initial();
    s = lir::step(s, StepEvent::nothing_changed);
    CHECK_FALSE(s.terminated());
    s = lir::step(s, StepEvent::nothing_changed);
    CHECK(s == at(SearchState::end, 2, 2));
  }

  TEST_CASE("every event sequence terminates within the cap") {
    for (unsigned bits = 0; bits < 256; ++bits) {
      auto s = lir::initial();
      std::size_t steps = 0;
      for (int b = 0; b < 8 && !s.terminated(); ++b) {
        const auto before = s;
        s = lir::step(s, (bits >> b) & 1U ? StepEvent::changed : StepEvent::nothing_changed);
        ++steps;
        CHECK(s.iteration == steps);
        CHECK(s.no_change_streak <= 2);
        if (s.terminated() && s.iteration < 8) {
          // Early termination only follows a quiet step in NoSearch.
          CHECK(before.state == SearchState::no_search);
        }
      }
      CHECK(s.terminated());
      CHECK(steps <= 8);
      CHECK((s.no_change_streak >= 2 || s.iteration >= 8));
    }
  }

  TEST_CASE("custom limits") {
    lir::FsmConfig c{3, 1};
    auto s = lir::initial(c);
    s = lir::step(s, StepEvent::nothing_changed);
    CHECK(s.terminated());
    CHECK(s.iteration == 1);
    CHECK_THROWS_AS((lir::FsmConfig{0, 2}.validate()), lir::ConfigError);
    CHECK_THROWS_AS((lir::FsmConfig{8, 0}.validate()), lir::ConfigError);
  }

  TEST_CASE("names") {
    CHECK(lir::to_string(SearchState::search_plus_plus) == "SearchPlusPlus");
    CHECK(lir::to_string(StepEvent::nothing_changed) == "NothingChanged");
    CHECK(lir::parse_search_state("NoSearch") == SearchState::no_search);
    CHECK(lir::parse_search_state("End") == SearchState::end);
  }
}

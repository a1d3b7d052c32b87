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

// The iterative refinement loop: neighbors -> correction -> fusion -> rule
// filter -> scoring -> greedy acceptance, driven by the search-state machine.

#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lir/backend.hpp"
#include "lir/candidate.hpp"
#include "lir/fsm.hpp"
#include "lir/neighbor.hpp"
#include "lir/phonetics.hpp"
#include "lir/rules.hpp"

namespace lir {

struct OptimizerConfig {
  FsmConfig fsm;
  NeighborSettings neighbor;
  RuleConfig rules;

  void validate() const;
};

/// A rule-surviving member of S' with the score it received.
struct ScoredCandidate {
  Candidate candidate;
  bool is_current = false;
};

struct RejectedCandidate {
  Candidate candidate;
  std::vector<RuleViolation> violations;
};

struct IterationTrace {
  /// 1-based.
  std::size_t iteration = 0;
  FsmSnapshot fsm_before;
  FsmSnapshot fsm_after;
  /// Members returned by neighbor generation.
  std::size_t generated = 0;
  /// Distinct members of S' (corrected, current, fused).
  std::size_t assembled = 0;
  std::size_t surviving = 0;
  std::size_t backend_failures = 0;
  /// Highest-scoring scored survivor, earliest on ties.
  Candidate best;
  Transcript accepted;
  Score accepted_score;
  StepEvent event = StepEvent::nothing_changed;
  std::chrono::microseconds wall_time{0};
  std::vector<ScoredCandidate> scored;
  std::vector<RejectedCandidate> rejected;
};

struct RunResult {
  Transcript final;
  std::vector<IterationTrace> trace;
};

struct AcceptResult {
  Candidate next;
  StepEvent event = StepEvent::nothing_changed;
};

/// Greedy acceptance. The earliest highest-scoring survivor replaces
/// `current` only when its score is strictly greater; otherwise `current` is
/// kept. `current` must carry a score; survivors without one are ignored.
AcceptResult accept(const Candidate& current, std::span<const Candidate> survivors);

/// Runs the loop to termination. Backend failures drop or degrade the
/// affected candidates; nothing is rethrown except EmptyTranscript for an
/// empty initial transcript.
RunResult run(const Transcript& initial, const OptimizerConfig& config, const Backend& backend,
              const SubstitutionTable& table, std::uint64_t seed, const Phonetics& phonetics);
RunResult run(const Transcript& initial, const OptimizerConfig& config, const Backend& backend,
              const SubstitutionTable& table, std::uint64_t seed);

nlohmann::json to_json(const Candidate& candidate);
nlohmann::json to_json(const FsmSnapshot& snapshot);
/// Stable field names; wall time is omitted unless requested so the output
/// of deterministic backends is reproducible byte for byte.
nlohmann::json to_json(const IterationTrace& trace, bool include_wall_time = true);
nlohmann::json to_json(const RunResult& result, bool include_wall_time = true);

}  // namespace lir

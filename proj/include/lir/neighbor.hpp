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

// Neighbor generation: phonetically plausible variants of a transcript made
// of similar-sounding unit substitutions.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lir/candidate.hpp"
#include "lir/fsm.hpp"
#include "lir/phonetics.hpp"

namespace lir {

struct NeighborPolicy {
  SearchState state = SearchState::no_search;
  std::size_t pool_size = 3;
  std::size_t max_edits_per_candidate = 0;
  double substitution_min_similarity = 1.0;
  std::uint64_t rng_seed = 0;

  /// Throws ConfigError on pool_size == 0, a threshold outside [0,1], or a
  /// NoSearch policy with a non-zero edit budget.
  void validate() const;
};

/// Edit budget of one search state.
struct SearchBudget {
  std::size_t max_edits = 1;
  double min_similarity = 0.8;
};

/// Per-state policy defaults: NoSearch edits nothing, Search makes one
/// substitution at similarity >= 0.8, SearchPlusPlus up to two at >= 0.6.
struct NeighborSettings {
  std::size_t pool_size = 3;
  SearchBudget search{1, 0.8};
  SearchBudget search_plus_plus{2, 0.6};

  void validate() const;
  NeighborPolicy policy_for(SearchState state, std::uint64_t seed) const;
};

struct CandidateSet {
  Transcript origin;
  std::vector<Candidate> members;
};

/// Deterministic in (origin, policy, table). Returns {origin} when the policy
/// edits nothing or no variant can be produced; otherwise up to pool_size
/// distinct variants, none equal to the origin. Throws EmptyTranscript.
CandidateSet generate(const Transcript& origin, const NeighborPolicy& policy, const SubstitutionTable& table);

}  // namespace lir

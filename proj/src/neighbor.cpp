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

#include "lir/neighbor.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "lir/errors.hpp"
#include "lir/random.hpp"

namespace lir {

namespace {

// Draws per requested pool slot before giving up on filling the pool.
constexpr std::size_t kAttemptsPerSlot = 10;

void check_threshold(double t, const char* what) {
  if (!(t >= 0.0 && t <= 1.0)) throw ConfigError(std::string(what) + " must be in [0,1]");
}

}  // namespace

std::string_view to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::original:
      return "original";
    case Provenance::neighbor:
      return "neighbor";
    case Provenance::corrected:
      return "corrected";
    case Provenance::fused:
      break;
  }
  return "fused";
}

void NeighborPolicy::validate() const {
  if (pool_size < 1) throw ConfigError("neighbor pool_size must be >= 1");
  check_threshold(substitution_min_similarity, "neighbor substitution_min_similarity");
  if (state == SearchState::no_search && max_edits_per_candidate != 0) {
    throw ConfigError("a NoSearch policy must have max_edits_per_candidate = 0");
  }
}

void NeighborSettings::validate() const {
  if (pool_size < 1) throw ConfigError("neighbor.pool_size must be >= 1");
  check_threshold(search.min_similarity, "neighbor.search.min_similarity");
  check_threshold(search_plus_plus.min_similarity, "neighbor.search_plus_plus.min_similarity");
}

NeighborPolicy NeighborSettings::policy_for(SearchState state, std::uint64_t seed) const {
  NeighborPolicy p;
  p.state = state;
  p.pool_size = pool_size;
  p.rng_seed = seed;
  switch (state) {
    case SearchState::search:
      p.max_edits_per_candidate = search.max_edits;
      p.substitution_min_similarity = search.min_similarity;
      break;
    case SearchState::search_plus_plus:
      p.max_edits_per_candidate = search_plus_plus.max_edits;
      p.substitution_min_similarity = search_plus_plus.min_similarity;
      break;
    case SearchState::no_search:
    case SearchState::end:
      p.state = SearchState::no_search;
      p.max_edits_per_candidate = 0;
      p.substitution_min_similarity = 1.0;
      break;
  }
  return p;
}

CandidateSet generate(const Transcript& origin, const NeighborPolicy& policy, const SubstitutionTable& table) {
  policy.validate();
  const auto units = split_units(origin.text, origin.language);
  if (units.empty()) throw EmptyTranscript();

  CandidateSet out{origin, {}};
  auto only_origin = [&] {
    out.members = {Candidate::from(origin, Provenance::original)};
    return out;
  };
  if (policy.state == SearchState::no_search || policy.max_edits_per_candidate == 0) return only_origin();

  std::vector<std::vector<Substitution>> options(units.size());
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < units.size(); ++i) {
    const std::string key = unit_key(units[i], origin.language);
    if (key.empty()) continue;
    options[i] = similar_units(key, origin.language, table, policy.substitution_min_similarity);
    if (!options[i].empty()) positions.push_back(i);
  }
  if (positions.empty()) return only_origin();

  Rng rng(policy.rng_seed);
  std::unordered_set<std::string> seen{origin.text};
  const std::size_t budget = std::min(policy.max_edits_per_candidate, positions.size());
  for (std::size_t attempt = 0; attempt < kAttemptsPerSlot * policy.pool_size && out.members.size() < policy.pool_size;
       ++attempt) {
    const std::size_t edits = 1 + rng.below(budget);
    std::vector<std::size_t> pool = positions;
    // Partial Fisher-Yates: the first `edits` slots become the sample.
    for (std::size_t k = 0; k < edits; ++k) {
      std::swap(pool[k], pool[k + rng.below(pool.size() - k)]);
    }
    std::vector<std::size_t> chosen(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(edits));
    std::sort(chosen.begin(), chosen.end());

    std::vector<std::string> variant = units;
    for (std::size_t pos : chosen) {
      const auto& opts = options[pos];
      const std::string& sub = opts[rng.below(opts.size())].unit;
      variant[pos] = origin.language == Language::en ? restyle_word(units[pos], sub) : sub;
    }
    std::string text = join_units(variant, origin.language);
    if (!seen.insert(text).second) continue;
    out.members.push_back({std::move(text), origin.language, Provenance::neighbor, std::nullopt, std::nullopt});
  }
  if (out.members.empty()) return only_origin();
  return out;
}

}  // namespace lir

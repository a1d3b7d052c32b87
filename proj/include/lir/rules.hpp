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

// Rule constraints that reject candidates drifting too far from the
// transcript they were derived from.
//
// Both sides are split into units (zh characters, en words) and aligned with
// unit-cost edit distance. Three rules are checked:
//   phonetic_similarity   every substituted unit pair sounds alike enough
//   length_deviation      |len(candidate) - len(origin)| / len(origin)
//   insertion_deletion    (deletions + insertions) / len(origin)

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lir/candidate.hpp"
#include "lir/neighbor.hpp"
#include "lir/phonetics.hpp"

namespace lir {

/// Similarity used when neither unit of a pair has a known pronunciation.
inline constexpr double kUnknownPairSimilarity = 0.5;

struct RuleConfig {
  double min_phonetic_similarity = 0.5;
  double max_length_deviation_ratio = 0.2;
  double max_insertion_plus_deletion_ratio = 0.15;

  /// Throws ConfigError when a threshold is out of range.
  void validate() const;
};

inline constexpr std::string_view kRulePhoneticSimilarity = "phonetic_similarity";
inline constexpr std::string_view kRuleLengthDeviation = "length_deviation";
inline constexpr std::string_view kRuleInsertionDeletion = "insertion_deletion";

struct RuleViolation {
  std::string rule;
  double measured = 0.0;
  double threshold = 0.0;

  bool operator==(const RuleViolation&) const = default;
};

struct RuleVerdict {
  bool accepted = true;
  std::vector<RuleViolation> violations;
};

/// Throws LanguageMismatch, EmptyTranscript (origin without units).
RuleVerdict check(const Transcript& origin, const Candidate& candidate, const RuleConfig& config,
                  const Phonetics& phonetics);
RuleVerdict check(const Transcript& origin, const Candidate& candidate, const RuleConfig& config);

/// Members accepted by check(), in their original order. Members whose text
/// equals the origin are always kept.
CandidateSet filter(const Transcript& origin, const CandidateSet& candidates, const RuleConfig& config,
                    const Phonetics& phonetics);
CandidateSet filter(const Transcript& origin, const CandidateSet& candidates, const RuleConfig& config);

}  // namespace lir

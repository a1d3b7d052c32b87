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

#include "lir/rules.hpp"

#include <algorithm>
#include <cmath>

#include "lir/errors.hpp"
#include "lir/metrics.hpp"

namespace lir {

namespace {

std::vector<std::string> unit_keys(std::string_view text, Language language) {
  std::vector<std::string> keys;
  for (const auto& u : split_units(text, language)) {
    std::string k = unit_key(u, language);
    if (!k.empty()) keys.push_back(std::move(k));
  }
  return keys;
}

double pair_similarity(const Phonetics& phonetics, std::string_view a, std::string_view b, Language language) {
  const auto pa = phonetics.g2p(a, language);
  const auto pb = phonetics.g2p(b, language);
  if (unknown_pronunciation(pa) && unknown_pronunciation(pb)) return kUnknownPairSimilarity;
  return phonetic_similarity(pa, pb);
}

}  // namespace

void RuleConfig::validate() const {
  if (!(min_phonetic_similarity >= 0.0 && min_phonetic_similarity <= 1.0)) {
    throw ConfigError("rules.min_phonetic_similarity must be in [0,1]");
  }
  if (!(max_length_deviation_ratio >= 0.0) || !std::isfinite(max_length_deviation_ratio)) {
    throw ConfigError("rules.max_length_deviation_ratio must be non-negative");
  }
  if (!(max_insertion_plus_deletion_ratio >= 0.0) || !std::isfinite(max_insertion_plus_deletion_ratio)) {
    throw ConfigError("rules.max_insertion_plus_deletion_ratio must be non-negative");
  }
}

RuleVerdict check(const Transcript& origin, const Candidate& candidate, const RuleConfig& config,
                  const Phonetics& phonetics) {
  if (origin.language != candidate.language) throw LanguageMismatch("origin and candidate languages differ");
  const auto ref = unit_keys(origin.text, origin.language);
  if (ref.empty()) throw EmptyTranscript();
  const auto hyp = unit_keys(candidate.text, candidate.language);

  const auto steps = align(std::span<const std::string>(ref), std::span<const std::string>(hyp));
  RuleVerdict verdict;

  double min_sim = 1.0;
  bool any_substitution = false;
  std::size_t indels = 0;
  for (const auto& s : steps) {
    if (s.op == EditOp::substitution) {
      any_substitution = true;
      min_sim = std::min(min_sim, pair_similarity(phonetics, ref[s.ref_index], hyp[s.hyp_index], origin.language));
    } else if (s.op == EditOp::deletion || s.op == EditOp::insertion) {
      ++indels;
    }
  }
  if (any_substitution && min_sim < config.min_phonetic_similarity) {
    verdict.violations.push_back({std::string(kRulePhoneticSimilarity), min_sim, config.min_phonetic_similarity});
  }

  const double n = static_cast<double>(ref.size());
  const double deviation =
      std::abs(static_cast<double>(hyp.size()) - static_cast<double>(ref.size())) / n;
  if (deviation > config.max_length_deviation_ratio) {
    verdict.violations.push_back({std::string(kRuleLengthDeviation), deviation, config.max_length_deviation_ratio});
  }
  const double indel_ratio = static_cast<double>(indels) / n;
  if (indel_ratio > config.max_insertion_plus_deletion_ratio) {
    verdict.violations.push_back(
        {std::string(kRuleInsertionDeletion), indel_ratio, config.max_insertion_plus_deletion_ratio});
  }
  verdict.accepted = verdict.violations.empty();
  return verdict;
}

RuleVerdict check(const Transcript& origin, const Candidate& candidate, const RuleConfig& config) {
  return check(origin, candidate, config, Phonetics::bundled());
}

CandidateSet filter(const Transcript& origin, const CandidateSet& candidates, const RuleConfig& config,
                    const Phonetics& phonetics) {
  CandidateSet out{candidates.origin, {}};
  for (const auto& c : candidates.members) {
    if (c.text == origin.text || check(origin, c, config, phonetics).accepted) out.members.push_back(c);
  }
  return out;
}

CandidateSet filter(const Transcript& origin, const CandidateSet& candidates, const RuleConfig& config) {
  return filter(origin, candidates, config, Phonetics::bundled());
}

}  // namespace lir

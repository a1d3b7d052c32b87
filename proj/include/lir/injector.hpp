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

// Synthetic recognition errors: similar-sounding unit substitutions and,
// optionally, unit insertions / deletions.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lir/candidate.hpp"
#include "lir/phonetics.hpp"

namespace lir {

struct NoiseProfile {
  double substitution_rate = 0.15;
  /// Probability that a substitution is drawn from the homophones (weight
  /// 1.0) rather than from every similar unit.
  double homophone_bias = 0.7;
  std::uint64_t seed = 0;
  /// Also drop or duplicate units, each with probability substitution_rate/4.
  bool insertions_deletions = false;

  /// Throws ConfigError when a rate is outside [0,1].
  void validate() const;
};

enum class InjectedKind { substitution, deletion, insertion };

struct InjectedEdit {
  InjectedKind kind = InjectedKind::substitution;
  /// Unit index in the clean transcript (see split_units()).
  std::size_t position = 0;
  std::string from;
  std::string to;

  bool operator==(const InjectedEdit&) const = default;
};

struct CorruptResult {
  Transcript noisy;
  std::vector<InjectedEdit> edits;
};

/// Deterministic in (clean, profile, table). Units with no similar unit at the
/// table's threshold are never substituted. Throws EmptyTranscript.
///
/// Draw order, per unit in reading order: one bernoulli(rate) for units that
/// have substitutes; on success one bernoulli(homophone_bias) and one index
/// draw. With insertions_deletions, one more bernoulli(rate/4) per unit and,
/// on success, a bernoulli(0.5) choosing deletion over duplication.
CorruptResult corrupt(const Transcript& clean, const NoiseProfile& profile, const SubstitutionTable& table);

}  // namespace lir

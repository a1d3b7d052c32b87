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

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "lir/text.hpp"

namespace lir {

struct Transcript {
  std::string text;
  Language language = Language::zh;

  bool operator==(const Transcript&) const = default;
};

/// Backend judgement of a candidate; 0 <= value <= f_max.
struct Score {
  double value = 0.0;
  double f_max = 100.0;
  std::string rationale;

  bool operator==(const Score&) const = default;
};

enum class Provenance { original, neighbor, corrected, fused };

std::string_view to_string(Provenance provenance);

struct Candidate {
  std::string text;
  Language language = Language::zh;
  Provenance provenance = Provenance::original;
  std::optional<Score> score;
  std::optional<std::string> rationale;

  static Candidate from(const Transcript& t, Provenance p) { return {t.text, t.language, p, std::nullopt, std::nullopt}; }
  Transcript transcript() const { return {text, language}; }
  bool operator==(const Candidate&) const = default;
};

}  // namespace lir

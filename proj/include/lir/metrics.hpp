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

// Edit-distance alignment and the CER / WER error rates.

#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "lir/text.hpp"

namespace lir {

struct EditCounts {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t reference_length = 0;

  std::size_t total() const { return substitutions + deletions + insertions; }
  bool operator==(const EditCounts&) const = default;
};

enum class EditOp { match, substitution, deletion, insertion };

/// One column of an alignment. Indices are npos on the side the op skips.
struct AlignmentStep {
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  EditOp op;
  std::size_t ref_index;
  std::size_t hyp_index;
};

/// Minimum unit-cost alignment of `hyp` against `ref`, in reading order.
///
/// Traceback starts at the end and, among minimal predecessors, prefers the
/// diagonal (match/substitution), then deletion, then insertion, so the
/// result is deterministic.
template <typename T>
std::vector<AlignmentStep> align(std::span<const T> ref, std::span<const T> hyp) {
  const std::size_t m = ref.size();
  const std::size_t n = hyp.size();
  const std::size_t w = n + 1;
  std::vector<std::size_t> cost((m + 1) * w);
  for (std::size_t i = 0; i <= m; ++i) cost[i * w] = i;
  for (std::size_t j = 0; j <= n; ++j) cost[j] = j;
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t diag = cost[(i - 1) * w + j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      cost[i * w + j] = std::min({diag, cost[(i - 1) * w + j] + 1, cost[i * w + j - 1] + 1});
    }
  }

  std::vector<AlignmentStep> steps;
  steps.reserve(std::max(m, n));
  std::size_t i = m;
  std::size_t j = n;
  while (i > 0 || j > 0) {
    const std::size_t here = cost[i * w + j];
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (cost[(i - 1) * w + j - 1] + (same ? 0 : 1) == here) {
        steps.push_back({same ? EditOp::match : EditOp::substitution, i - 1, j - 1});
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && cost[(i - 1) * w + j] + 1 == here) {
      steps.push_back({EditOp::deletion, i - 1, AlignmentStep::npos});
      --i;
      continue;
    }
    steps.push_back({EditOp::insertion, AlignmentStep::npos, j - 1});
    --j;
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

template <typename T>
EditCounts count_edits(std::span<const AlignmentStep> steps, std::span<const T> ref) {
  EditCounts counts;
  counts.reference_length = ref.size();
  for (const auto& s : steps) {
    switch (s.op) {
      case EditOp::substitution:
        ++counts.substitutions;
        break;
      case EditOp::deletion:
        ++counts.deletions;
        break;
      case EditOp::insertion:
        ++counts.insertions;
        break;
      case EditOp::match:
        break;
    }
  }
  return counts;
}

template <typename T>
EditCounts edit_distance(std::span<const T> ref, std::span<const T> hyp) {
  const auto steps = align(ref, hyp);
  return count_edits<T>(steps, ref);
}

inline EditCounts edit_distance(const std::vector<std::string>& ref, const std::vector<std::string>& hyp) {
  return edit_distance(std::span<const std::string>(ref), std::span<const std::string>(hyp));
}

/// Total edit cost only, via the dispatching vector kernel.
std::size_t token_distance(std::span<const std::string> a, std::span<const std::string> b);
std::size_t codepoint_distance(std::u32string_view a, std::u32string_view b);

/// Greedy longest-match zh word segmenter; unmatched characters become
/// single-character words and ASCII letter/digit runs stay together.
class ZhSegmenter {
 public:
  ZhSegmenter() = default;
  explicit ZhSegmenter(const std::vector<std::string>& words);

  /// One word per line, `#` comments, optional TAB-separated trailing fields.
  static ZhSegmenter load(const std::filesystem::path& path);
  /// Shared instance over the bundled word list (see assets.hpp).
  static const ZhSegmenter& bundled();

  std::vector<std::string> segment(std::string_view text) const;
  bool contains(std::u32string_view word) const { return words_.count(std::u32string(word)) != 0; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::u32string> words_;
  std::size_t max_length_ = 1;
};

/// Scoring tokens after normalization: zh code points / en characters
/// (including spaces).
std::u32string cer_tokens(std::string_view text, Language language);
/// zh: segmenter words; en: whitespace words.
std::vector<std::string> wer_tokens(std::string_view text, Language language, const ZhSegmenter& segmenter);
/// Uses ZhSegmenter::bundled() for zh.
std::vector<std::string> wer_tokens(std::string_view text, Language language);

/// Throws EmptyReference when the normalized reference has no tokens.
double cer(std::string_view reference, std::string_view hypothesis, Language language);
double wer(std::string_view reference, std::string_view hypothesis, Language language);
double wer(std::string_view reference, std::string_view hypothesis, Language language,
           const ZhSegmenter& segmenter);

/// Edit totals behind cer()/wer(), for micro-averaging.
struct RateParts {
  std::size_t edits = 0;
  std::size_t reference_length = 0;
  double rate() const { return static_cast<double>(edits) / static_cast<double>(reference_length); }
};
RateParts cer_parts(std::string_view reference, std::string_view hypothesis, Language language);
RateParts wer_parts(std::string_view reference, std::string_view hypothesis, Language language);
RateParts wer_parts(std::string_view reference, std::string_view hypothesis, Language language,
                    const ZhSegmenter& segmenter);

}  // namespace lir

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

// Corrector / fuser / scorer backends.
//
//   oracle     knows the reference transcript; for tests and desk experiments
//   heuristic  reference-free and deterministic; identity correction
//   live-http  a chat-completions style HTTP endpoint

#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lir/candidate.hpp"
#include "lir/metrics.hpp"
#include "lir/phonetics.hpp"

namespace lir {

enum class BackendKind { live_http, oracle, heuristic };

std::string_view to_string(BackendKind kind);
/// Accepts "live", "live-http", "oracle", "heuristic"; throws ConfigError.
BackendKind parse_backend_kind(std::string_view name);

struct PromptTemplates {
  std::string correct;
  std::string fuse;
  std::string score;

  /// Reads correct.txt, fuse.txt and score.txt; throws IoFailure.
  static PromptTemplates load(const std::filesystem::path& dir);
  /// The templates under <data_dir>/prompts.
  static PromptTemplates bundled();
};

/// Replaces every {{name}} with vars.at(name); unknown placeholders are kept.
std::string render_template(std::string_view tmpl, const std::map<std::string, std::string>& vars);

struct BackendProfile {
  BackendKind kind = BackendKind::heuristic;
  std::string endpoint_url;
  std::string model_name;
  /// Sent as a bearer token when non-empty.
  std::string api_key;
  std::chrono::milliseconds request_timeout{60000};
  std::size_t max_parallel_requests = 4;
  std::size_t retry_budget = 3;
  std::chrono::milliseconds backoff_base{500};
  double f_max = 100.0;
  PromptTemplates templates;

  /// Throws ConfigError on an incomplete live-http profile, a zero request
  /// budget or a non-positive f_max.
  void validate() const;
};

/// Counters of remote calls; all zero for local backends.
struct CallStats {
  std::size_t attempted = 0;
  std::size_t succeeded = 0;
};

/// All methods are safe to call concurrently.
class Backend {
 public:
  explicit Backend(double f_max) : f_max_(f_max) {}
  virtual ~Backend() = default;

  /// Returns a `corrected` candidate of the same language. Throws
  /// BackendUnavailable / MalformedResponse.
  virtual Candidate correct(const Candidate& candidate, const Transcript& context) const = 0;
  /// Returns a `fused` candidate. `corrected` must be non-empty.
  virtual Candidate fuse(const Transcript& current, std::span<const Candidate> corrected) const = 0;
  /// 0 <= value <= f_max.
  virtual Score score(const Candidate& candidate) const = 0;

  virtual std::size_t max_parallel() const { return 1; }
  virtual CallStats stats() const { return {}; }
  double f_max() const { return f_max_; }

 private:
  double f_max_;
};

/// Test backend with access to the hidden reference.
class OracleBackend : public Backend {
 public:
  OracleBackend(Transcript reference, const Phonetics& phonetics, double f_max = 100.0,
                std::size_t max_parallel = 4);

  /// Replaces each unit aligned as a substitution against the reference with
  /// the reference unit when their phonetic similarity is >= 0.5.
  Candidate correct(const Candidate& candidate, const Transcript& context) const override;
  /// Member with the smallest character edit distance to the reference,
  /// earliest on ties.
  Candidate fuse(const Transcript& current, std::span<const Candidate> corrected) const override;
  /// f_max * (1 - min(1, CER against the reference)).
  Score score(const Candidate& candidate) const override;
  std::size_t max_parallel() const override { return max_parallel_; }

  const Transcript& reference() const { return reference_; }

 private:
  Transcript reference_;
  const Phonetics& phonetics_;
  std::size_t max_parallel_;
};

/// Reference-free deterministic backend.
class HeuristicBackend : public Backend {
 public:
  HeuristicBackend(const Phonetics& phonetics, const ZhSegmenter& segmenter, double f_max = 100.0,
                   std::size_t max_parallel = 4);

  /// Identity.
  Candidate correct(const Candidate& candidate, const Transcript& context) const override;
  /// Member with the longest common character subsequence with `current`,
  /// earliest on ties.
  Candidate fuse(const Transcript& current, std::span<const Candidate> corrected) const override;
  /// f_max * lexicon coverage: en, the fraction of words listed in the
  /// pronunciation lexicon; zh, the fraction of characters that belong to a
  /// multi-character word of the segmenter's dictionary.
  Score score(const Candidate& candidate) const override;
  std::size_t max_parallel() const override { return max_parallel_; }

  static double coverage(std::string_view text, Language language, const Phonetics& phonetics,
                         const ZhSegmenter& segmenter);

 private:
  const Phonetics& phonetics_;
  const ZhSegmenter& segmenter_;
  std::size_t max_parallel_;
};

/// Extracts the transcript from a correct/fuse reply: the "transcript" field
/// of the first JSON object, else the text after a "Transcript:" label.
/// Throws MalformedResponse when neither yields non-empty text.
std::string parse_transcript_reply(std::string_view content);

/// Extracts (score, rationale) from a score reply: the first JSON object with
/// a numeric "score", else a "Score: <number>" line whose remainder is the
/// rationale. Values are clamped to [0, f_max]; an unparseable reply yields
/// (0, "unparseable").
Score parse_score_reply(std::string_view content, double f_max);

/// Client for an OpenAI-compatible chat completions endpoint.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(BackendProfile profile);

  Candidate correct(const Candidate& candidate, const Transcript& context) const override;
  Candidate fuse(const Transcript& current, std::span<const Candidate> corrected) const override;
  Score score(const Candidate& candidate) const override;
  std::size_t max_parallel() const override { return profile_.max_parallel_requests; }
  CallStats stats() const override { return {attempted_.load(), succeeded_.load()}; }

  /// One chat round trip with retries; returns the first choice's content.
  std::string complete(const std::string& prompt) const;

 private:
  BackendProfile profile_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;
  mutable std::atomic<std::size_t> attempted_{0};
  mutable std::atomic<std::size_t> succeeded_{0};
};

/// Builds the backend named by profile.kind. The oracle kind requires the
/// hidden reference (MissingReference otherwise).
std::unique_ptr<Backend> make_backend(const BackendProfile& profile,
                                      const std::optional<Transcript>& reference = std::nullopt);

}  // namespace lir

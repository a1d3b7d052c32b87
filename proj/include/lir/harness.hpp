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

// Corpus I/O, configuration, baselines and reports behind the `lir` CLI.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lir/backend.hpp"
#include "lir/injector.hpp"
#include "lir/metrics.hpp"
#include "lir/optimizer.hpp"
#include "lir/phonetics.hpp"

namespace lir {

// ---------------------------------------------------------------- corpus

struct CorpusRecord {
  std::string id;
  Language language = Language::zh;
  std::optional<std::string> reference;
  std::string hypothesis;
  std::optional<std::vector<std::string>> nbest;

  bool operator==(const CorpusRecord&) const = default;
};

/// Validates one decoded line; `line` is 1-based and only used in errors.
CorpusRecord record_from_json(const nlohmann::json& j, std::size_t line);
nlohmann::json to_json(const CorpusRecord& record);

/// One JSON object per line; blank lines are skipped. Throws SchemaViolation.
std::vector<CorpusRecord> parse_corpus(std::istream& in);
/// Throws IoFailure, SchemaViolation.
std::vector<CorpusRecord> ingest(const std::filesystem::path& path);
void write_corpus(const std::filesystem::path& path, std::span<const CorpusRecord> records);

// ---------------------------------------------------------------- config

struct HarnessConfig {
  /// Empty means data_dir() (see assets.hpp).
  std::filesystem::path data_dir;
  OptimizerConfig optimizer;
  BackendProfile backend;
  /// Construction threshold of the substitution tables.
  double table_threshold = 0.6;
  /// Records processed concurrently.
  std::size_t workers = 1;
  std::uint64_t seed = 0;

  /// Unknown keys and out-of-range values throw ConfigError. Prompt
  /// templates are read from backend.prompts_dir, else <data_dir>/prompts.
  static HarnessConfig from_json(const nlohmann::json& j);
  static HarnessConfig load(const std::filesystem::path& path);
  /// Defaults with the bundled prompt templates.
  static HarnessConfig defaults();
  void validate() const;
};

/// Pronunciation data, substitution tables and segmenter shared by all
/// records of a run.
class Resources {
 public:
  Resources(Phonetics phonetics, ZhSegmenter segmenter, double table_threshold);
  /// Loads from config.data_dir, or shares the bundled instances.
  static Resources from_config(const HarnessConfig& config);

  const Phonetics& phonetics() const { return phonetics_; }
  const ZhSegmenter& segmenter() const { return *segmenter_; }
  const SubstitutionTable& table(Language language) const { return language == Language::zh ? zh_ : en_; }

 private:
  Phonetics phonetics_;
  std::shared_ptr<const ZhSegmenter> segmenter_;
  SubstitutionTable zh_;
  SubstitutionTable en_;
};

/// Backend for one record. Oracle backends are bound to the record's
/// reference (MissingReference without one); other kinds are shared.
class BackendPool {
 public:
  BackendPool(const BackendProfile& profile, const Resources& resources);
  std::shared_ptr<const Backend> for_record(const CorpusRecord& record) const;
  /// Remote call counters of the shared backend.
  CallStats stats() const;

 private:
  BackendProfile profile_;
  const Resources& resources_;
  std::shared_ptr<const Backend> shared_;
};

// ---------------------------------------------------------------- runs

struct RecordOutput {
  std::string id;
  Language language = Language::zh;
  std::string output;
  /// Set by the LIR loop, empty for baselines.
  std::optional<RunResult> run;
};

nlohmann::json to_json(const RecordOutput& output, bool include_wall_time = true);
/// Reads {"id", "output"} lines; returns id -> output. Throws SchemaViolation
/// on malformed or duplicate entries.
std::map<std::string, std::string> read_outputs(const std::filesystem::path& path);
/// Writes one object per line, records in the given order.
void write_outputs(const std::filesystem::path& path, std::span<const RecordOutput> outputs);
/// Writes {"id", "language", "final", "trace"} per line.
void write_traces(const std::filesystem::path& path, std::span<const RecordOutput> outputs,
                  bool include_wall_time = true);

/// Runs the loop over every record with config.workers records in flight;
/// each record uses seed derive_seed(config.seed, id). Sorted by id.
std::vector<RecordOutput> correct_corpus(std::span<const CorpusRecord> records, const HarnessConfig& config,
                                         const Resources& resources, const BackendPool& backends);

/// One correction call on the hypothesis; backend errors keep the hypothesis.
Transcript baseline_direct(const CorpusRecord& record, const Backend& backend);
/// n == 1: baseline_direct on nbest[0]; otherwise one fusion over the first
/// n entries with nbest[0] as context. Throws MissingNBest.
Transcript baseline_nbest(const CorpusRecord& record, std::size_t n, const Backend& backend);

enum class BaselineMode { direct, nbest };
std::vector<RecordOutput> baseline_corpus(std::span<const CorpusRecord> records, BaselineMode mode, std::size_t n,
                                          const HarnessConfig& config, const BackendPool& backends);

/// Corrupts each record's reference (its hypothesis when there is none) with
/// seed derive_seed(profile.seed, id); the result replaces the hypothesis and
/// drops any n-best list.
std::vector<CorpusRecord> inject_corpus(std::span<const CorpusRecord> records, const NoiseProfile& profile,
                                        const Resources& resources);

// ---------------------------------------------------------------- evaluation

struct RecordMetrics {
  std::string id;
  Language language = Language::zh;
  double cer_before = 0.0;
  double cer_after = 0.0;
  double wer_before = 0.0;
  double wer_after = 0.0;
  RateParts cer_before_parts, cer_after_parts, wer_before_parts, wer_after_parts;
};

struct RateSummary {
  double cer_before = 0.0;
  double cer_after = 0.0;
  double wer_before = 0.0;
  double wer_after = 0.0;
  double delta_cer() const { return cer_before - cer_after; }
  double delta_wer() const { return wer_before - wer_after; }
};

struct GroupReport {
  std::size_t records = 0;
  /// Mean of per-record rates.
  RateSummary macro;
  /// Total edits over total reference length.
  RateSummary micro;
};

struct EvalReport {
  std::vector<RecordMetrics> records;
  /// "all" plus one group per language present.
  std::map<std::string, GroupReport> groups;
};

/// Throws MissingReference for a record without reference and
/// SchemaViolation when `outputs` lacks a record id.
EvalReport evaluate(std::span<const CorpusRecord> records, const std::map<std::string, std::string>& outputs,
                    const ZhSegmenter& segmenter);

/// Rates as fractions, full precision.
nlohmann::json to_json(const EvalReport& report);
/// Aligned columns, rates in percent with two decimals.
std::string to_text(const EvalReport& report);

// ---------------------------------------------------------------- convergence

struct ConvergenceRow {
  std::string record_id;
  std::size_t iteration = 0;
  double cer = 0.0;
  double wer = 0.0;
  double score = 0.0;
  SearchState fsm_state = SearchState::no_search;
};

/// One row per iteration: metrics of the accepted transcript and the state
/// that governed the iteration.
std::vector<ConvergenceRow> convergence_rows(const std::string& id, const std::string& reference, Language language,
                                             const nlohmann::json& trace, const ZhSegmenter& segmenter);
std::string convergence_csv(std::span<const ConvergenceRow> rows);

/// Shortest decimal string that reads back to the same double.
std::string format_number(double value);

}  // namespace lir

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

// lir: command-line front end.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data error,
// 3 backend failure.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "lir/errors.hpp"
#include "lir/harness.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kData = 2;
constexpr int kBackend = 3;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string backend;
  std::string endpoint;
  std::string model;
  std::optional<std::size_t> workers;
  bool verbose = false;

  std::string input;
  std::string output;
  std::string trace;
  std::string outputs;
  std::string report;
  std::string text_report;
  std::string corpus;
  std::string mode = "direct";
  std::size_t n = 3;
  double rate = 0.15;
  double homophone_bias = 0.7;
  bool indels = false;
};

const char* env(const char* name) {
  const char* v = std::getenv(name);
  return v != nullptr && *v != '\0' ? v : nullptr;
}

lir::HarnessConfig load_config(const Options& o) {
  lir::HarnessConfig c = o.config.empty() ? lir::HarnessConfig::defaults() : lir::HarnessConfig::load(o.config);
  if (o.seed) c.seed = *o.seed;
  if (o.workers) c.workers = *o.workers;
  if (!o.backend.empty()) c.backend.kind = lir::parse_backend_kind(o.backend);
  if (!o.endpoint.empty()) c.backend.endpoint_url = o.endpoint;
  if (!o.model.empty()) c.backend.model_name = o.model;
  if (c.backend.kind == lir::BackendKind::live_http) {
    if (c.backend.endpoint_url.empty() && env("LIR_LIVE_ENDPOINT")) c.backend.endpoint_url = env("LIR_LIVE_ENDPOINT");
    if (c.backend.model_name.empty() && env("LIR_LIVE_MODEL")) c.backend.model_name = env("LIR_LIVE_MODEL");
    if (env("LIR_API_KEY")) c.backend.api_key = env("LIR_API_KEY");
  }
  c.validate();
  return c;
}

// Live profiles are checked separately so an unusable endpoint maps to the
// backend exit code rather than a usage error.
int check_backend(const lir::HarnessConfig& c) {
  try {
    c.backend.validate();
  } catch (const lir::ConfigError& e) {
    spdlog::error("{}", e.what());
    return c.backend.kind == lir::BackendKind::live_http ? kBackend : kUsage;
  }
  return kOk;
}

int backend_outcome(const lir::BackendPool& pool) {
  const auto s = pool.stats();
  if (s.attempted > 0 && s.succeeded == 0) {
    spdlog::error("all {} backend calls failed", s.attempted);
    return kBackend;
  }
  if (s.attempted > s.succeeded) spdlog::warn("{} of {} backend calls failed", s.attempted - s.succeeded, s.attempted);
  return kOk;
}

int cmd_correct(const Options& o) {
  const auto config = load_config(o);
  if (int rc = check_backend(config)) return rc;
  const auto records = lir::ingest(o.input);
  const auto resources = lir::Resources::from_config(config);
  const lir::BackendPool pool(config.backend, resources);
  const auto outputs = lir::correct_corpus(records, config, resources, pool);
  lir::write_outputs(o.output, outputs);
  if (!o.trace.empty()) lir::write_traces(o.trace, outputs);
  spdlog::info("corrected {} records", outputs.size());
  return backend_outcome(pool);
}

int cmd_baseline(const Options& o) {
  const auto config = load_config(o);
  if (int rc = check_backend(config)) return rc;
  const auto records = lir::ingest(o.input);
  const auto resources = lir::Resources::from_config(config);
  const lir::BackendPool pool(config.backend, resources);
  const auto mode = o.mode == "direct" ? lir::BaselineMode::direct : lir::BaselineMode::nbest;
  const auto outputs = lir::baseline_corpus(records, mode, o.n, config, pool);
  lir::write_outputs(o.output, outputs);
  return backend_outcome(pool);
}

int cmd_inject(const Options& o) {
  const auto config = load_config(o);
  const auto records = lir::ingest(o.input);
  const auto resources = lir::Resources::from_config(config);
  lir::NoiseProfile profile;
  profile.substitution_rate = o.rate;
  profile.homophone_bias = o.homophone_bias;
  profile.seed = config.seed;
  profile.insertions_deletions = o.indels;
  profile.validate();
  lir::write_corpus(o.output, lir::inject_corpus(records, profile, resources));
  return kOk;
}

int cmd_evaluate(const Options& o) {
  const auto config = load_config(o);
  const auto records = lir::ingest(o.input);
  const auto outputs = lir::read_outputs(o.outputs);
  const auto resources_segmenter =
      config.data_dir.empty() ? lir::ZhSegmenter::bundled() : lir::ZhSegmenter::load(config.data_dir / "zh_words.txt");
  const auto report = lir::evaluate(records, outputs, resources_segmenter);
  if (!o.report.empty()) {
    std::ofstream out(o.report, std::ios::binary | std::ios::trunc);
    if (!out) throw lir::IoFailure("cannot write " + o.report);
    out << lir::to_json(report).dump(2) << '\n';
  }
  const std::string text = lir::to_text(report);
  if (!o.text_report.empty()) {
    std::ofstream out(o.text_report, std::ios::binary | std::ios::trunc);
    if (!out) throw lir::IoFailure("cannot write " + o.text_report);
    out << text;
  }
  std::cout << text;
  return kOk;
}

int cmd_export_trace(const Options& o) {
  const auto config = load_config(o);
  const auto records = lir::ingest(o.corpus);
  std::map<std::string, const lir::CorpusRecord*> by_id;
  for (const auto& r : records) by_id.emplace(r.id, &r);
  const auto segmenter =
      config.data_dir.empty() ? lir::ZhSegmenter::bundled() : lir::ZhSegmenter::load(config.data_dir / "zh_words.txt");

  std::ifstream in(o.trace, std::ios::binary);
  if (!in) throw lir::IoFailure("cannot open " + o.trace);
  std::vector<lir::ConvergenceRow> rows;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("id") || !j.contains("trace")) {
      throw lir::SchemaViolation(n, "trace", "expected an object with id and trace");
    }
    const auto id = j["id"].get<std::string>();
    auto it = by_id.find(id);
    if (it == by_id.end()) throw lir::SchemaViolation(n, "id", "record '" + id + "' is not in the corpus");
    if (!it->second->reference) throw lir::MissingReference("record '" + id + "' has no reference");
    auto r = lir::convergence_rows(id, *it->second->reference, it->second->language, j["trace"], segmenter);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  if (rows.empty()) throw lir::SchemaViolation(0, "trace", "no iterations to export");
  std::ofstream out(o.output, std::ios::binary | std::ios::trunc);
  if (!out) throw lir::IoFailure("cannot write " + o.output);
  out << lir::convergence_csv(rows);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_st("lir"));
  spdlog::set_pattern("%^%l%$: %v");

  Options o;
  CLI::App app{"Iterative phonetic transcript correction"};
  app.require_subcommand(1);
  app.add_option("--config", o.config, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--seed", o.seed, "Run seed (overrides the config)");
  app.add_option("--backend", o.backend, "Backend kind")->check(CLI::IsMember({"live", "live-http", "oracle", "heuristic"}));
  app.add_option("--endpoint", o.endpoint, "Chat completions URL for the live backend");
  app.add_option("--model", o.model, "Model name for the live backend");
  app.add_option("--workers", o.workers, "Records processed concurrently");
  app.add_flag("-v,--verbose", o.verbose, "Debug logging");

  auto* correct = app.add_subcommand("correct", "Run the correction loop over a corpus");
  correct->add_option("--input", o.input, "Corpus JSONL")->required();
  correct->add_option("--output", o.output, "Output JSONL")->required();
  correct->add_option("--trace", o.trace, "Per-record iteration traces (JSONL)");

  auto* baseline = app.add_subcommand("baseline", "Single-call baselines");
  baseline->add_option("--mode", o.mode, "direct or nbest")->check(CLI::IsMember({"direct", "nbest"}));
  baseline->add_option("--n", o.n, "n-best size")->check(CLI::PositiveNumber);
  baseline->add_option("--input", o.input, "Corpus JSONL")->required();
  baseline->add_option("--output", o.output, "Output JSONL")->required();

  auto* inject = app.add_subcommand("inject", "Corrupt references with similar-sounding substitutions");
  inject->add_option("--input", o.input, "Corpus JSONL")->required();
  inject->add_option("--output", o.output, "Corpus JSONL")->required();
  inject->add_option("--rate", o.rate, "Per-unit substitution probability")->check(CLI::Range(0.0, 1.0));
  inject->add_option("--homophone-bias", o.homophone_bias, "Share of exact homophones")->check(CLI::Range(0.0, 1.0));
  inject->add_flag("--indels", o.indels, "Also inject insertions and deletions");

  auto* evaluate = app.add_subcommand("evaluate", "CER/WER before and after correction");
  evaluate->add_option("--input", o.input, "Corpus JSONL with references")->required();
  evaluate->add_option("--outputs", o.outputs, "Output JSONL")->required();
  evaluate->add_option("--report", o.report, "JSON report path");
  evaluate->add_option("--text", o.text_report, "Text report path");

  auto* export_trace = app.add_subcommand("export-trace", "Convergence CSV from correction traces");
  export_trace->add_option("--trace", o.trace, "Trace JSONL")->required();
  export_trace->add_option("--corpus", o.corpus, "Corpus JSONL with references")->required();
  export_trace->add_option("--output", o.output, "CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  spdlog::set_level(o.verbose ? spdlog::level::debug : spdlog::level::info);

  try {
    if (*correct) return cmd_correct(o);
    if (*baseline) return cmd_baseline(o);
    if (*inject) return cmd_inject(o);
    if (*evaluate) return cmd_evaluate(o);
    if (*export_trace) return cmd_export_trace(o);
  } catch (const lir::ConfigError& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  } catch (const lir::BackendUnavailable& e) {
    spdlog::error("{}", e.what());
    return kBackend;
  } catch (const lir::MalformedResponse& e) {
    spdlog::error("{}", e.what());
    return kBackend;
  } catch (const lir::Error& e) {
    spdlog::error("{}", e.what());
    return kData;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kData;
  }
  return kUsage;
}

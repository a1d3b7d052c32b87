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

#include "lir/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "lir/assets.hpp"
#include "lir/errors.hpp"
#include "lir/parallel.hpp"
#include "lir/random.hpp"

namespace lir {

using nlohmann::json;

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot write " + path.string());
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path.string());
  return in;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoFailure("write failed: " + path.string());
}

// Strict object reader for config sections.
class Section {
 public:
  Section(const json& j, std::string name) : j_(j), name_(std::move(name)) {
    if (!j_.is_object()) throw ConfigError(name_ + " must be an object");
  }
  ~Section() = default;

  template <typename T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      out = it->get<T>();
    } catch (const json::exception&) {
      throw ConfigError(path(key) + " has the wrong type");
    }
  }

  std::optional<json> child(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return std::nullopt;
    return *it;
  }

  void done() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError("unknown config key " + path(key));
    }
  }

  std::string path(const std::string& key) const { return name_.empty() ? key : name_ + "." + key; }

 private:
  const json& j_;
  std::string name_;
  std::set<std::string> seen_;
};

void read_budget(Section& parent, const char* key, SearchBudget& budget) {
  if (auto j = parent.child(key)) {
    Section s(*j, parent.path(key));
    s.read("max_edits", budget.max_edits);
    s.read("min_similarity", budget.min_similarity);
    s.done();
  }
}

void require_string(const json& j, const char* key, std::size_t line) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaViolation(line, key, "missing");
  if (!it->is_string()) throw SchemaViolation(line, key, "must be a string");
}

std::string fixed2(double fraction) { return fmt::format("{:.2f}", fraction * 100.0); }

}  // namespace

// ---------------------------------------------------------------- corpus

CorpusRecord record_from_json(const json& j, std::size_t line) {
  if (!j.is_object()) throw SchemaViolation(line, "", "line is not a JSON object");
  CorpusRecord r;
  require_string(j, "id", line);
  r.id = j["id"].get<std::string>();
  if (r.id.empty()) throw SchemaViolation(line, "id", "must be non-empty");
  require_string(j, "language", line);
  try {
    r.language = parse_language(j["language"].get<std::string>());
  } catch (const ConfigError&) {
    throw SchemaViolation(line, "language", "must be \"zh\" or \"en\"");
  }
  require_string(j, "hypothesis", line);
  r.hypothesis = j["hypothesis"].get<std::string>();
  if (normalize(r.hypothesis, r.language).empty()) throw SchemaViolation(line, "hypothesis", "must be non-empty");
  if (auto it = j.find("reference"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw SchemaViolation(line, "reference", "must be a string");
    r.reference = it->get<std::string>();
  }
  if (auto it = j.find("nbest"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw SchemaViolation(line, "nbest", "must be an array of strings");
    std::vector<std::string> nbest;
    for (const auto& h : *it) {
      if (!h.is_string() || h.get<std::string>().empty()) {
        throw SchemaViolation(line, "nbest", "entries must be non-empty strings");
      }
      nbest.push_back(h.get<std::string>());
    }
    if (nbest.size() < 2) throw SchemaViolation(line, "nbest", "needs at least 2 entries");
    r.nbest = std::move(nbest);
  }
  return r;
}

json to_json(const CorpusRecord& r) {
  json j = {{"id", r.id}, {"language", to_string(r.language)}};
  if (r.reference) j["reference"] = *r.reference;
  j["hypothesis"] = r.hypothesis;
  if (r.nbest) j["nbest"] = *r.nbest;
  return j;
}

std::vector<CorpusRecord> parse_corpus(std::istream& in) {
  std::vector<CorpusRecord> records;
  std::set<std::string> ids;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw SchemaViolation(n, "", "invalid JSON");
    CorpusRecord r = record_from_json(j, n);
    if (!ids.insert(r.id).second) throw SchemaViolation(n, "id", "duplicate id '" + r.id + "'");
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<CorpusRecord> ingest(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_corpus(in);
}

void write_corpus(const std::filesystem::path& path, std::span<const CorpusRecord> records) {
  auto out = open_output(path);
  for (const auto& r : records) out << to_json(r).dump() << '\n';
  finish(out, path);
}

// ---------------------------------------------------------------- config

HarnessConfig HarnessConfig::defaults() {
  HarnessConfig c;
  c.backend.templates = PromptTemplates::bundled();
  return c;
}

HarnessConfig HarnessConfig::from_json(const json& j) {
  HarnessConfig c;
  Section root(j, "");
  std::string dir;
  root.read("data_dir", dir);
  c.data_dir = dir;
  root.read("seed", c.seed);
  root.read("workers", c.workers);
  root.read("table_threshold", c.table_threshold);

  if (auto f = root.child("fsm")) {
    Section s(*f, "fsm");
    s.read("max_iterations", c.optimizer.fsm.max_iterations);
    s.read("streak_threshold", c.optimizer.fsm.streak_threshold);
    s.done();
  }
  if (auto n = root.child("neighbor")) {
    Section s(*n, "neighbor");
    s.read("pool_size", c.optimizer.neighbor.pool_size);
    read_budget(s, "search", c.optimizer.neighbor.search);
    read_budget(s, "search_plus_plus", c.optimizer.neighbor.search_plus_plus);
    s.done();
  }
  if (auto r = root.child("rules")) {
    Section s(*r, "rules");
    s.read("min_phonetic_similarity", c.optimizer.rules.min_phonetic_similarity);
    s.read("max_length_deviation_ratio", c.optimizer.rules.max_length_deviation_ratio);
    s.read("max_insertion_plus_deletion_ratio", c.optimizer.rules.max_insertion_plus_deletion_ratio);
    s.done();
  }
  std::string prompts_dir;
  if (auto b = root.child("backend")) {
    Section s(*b, "backend");
    std::string kind = std::string(to_string(c.backend.kind));
    s.read("kind", kind);
    c.backend.kind = parse_backend_kind(kind);
    s.read("endpoint_url", c.backend.endpoint_url);
    s.read("model_name", c.backend.model_name);
    std::int64_t timeout_ms = c.backend.request_timeout.count();
    std::int64_t backoff_ms = c.backend.backoff_base.count();
    s.read("request_timeout_ms", timeout_ms);
    s.read("backoff_base_ms", backoff_ms);
    c.backend.request_timeout = std::chrono::milliseconds(timeout_ms);
    c.backend.backoff_base = std::chrono::milliseconds(backoff_ms);
    s.read("max_parallel_requests", c.backend.max_parallel_requests);
    s.read("retry_budget", c.backend.retry_budget);
    s.read("f_max", c.backend.f_max);
    s.read("prompts_dir", prompts_dir);
    s.done();
  }
  root.done();

  const std::filesystem::path base = c.data_dir.empty() ? lir::data_dir() : c.data_dir;
  c.backend.templates = PromptTemplates::load(prompts_dir.empty() ? base / "prompts" : std::filesystem::path(prompts_dir));
  c.validate();
  return c;
}

HarnessConfig HarnessConfig::load(const std::filesystem::path& path) {
  auto in = open_input(path);
  const json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError(path.string() + " is not valid JSON");
  return from_json(j);
}

void HarnessConfig::validate() const {
  optimizer.validate();
  if (!(table_threshold >= 0.0 && table_threshold <= 1.0)) throw ConfigError("table_threshold must be in [0,1]");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (backend.max_parallel_requests < 1) throw ConfigError("backend.max_parallel_requests must be >= 1");
  if (!(backend.f_max > 0.0)) throw ConfigError("backend.f_max must be positive");
}

Resources::Resources(Phonetics phonetics, ZhSegmenter segmenter, double table_threshold)
    : phonetics_(std::move(phonetics)),
      segmenter_(std::make_shared<const ZhSegmenter>(std::move(segmenter))),
      zh_(SubstitutionTable::build(phonetics_, Language::zh, table_threshold)),
      en_(SubstitutionTable::build(phonetics_, Language::en, table_threshold)) {}

Resources Resources::from_config(const HarnessConfig& config) {
  if (config.data_dir.empty()) {
    return Resources(Phonetics::bundled(), ZhSegmenter::bundled(), config.table_threshold);
  }
  return Resources(Phonetics::load(config.data_dir), ZhSegmenter::load(config.data_dir / "zh_words.txt"),
                   config.table_threshold);
}

BackendPool::BackendPool(const BackendProfile& profile, const Resources& resources)
    : profile_(profile), resources_(resources) {
  profile_.validate();
  switch (profile_.kind) {
    case BackendKind::live_http:
      shared_ = std::make_shared<HttpBackend>(profile_);
      break;
    case BackendKind::heuristic:
      shared_ = std::make_shared<HeuristicBackend>(resources_.phonetics(), resources_.segmenter(), profile_.f_max,
                                                   profile_.max_parallel_requests);
      break;
    case BackendKind::oracle:
      break;
  }
}

std::shared_ptr<const Backend> BackendPool::for_record(const CorpusRecord& record) const {
  if (shared_) return shared_;
  if (!record.reference) throw MissingReference("record '" + record.id + "' has no reference for the oracle backend");
  return std::make_shared<OracleBackend>(Transcript{*record.reference, record.language}, resources_.phonetics(),
                                         profile_.f_max, profile_.max_parallel_requests);
}

CallStats BackendPool::stats() const { return shared_ ? shared_->stats() : CallStats{}; }

// ---------------------------------------------------------------- runs

json to_json(const RecordOutput& o, bool include_wall_time) {
  json j = {{"id", o.id}, {"language", to_string(o.language)}, {"output", o.output}};
  if (o.run) j["trace"] = to_json(*o.run, include_wall_time)["trace"];
  return j;
}

std::map<std::string, std::string> read_outputs(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::map<std::string, std::string> out;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw SchemaViolation(n, "", "invalid JSON object");
    require_string(j, "id", n);
    require_string(j, "output", n);
    if (!out.emplace(j["id"].get<std::string>(), j["output"].get<std::string>()).second) {
      throw SchemaViolation(n, "id", "duplicate id");
    }
  }
  return out;
}

void write_outputs(const std::filesystem::path& path, std::span<const RecordOutput> outputs) {
  auto out = open_output(path);
  for (const auto& o : outputs) {
    out << json{{"id", o.id}, {"language", to_string(o.language)}, {"output", o.output}}.dump() << '\n';
  }
  finish(out, path);
}

void write_traces(const std::filesystem::path& path, std::span<const RecordOutput> outputs, bool include_wall_time) {
  auto out = open_output(path);
  for (const auto& o : outputs) {
    if (!o.run) continue;
    json j = {{"id", o.id}, {"language", to_string(o.language)}, {"final", o.output}};
    j["trace"] = to_json(*o.run, include_wall_time)["trace"];
    out << j.dump() << '\n';
  }
  finish(out, path);
}

namespace {

void sort_by_id(std::vector<RecordOutput>& outputs) {
  std::sort(outputs.begin(), outputs.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
}

}  // namespace

std::vector<RecordOutput> correct_corpus(std::span<const CorpusRecord> records, const HarnessConfig& config,
                                         const Resources& resources, const BackendPool& backends) {
  std::vector<RecordOutput> outputs(records.size());
  parallel_for(records.size(), config.workers, [&](std::size_t i) {
    const CorpusRecord& r = records[i];
    const auto backend = backends.for_record(r);
    RunResult result = run({r.hypothesis, r.language}, config.optimizer, *backend, resources.table(r.language),
                           derive_seed(config.seed, r.id), resources.phonetics());
    outputs[i] = {r.id, r.language, result.final.text, std::move(result)};
  });
  sort_by_id(outputs);
  return outputs;
}

Transcript baseline_direct(const CorpusRecord& record, const Backend& backend) {
  const Transcript hyp{record.hypothesis, record.language};
  try {
    return backend.correct(Candidate::from(hyp, Provenance::original), hyp).transcript();
  } catch (const Error& e) {
    spdlog::warn("record {}: correction failed, keeping the hypothesis ({})", record.id, e.what());
    return hyp;
  }
}

Transcript baseline_nbest(const CorpusRecord& record, std::size_t n, const Backend& backend) {
  if (n < 1) throw ConfigError("n-best size must be >= 1");
  if (!record.nbest) throw MissingNBest("record '" + record.id + "' has no nbest list");
  if (record.nbest->size() < n) {
    throw MissingNBest(fmt::format("record '{}' has {} n-best entries, {} requested", record.id, record.nbest->size(), n));
  }
  const Transcript top{record.nbest->front(), record.language};
  if (n == 1) {
    CorpusRecord single = record;
    single.hypothesis = top.text;
    return baseline_direct(single, backend);
  }
  std::vector<Candidate> members;
  for (std::size_t i = 0; i < n; ++i) {
    members.push_back(Candidate::from({(*record.nbest)[i], record.language}, Provenance::original));
  }
  try {
    return backend.fuse(top, members).transcript();
  } catch (const Error& e) {
    spdlog::warn("record {}: fusion failed, keeping the top hypothesis ({})", record.id, e.what());
    return top;
  }
}

std::vector<RecordOutput> baseline_corpus(std::span<const CorpusRecord> records, BaselineMode mode, std::size_t n,
                                          const HarnessConfig& config, const BackendPool& backends) {
  std::vector<RecordOutput> outputs(records.size());
  parallel_for(records.size(), config.workers, [&](std::size_t i) {
    const CorpusRecord& r = records[i];
    const auto backend = backends.for_record(r);
    const Transcript t = mode == BaselineMode::direct ? baseline_direct(r, *backend) : baseline_nbest(r, n, *backend);
    outputs[i] = {r.id, r.language, t.text, std::nullopt};
  });
  sort_by_id(outputs);
  return outputs;
}

std::vector<CorpusRecord> inject_corpus(std::span<const CorpusRecord> records, const NoiseProfile& profile,
                                        const Resources& resources) {
  std::vector<CorpusRecord> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    NoiseProfile p = profile;
    p.seed = derive_seed(profile.seed, r.id);
    const Transcript clean{r.reference.value_or(r.hypothesis), r.language};
    CorpusRecord noisy = r;
    noisy.hypothesis = corrupt(clean, p, resources.table(r.language)).noisy.text;
    noisy.nbest.reset();
    out.push_back(std::move(noisy));
  }
  return out;
}

// ---------------------------------------------------------------- evaluation

EvalReport evaluate(std::span<const CorpusRecord> records, const std::map<std::string, std::string>& outputs,
                    const ZhSegmenter& segmenter) {
  EvalReport report;
  for (const auto& r : records) {
    if (!r.reference) throw MissingReference("record '" + r.id + "' has no reference");
    auto it = outputs.find(r.id);
    if (it == outputs.end()) throw SchemaViolation(0, "id", "no output for record '" + r.id + "'");
    RecordMetrics m;
    m.id = r.id;
    m.language = r.language;
    m.cer_before_parts = cer_parts(*r.reference, r.hypothesis, r.language);
    m.cer_after_parts = cer_parts(*r.reference, it->second, r.language);
    m.wer_before_parts = wer_parts(*r.reference, r.hypothesis, r.language, segmenter);
    m.wer_after_parts = wer_parts(*r.reference, it->second, r.language, segmenter);
    m.cer_before = m.cer_before_parts.rate();
    m.cer_after = m.cer_after_parts.rate();
    m.wer_before = m.wer_before_parts.rate();
    m.wer_after = m.wer_after_parts.rate();
    report.records.push_back(std::move(m));
  }
  std::sort(report.records.begin(), report.records.end(), [](const auto& a, const auto& b) { return a.id < b.id; });

  struct Acc {
    std::size_t n = 0;
    RateSummary sum;
    RateParts cb, ca, wb, wa;
  };
  std::map<std::string, Acc> acc;
  for (const auto& m : report.records) {
    for (const std::string& group : {std::string("all"), std::string(to_string(m.language))}) {
      Acc& a = acc[group];
      ++a.n;
      a.sum.cer_before += m.cer_before;
      a.sum.cer_after += m.cer_after;
      a.sum.wer_before += m.wer_before;
      a.sum.wer_after += m.wer_after;
      for (auto [dst, src] : {std::pair{&a.cb, &m.cer_before_parts}, std::pair{&a.ca, &m.cer_after_parts},
                              std::pair{&a.wb, &m.wer_before_parts}, std::pair{&a.wa, &m.wer_after_parts}}) {
        dst->edits += src->edits;
        dst->reference_length += src->reference_length;
      }
    }
  }
  for (const auto& [group, a] : acc) {
    const double n = static_cast<double>(a.n);
    GroupReport g;
    g.records = a.n;
    g.macro = {a.sum.cer_before / n, a.sum.cer_after / n, a.sum.wer_before / n, a.sum.wer_after / n};
    g.micro = {a.cb.rate(), a.ca.rate(), a.wb.rate(), a.wa.rate()};
    report.groups.emplace(group, g);
  }
  return report;
}

namespace {

json summary_json(const RateSummary& s) {
  return {{"cer_before", s.cer_before}, {"cer_after", s.cer_after}, {"delta_cer", s.delta_cer()},
          {"wer_before", s.wer_before}, {"wer_after", s.wer_after}, {"delta_wer", s.delta_wer()}};
}

}  // namespace

json to_json(const EvalReport& report) {
  json records = json::array();
  for (const auto& m : report.records) {
    records.push_back({{"id", m.id},
                       {"language", to_string(m.language)},
                       {"cer_before", m.cer_before},
                       {"cer_after", m.cer_after},
                       {"delta_cer", m.cer_before - m.cer_after},
                       {"wer_before", m.wer_before},
                       {"wer_after", m.wer_after},
                       {"delta_wer", m.wer_before - m.wer_after}});
  }
  json groups = json::object();
  for (const auto& [name, g] : report.groups) {
    groups[name] = {{"records", g.records}, {"macro", summary_json(g.macro)}, {"micro", summary_json(g.micro)}};
  }
  return {{"aggregation", "macro = mean of per-record rates; micro = total edits / total reference tokens"},
          {"groups", std::move(groups)},
          {"records", std::move(records)}};
}

std::string to_text(const EvalReport& report) {
  std::string out;
  const auto header = fmt::format("{:<8} {:>7} {:<6} {:>10} {:>10} {:>8} {:>10} {:>10} {:>8}\n", "group", "records",
                                  "avg", "CER before", "CER after", "dCER", "WER before", "WER after", "dWER");
  out += header;
  for (const auto& [name, g] : report.groups) {
    for (const auto& [label, s] : {std::pair{"macro", &g.macro}, std::pair{"micro", &g.micro}}) {
      out += fmt::format("{:<8} {:>7} {:<6} {:>10} {:>10} {:>8} {:>10} {:>10} {:>8}\n", name, g.records, label,
                         fixed2(s->cer_before), fixed2(s->cer_after), fixed2(s->delta_cer()), fixed2(s->wer_before),
                         fixed2(s->wer_after), fixed2(s->delta_wer()));
    }
  }
  out += "\n";
  out += fmt::format("{:<16} {:<4} {:>10} {:>10} {:>10} {:>10}\n", "id", "lang", "CER before", "CER after",
                     "WER before", "WER after");
  for (const auto& m : report.records) {
    out += fmt::format("{:<16} {:<4} {:>10} {:>10} {:>10} {:>10}\n", m.id, to_string(m.language),
                       fixed2(m.cer_before), fixed2(m.cer_after), fixed2(m.wer_before), fixed2(m.wer_after));
  }
  out += "\nrates in percent; macro = mean of per-record rates, micro = total edits / total reference tokens\n";
  return out;
}

// ---------------------------------------------------------------- convergence

std::vector<ConvergenceRow> convergence_rows(const std::string& id, const std::string& reference, Language language,
                                             const json& trace, const ZhSegmenter& segmenter) {
  std::vector<ConvergenceRow> rows;
  for (const auto& it : trace) {
    ConvergenceRow row;
    row.record_id = id;
    row.iteration = it.at("iteration").get<std::size_t>();
    const std::string accepted = it.at("accepted").get<std::string>();
    row.cer = cer(reference, accepted, language);
    row.wer = wer(reference, accepted, language, segmenter);
    row.score = it.at("accepted_score").get<double>();
    row.fsm_state = parse_search_state(it.at("fsm_before").at("state").get<std::string>());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string convergence_csv(std::span<const ConvergenceRow> rows) {
  std::string out = "record_id,iteration,cer,wer,score,fsm_state\n";
  for (const auto& r : rows) {
    std::string id = r.record_id;
    if (id.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : id) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      id = quoted + "\"";
    }
    out += fmt::format("{},{},{},{},{},{}\n", id, r.iteration, format_number(r.cer), format_number(r.wer),
                       format_number(r.score), to_string(r.fsm_state));
  }
  return out;
}

}  // namespace lir

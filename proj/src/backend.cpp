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

#include "lir/backend.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <httplib.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "lir/assets.hpp"
#include "lir/errors.hpp"
#include "lir/kernels.hpp"
#include "lir/rules.hpp"

namespace lir {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Surface units with a non-empty key, and their positions in split_units().
struct KeyedUnits {
  std::vector<std::string> units;
  std::vector<std::string> keys;
  std::vector<std::size_t> slots;
};

KeyedUnits keyed_units(std::string_view text, Language language) {
  KeyedUnits out;
  out.units = split_units(text, language);
  for (std::size_t i = 0; i < out.units.size(); ++i) {
    std::string k = unit_key(out.units[i], language);
    if (k.empty()) continue;
    out.keys.push_back(std::move(k));
    out.slots.push_back(i);
  }
  return out;
}

std::vector<kernels::Token> char_tokens(std::string_view text, Language language) {
  const std::u32string cps = cer_tokens(text, language);
  return {cps.begin(), cps.end()};
}

// Finds the first balanced {...} span that parses as a JSON object.
std::optional<json> first_json_object(std::string_view s) {
  for (std::size_t start = s.find('{'); start != std::string_view::npos; start = s.find('{', start + 1)) {
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (std::size_t i = start; i < s.size(); ++i) {
      const char c = s[i];
      if (in_string) {
        if (escaped) {
          escaped = false;
        } else if (c == '\\') {
          escaped = true;
        } else if (c == '"') {
          in_string = false;
        }
        continue;
      }
      if (c == '"') {
        in_string = true;
      } else if (c == '{') {
        ++depth;
      } else if (c == '}' && --depth == 0) {
        json j = json::parse(s.substr(start, i - start + 1), nullptr, false);
        if (!j.is_discarded() && j.is_object()) return j;
        break;
      }
    }
  }
  return std::nullopt;
}

Candidate tagged(std::string text, Language language, Provenance provenance) {
  return {std::move(text), language, provenance, std::nullopt, std::nullopt};
}

void require_text(const std::string& text, Language language) {
  if (normalize(text, language).empty()) throw MalformedResponse("backend returned an empty transcript");
}

}  // namespace

std::string_view to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::live_http:
      return "live-http";
    case BackendKind::oracle:
      return "oracle";
    case BackendKind::heuristic:
      break;
  }
  return "heuristic";
}

BackendKind parse_backend_kind(std::string_view name) {
  if (name == "live" || name == "live-http") return BackendKind::live_http;
  if (name == "oracle") return BackendKind::oracle;
  if (name == "heuristic") return BackendKind::heuristic;
  throw ConfigError("unknown backend '" + std::string(name) + "'");
}

PromptTemplates PromptTemplates::load(const std::filesystem::path& dir) {
  return {read_file(dir / "correct.txt"), read_file(dir / "fuse.txt"), read_file(dir / "score.txt")};
}

PromptTemplates PromptTemplates::bundled() { return load(data_dir() / "prompts"); }

std::string render_template(std::string_view tmpl, const std::map<std::string, std::string>& vars) {
  std::string out;
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    const std::size_t open = tmpl.find("{{", pos);
    if (open == std::string_view::npos) break;
    const std::size_t close = tmpl.find("}}", open + 2);
    if (close == std::string_view::npos) break;
    out.append(tmpl.substr(pos, open - pos));
    const std::string name(trim(tmpl.substr(open + 2, close - open - 2)));
    if (auto it = vars.find(name); it != vars.end()) {
      out += it->second;
    } else {
      out.append(tmpl.substr(open, close + 2 - open));
    }
    pos = close + 2;
  }
  out.append(tmpl.substr(pos));
  return out;
}

void BackendProfile::validate() const {
  if (kind == BackendKind::live_http && (endpoint_url.empty() || model_name.empty())) {
    throw ConfigError("live-http backend requires endpoint_url and model_name");
  }
  if (max_parallel_requests < 1) throw ConfigError("backend.max_parallel_requests must be >= 1");
  if (!(f_max > 0.0) || !std::isfinite(f_max)) throw ConfigError("backend.f_max must be positive");
  if (request_timeout.count() <= 0) throw ConfigError("backend.request_timeout_ms must be positive");
}

// ---------------------------------------------------------------- oracle

OracleBackend::OracleBackend(Transcript reference, const Phonetics& phonetics, double f_max,
                             std::size_t max_parallel)
    : Backend(f_max), reference_(std::move(reference)), phonetics_(phonetics), max_parallel_(max_parallel) {
  if (normalize(reference_.text, reference_.language).empty()) throw EmptyReference();
}

Candidate OracleBackend::correct(const Candidate& candidate, const Transcript&) const {
  if (candidate.language != reference_.language) throw LanguageMismatch("candidate and reference languages differ");
  const Language lang = candidate.language;
  KeyedUnits hyp = keyed_units(candidate.text, lang);
  if (hyp.keys.empty()) throw EmptyTranscript();
  const KeyedUnits ref = keyed_units(reference_.text, lang);

  const auto steps = align(std::span<const std::string>(ref.keys), std::span<const std::string>(hyp.keys));
  for (const auto& s : steps) {
    if (s.op != EditOp::substitution) continue;
    const std::string& want = ref.keys[s.ref_index];
    const std::string& have = hyp.keys[s.hyp_index];
    const auto pa = phonetics_.g2p(have, lang);
    const auto pb = phonetics_.g2p(want, lang);
    const double sim = unknown_pronunciation(pa) && unknown_pronunciation(pb) ? kUnknownPairSimilarity
                                                                                : phonetic_similarity(pa, pb);
    if (sim < 0.5) continue;
    std::string& slot = hyp.units[hyp.slots[s.hyp_index]];
    slot = lang == Language::en ? restyle_word(slot, want) : ref.units[ref.slots[s.ref_index]];
  }
  return tagged(join_units(hyp.units, lang), lang, Provenance::corrected);
}

Candidate OracleBackend::fuse(const Transcript&, std::span<const Candidate> corrected) const {
  if (corrected.empty()) throw Error("fuse() needs at least one candidate");
  const std::u32string ref = cer_tokens(reference_.text, reference_.language);
  std::size_t best = 0;
  std::size_t best_distance = SIZE_MAX;
  for (std::size_t i = 0; i < corrected.size(); ++i) {
    const std::size_t d = codepoint_distance(ref, cer_tokens(corrected[i].text, corrected[i].language));
    if (d < best_distance) {
      best_distance = d;
      best = i;
    }
  }
  return tagged(corrected[best].text, corrected[best].language, Provenance::fused);
}

Score OracleBackend::score(const Candidate& candidate) const {
  if (candidate.language != reference_.language) throw LanguageMismatch("candidate and reference languages differ");
  const double rate = cer(reference_.text, candidate.text, reference_.language);
  return {f_max() * (1.0 - std::min(1.0, rate)), f_max(), fmt::format("cer={:.4f}", rate)};
}

// ---------------------------------------------------------------- heuristic

HeuristicBackend::HeuristicBackend(const Phonetics& phonetics, const ZhSegmenter& segmenter, double f_max,
                                   std::size_t max_parallel)
    : Backend(f_max), phonetics_(phonetics), segmenter_(segmenter), max_parallel_(max_parallel) {}

Candidate HeuristicBackend::correct(const Candidate& candidate, const Transcript&) const {
  if (normalize(candidate.text, candidate.language).empty()) throw EmptyTranscript();
  return tagged(candidate.text, candidate.language, Provenance::corrected);
}

Candidate HeuristicBackend::fuse(const Transcript& current, std::span<const Candidate> corrected) const {
  if (corrected.empty()) throw Error("fuse() needs at least one candidate");
  const auto cur = char_tokens(current.text, current.language);
  std::size_t best = 0;
  std::size_t best_lcs = 0;
  for (std::size_t i = 0; i < corrected.size(); ++i) {
    const std::size_t l = kernels::lcs_length(cur, char_tokens(corrected[i].text, corrected[i].language));
    if (i == 0 || l > best_lcs) {
      best_lcs = l;
      best = i;
    }
  }
  return tagged(corrected[best].text, corrected[best].language, Provenance::fused);
}

double HeuristicBackend::coverage(std::string_view text, Language language, const Phonetics& phonetics,
                                  const ZhSegmenter& segmenter) {
  std::size_t total = 0;
  std::size_t covered = 0;
  if (language == Language::en) {
    for (const auto& u : split_units(text, language)) {
      const std::string k = unit_key(u, language);
      if (k.empty()) continue;
      ++total;
      if (phonetics.in_lexicon(k)) ++covered;
    }
  } else {
    for (const auto& word : segmenter.segment(text)) {
      const std::size_t n = decode_utf8(word).size();
      total += n;
      if (n > 1 && segmenter.contains(decode_utf8(word))) covered += n;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(covered) / static_cast<double>(total);
}

Score HeuristicBackend::score(const Candidate& candidate) const {
  const double c = coverage(candidate.text, candidate.language, phonetics_, segmenter_);
  return {f_max() * c, f_max(), fmt::format("coverage={:.4f}", c)};
}

// ---------------------------------------------------------------- parsing

std::string parse_transcript_reply(std::string_view content) {
  if (auto obj = first_json_object(content)) {
    auto it = obj->find("transcript");
    if (it != obj->end() && it->is_string()) {
      std::string text(trim(it->get<std::string>()));
      if (!text.empty()) return text;
    }
  }
  std::size_t pos = 0;
  while (pos <= content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    const std::string_view line = content.substr(pos, eol - pos);
    const std::size_t label = lower_ascii(line).find("transcript:");
    if (label != std::string::npos) {
      std::string_view rest = trim(line.substr(label + 11));
      if (rest.size() >= 2 && rest.front() == '"' && rest.back() == '"') rest = trim(rest.substr(1, rest.size() - 2));
      if (!rest.empty()) return std::string(rest);
    }
    pos = eol + 1;
  }
  throw MalformedResponse("reply carries no transcript");
}

Score parse_score_reply(std::string_view content, double f_max) {
  auto clamp = [&](double v, std::string rationale) {
    return Score{std::clamp(v, 0.0, f_max), f_max, std::move(rationale)};
  };
  if (auto obj = first_json_object(content)) {
    auto it = obj->find("score");
    std::optional<double> value;
    if (it != obj->end() && it->is_number()) {
      value = it->get<double>();
    } else if (it != obj->end() && it->is_string()) {
      try {
        value = std::stod(it->get<std::string>());
      } catch (const std::exception&) {
      }
    }
    if (value && std::isfinite(*value)) {
      std::string rationale;
      for (const char* key : {"rationale", "reason", "reasoning"}) {
        auto r = obj->find(key);
        if (r != obj->end() && r->is_string()) {
          rationale = r->get<std::string>();
          break;
        }
      }
      return clamp(*value, std::move(rationale));
    }
  }

  static const std::regex kScoreLine(R"(score\s*(?::|=|：)?\s*(-?\d+(?:\.\d+)?)(?:\s*/\s*\d+)?)", std::regex::icase);
  const std::string text(content);
  std::smatch m;
  if (std::regex_search(text, m, kScoreLine)) {
    const double value = std::stod(m[1].str());
    std::string_view rest(text);
    rest = rest.substr(static_cast<std::size_t>(m.position(0) + m.length(0)));
    rest = rest.substr(0, rest.find('\n'));
    static constexpr std::string_view kSeparators[] = {"—", "–", "-", ":", "|", ",", ";", "."};
    for (bool stripped = true; stripped;) {
      stripped = false;
      rest = trim(rest);
      for (auto sep : kSeparators) {
        if (rest.substr(0, sep.size()) == sep) {
          rest.remove_prefix(sep.size());
          stripped = true;
        }
      }
    }
    return clamp(value, std::string(rest));
  }
  return {0.0, f_max, "unparseable"};
}

// ---------------------------------------------------------------- live http

HttpBackend::HttpBackend(BackendProfile profile) : Backend(profile.f_max), profile_(std::move(profile)) {
  profile_.validate();
  const std::string& url = profile_.endpoint_url;
  const std::size_t scheme = url.find("://");
  if (scheme == std::string::npos) throw ConfigError("endpoint_url must start with http:// or https://");
  const std::size_t slash = url.find('/', scheme + 3);
  origin_ = url.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : url.substr(slash);
}

std::string HttpBackend::complete(const std::string& prompt) const {
  ++attempted_;
  const json body = {{"model", profile_.model_name},
                     {"messages", json::array({{{"role", "user"}, {"content", prompt}}})},
                     {"temperature", 0}};
  const std::string payload = body.dump();
  httplib::Headers headers;
  if (!profile_.api_key.empty()) headers.emplace("Authorization", "Bearer " + profile_.api_key);

  const auto timeout = profile_.request_timeout;
  std::string last_error;
  for (std::size_t attempt = 0; attempt <= profile_.retry_budget; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(profile_.backoff_base * (1LL << std::min<std::size_t>(attempt - 1, 20)));
    }
    httplib::Client client(origin_);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    auto res = client.Post(path_, headers, payload, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      spdlog::debug("{} (attempt {})", last_error, attempt + 1);
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      spdlog::debug("{} (attempt {})", last_error, attempt + 1);
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      throw BackendUnavailable("HTTP " + std::to_string(res->status) + " from " + profile_.endpoint_url);
    }
    const json reply = json::parse(res->body, nullptr, false);
    if (reply.is_discarded()) throw MalformedResponse("reply is not JSON");
    const json* content = nullptr;
    if (reply.contains("choices") && reply["choices"].is_array() && !reply["choices"].empty()) {
      const json& choice = reply["choices"][0];
      if (choice.contains("message") && choice["message"].contains("content")) content = &choice["message"]["content"];
    }
    if (content == nullptr || !content->is_string()) throw MalformedResponse("reply has no choices[0].message.content");
    ++succeeded_;
    return content->get<std::string>();
  }
  throw BackendUnavailable(last_error + " from " + profile_.endpoint_url);
}

Candidate HttpBackend::correct(const Candidate& candidate, const Transcript& context) const {
  const std::string prompt =
      render_template(profile_.templates.correct, {{"candidate", candidate.text}, {"context", context.text}});
  std::string text = parse_transcript_reply(complete(prompt));
  require_text(text, candidate.language);
  return tagged(std::move(text), candidate.language, Provenance::corrected);
}

Candidate HttpBackend::fuse(const Transcript& current, std::span<const Candidate> corrected) const {
  if (corrected.empty()) throw Error("fuse() needs at least one candidate");
  std::string list;
  for (std::size_t i = 0; i < corrected.size(); ++i) list += fmt::format("{}. {}\n", i + 1, corrected[i].text);
  const std::string prompt =
      render_template(profile_.templates.fuse, {{"candidates", list}, {"context", current.text}});
  std::string text = parse_transcript_reply(complete(prompt));
  require_text(text, current.language);
  return tagged(std::move(text), current.language, Provenance::fused);
}

Score HttpBackend::score(const Candidate& candidate) const {
  const std::string prompt = render_template(profile_.templates.score, {{"candidate", candidate.text}});
  return parse_score_reply(complete(prompt), f_max());
}

std::unique_ptr<Backend> make_backend(const BackendProfile& profile, const std::optional<Transcript>& reference) {
  profile.validate();
  switch (profile.kind) {
    case BackendKind::live_http:
      return std::make_unique<HttpBackend>(profile);
    case BackendKind::oracle:
      if (!reference) throw MissingReference("the oracle backend needs a reference transcript");
      return std::make_unique<OracleBackend>(*reference, Phonetics::bundled(), profile.f_max,
                                             profile.max_parallel_requests);
    case BackendKind::heuristic:
      break;
  }
  return std::make_unique<HeuristicBackend>(Phonetics::bundled(), ZhSegmenter::bundled(), profile.f_max,
                                            profile.max_parallel_requests);
}

}  // namespace lir

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

#include "lir/optimizer.hpp"

#include <optional>
#include <unordered_set>

#include <spdlog/spdlog.h>

#include "lir/errors.hpp"
#include "lir/parallel.hpp"

namespace lir {

using nlohmann::json;

void OptimizerConfig::validate() const {
  fsm.validate();
  neighbor.validate();
  rules.validate();
}

AcceptResult accept(const Candidate& current, std::span<const Candidate> survivors) {
  if (!current.score) throw Error("accept() needs a scored current candidate");
  const Candidate* best = nullptr;
  for (const auto& c : survivors) {
    if (!c.score) continue;
    if (best == nullptr || c.score->value > best->score->value) best = &c;
  }
  if (best == nullptr || !(best->score->value > current.score->value)) return {current, StepEvent::nothing_changed};
  return {*best, best->text == current.text ? StepEvent::nothing_changed : StepEvent::changed};
}

RunResult run(const Transcript& initial, const OptimizerConfig& config, const Backend& backend,
              const SubstitutionTable& table, std::uint64_t seed, const Phonetics& phonetics) {
  config.validate();
  if (normalize(initial.text, initial.language).empty()) throw EmptyTranscript();

  RunResult result{initial, {}};
  Transcript current = initial;
  std::optional<Score> current_score;
  FsmSnapshot fsm = lir::initial(config.fsm);
  const std::size_t workers = std::max<std::size_t>(1, backend.max_parallel());

  for (std::size_t t = 1; !fsm.terminated(); ++t) {
    const auto started = std::chrono::steady_clock::now();
    IterationTrace it;
    it.iteration = t;
    it.fsm_before = fsm;

    // Imagining: neighbors of the current transcript under the state's policy.
    const NeighborPolicy policy = config.neighbor.policy_for(fsm.state, seed ^ t);
    const CandidateSet neighbors = generate(current, policy, table);
    it.generated = neighbors.members.size();

    std::vector<std::optional<Candidate>> corrected(neighbors.members.size());
    std::atomic<std::size_t> failures{0};
    parallel_for(neighbors.members.size(), workers, [&](std::size_t i) {
      try {
        corrected[i] = backend.correct(neighbors.members[i], current);
      } catch (const Error& e) {
        ++failures;
        spdlog::debug("correct failed: {}", e.what());
      }
    });

    std::vector<Candidate> pool;
    std::vector<Candidate> ok;
    for (std::size_t i = 0; i < corrected.size(); ++i) {
      if (corrected[i]) {
        pool.push_back(*corrected[i]);
        ok.push_back(*corrected[i]);
      } else {
        pool.push_back(neighbors.members[i]);
      }
    }
    pool.push_back(Candidate::from(current, Provenance::original));
    if (ok.size() > 1) {
      try {
        pool.push_back(backend.fuse(current, ok));
      } catch (const Error& e) {
        ++failures;
        spdlog::debug("fuse failed: {}", e.what());
      }
    }

    // S': first occurrence of each text wins.
    std::vector<Candidate> assembled;
    std::unordered_set<std::string> seen;
    for (auto& c : pool) {
      if (c.language != current.language) continue;
      if (seen.insert(c.text).second) assembled.push_back(std::move(c));
    }
    it.assembled = assembled.size();

    std::vector<Candidate> survivors;
    for (auto& c : assembled) {
      if (c.text == current.text) {
        survivors.push_back(std::move(c));
        continue;
      }
      RuleVerdict v;
      try {
        v = check(current, c, config.rules, phonetics);
      } catch (const Error&) {
        v.accepted = false;
      }
      if (v.accepted) {
        survivors.push_back(std::move(c));
      } else {
        it.rejected.push_back({std::move(c), std::move(v.violations)});
      }
    }
    it.surviving = survivors.size();

    std::vector<std::optional<Score>> scores(survivors.size());
    parallel_for(survivors.size(), workers, [&](std::size_t i) {
      try {
        scores[i] = backend.score(survivors[i]);
      } catch (const Error& e) {
        ++failures;
        spdlog::debug("score failed: {}", e.what());
      }
    });

    Candidate current_candidate = Candidate::from(current, Provenance::original);
    std::vector<Candidate> others;
    for (std::size_t i = 0; i < survivors.size(); ++i) {
      const bool is_current = survivors[i].text == current.text;
      if (is_current) {
        // A failed rescore falls back to the previous score.
        if (scores[i]) {
          current_score = scores[i];
        } else if (!current_score) {
          current_score = Score{0.0, backend.f_max(), "unavailable"};
        }
        current_candidate = survivors[i];
        current_candidate.score = current_score;
        current_candidate.rationale = current_score->rationale;
        it.scored.push_back({current_candidate, true});
        continue;
      }
      if (!scores[i]) continue;
      Candidate c = survivors[i];
      c.score = scores[i];
      c.rationale = scores[i]->rationale;
      it.scored.push_back({c, false});
      others.push_back(std::move(c));
    }
    it.backend_failures = failures.load();

    // Refining: greedy acceptance.
    const AcceptResult decision = accept(current_candidate, others);
    it.best = current_candidate;
    for (const auto& s : it.scored) {
      if (s.candidate.score->value > it.best.score->value) it.best = s.candidate;
    }
    current = decision.next.transcript();
    current_score = decision.next.score;
    it.accepted = current;
    it.accepted_score = *current_score;
    it.event = decision.event;
    fsm = step(fsm, decision.event);
    it.fsm_after = fsm;
    it.wall_time = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - started);
    result.trace.push_back(std::move(it));
  }
  result.final = current;
  return result;
}

RunResult run(const Transcript& initial, const OptimizerConfig& config, const Backend& backend,
              const SubstitutionTable& table, std::uint64_t seed) {
  return run(initial, config, backend, table, seed, Phonetics::bundled());
}

json to_json(const Candidate& candidate) {
  json j = {{"text", candidate.text},
            {"language", to_string(candidate.language)},
            {"provenance", to_string(candidate.provenance)}};
  if (candidate.score) {
    j["score"] = candidate.score->value;
    j["rationale"] = candidate.score->rationale;
  }
  return j;
}

json to_json(const FsmSnapshot& s) {
  return {{"state", to_string(s.state)}, {"iteration", s.iteration}, {"no_change_streak", s.no_change_streak}};
}

json to_json(const IterationTrace& t, bool include_wall_time) {
  json scored = json::array();
  for (const auto& s : t.scored) {
    json c = to_json(s.candidate);
    c["is_current"] = s.is_current;
    scored.push_back(std::move(c));
  }
  json rejected = json::array();
  for (const auto& r : t.rejected) {
    json c = to_json(r.candidate);
    json violations = json::array();
    for (const auto& v : r.violations) {
      violations.push_back({{"rule", v.rule}, {"measured", v.measured}, {"threshold", v.threshold}});
    }
    c["violations"] = std::move(violations);
    rejected.push_back(std::move(c));
  }
  json j = {{"iteration", t.iteration},
            {"fsm_before", to_json(t.fsm_before)},
            {"fsm_after", to_json(t.fsm_after)},
            {"generated", t.generated},
            {"assembled", t.assembled},
            {"surviving", t.surviving},
            {"backend_failures", t.backend_failures},
            {"best", to_json(t.best)},
            {"accepted", t.accepted.text},
            {"accepted_score", t.accepted_score.value},
            {"accepted_rationale", t.accepted_score.rationale},
            {"event", to_string(t.event)},
            {"scored", std::move(scored)},
            {"rejected", std::move(rejected)}};
  if (include_wall_time) j["wall_time_ms"] = static_cast<double>(t.wall_time.count()) / 1000.0;
  return j;
}

json to_json(const RunResult& result, bool include_wall_time) {
  json trace = json::array();
  for (const auto& t : result.trace) trace.push_back(to_json(t, include_wall_time));
  return {{"final", result.final.text}, {"language", to_string(result.final.language)}, {"trace", std::move(trace)}};
}

}  // namespace lir

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

#include <doctest.h>

#include <random>

#include "lir/errors.hpp"
#include "lir/metrics.hpp"
#include "lir/rules.hpp"

using lir::Candidate;
using lir::Language;
using lir::Provenance;
using lir::RuleConfig;
using lir::Transcript;

namespace {

Candidate cand(const std::string& text, Language lang) { return {text, lang, Provenance::corrected, {}, {}}; }

const lir::RuleViolation* find(const lir::RuleVerdict& v, std::string_view rule) {
  for (const auto& x : v.violations) {
    if (x.rule == rule) return &x;
  }
  return nullptr;
}

}  // namespace

TEST_SUITE("rules") {
  TEST_CASE("identity passes") {
    const Transcript o{"我们明天见", Language::zh};
    const auto v = lir::check(o, cand(o.text, Language::zh), {});
    CHECK(v.accepted);
    CHECK(v.violations.empty());
  }

  TEST_CASE("length deviation of ten to thirteen words") {
    const Transcript o{"a b c d e f g h i j", Language::en};
    const std::string c = "a b c d e f g h i j k l m";
    // Three trailing insertions: deviation 3/10 and indel ratio 3/10.
    const auto counts = lir::edit_distance(lir::split_units(o.text, Language::en), lir::split_units(c, Language::en));
    CHECK(counts.insertions == 3);
    const auto v = lir::check(o, cand(c, Language::en), {});
    CHECK_FALSE(v.accepted);
    const auto* len = find(v, lir::kRuleLengthDeviation);
    REQUIRE(len != nullptr);
    CHECK(len->measured == doctest::Approx(0.3));
    CHECK(len->threshold == 0.2);
    const auto* indel = find(v, lir::kRuleInsertionDeletion);
    REQUIRE(indel != nullptr);
    CHECK(indel->measured == doctest::Approx(0.3));
  }

  TEST_CASE("homophone substitution passes") {
    const auto v = lir::check({"他来了", Language::zh}, cand("她来了", Language::zh), {});
    CHECK(v.accepted);
  }

  TEST_CASE("dissimilar substitution fails") {
    const auto v = lir::check({"他来了", Language::zh}, cand("我来了", Language::zh), {});
    CHECK_FALSE(v.accepted);
    const auto* ph = find(v, lir::kRulePhoneticSimilarity);
    REQUIRE(ph != nullptr);
    CHECK(ph->measured == 0.0);
    CHECK(ph->threshold == 0.5);
  }

  TEST_CASE("unknown pronunciations on both sides count as neutral") {
    const auto v = lir::check({"call 123 now", Language::en}, cand("call 456 now", Language::en), {});
    CHECK(v.accepted);
    RuleConfig strict;
    strict.min_phonetic_similarity = 0.6;
    const auto s = lir::check({"call 123 now", Language::en}, cand("call 456 now", Language::en), strict);
    REQUIRE_FALSE(s.accepted);
    CHECK(find(s, lir::kRulePhoneticSimilarity)->measured == lir::kUnknownPairSimilarity);
  }

  TEST_CASE("language mismatch") {
    CHECK_THROWS_AS(lir::check({"他", Language::zh}, cand("he", Language::en), {}), lir::LanguageMismatch);
  }

  TEST_CASE("filter keeps accepted members in order") {
    const Transcript o{"他来了吗", Language::zh};
    lir::CandidateSet set{o, {cand("她来了吗", Language::zh), cand("他来了吗他来了吗", Language::zh),
                              cand("它来了吗", Language::zh), cand(o.text, Language::zh)}};
    const auto out = lir::filter(o, set, {});
    REQUIRE(out.members.size() == 3);
    CHECK(out.members[0].text == "她来了吗");
    CHECK(out.members[1].text == "它来了吗");
    CHECK(out.members[2].text == o.text);
    CHECK(lir::filter(o, out, {}).members == out.members);
    CHECK(lir::filter(o, {o, {}}, {}).members.empty());
  }

  TEST_CASE("loosening thresholds never rejects more") {
    std::mt19937 rng(1);
    const std::vector<std::string> pool = {"他", "她", "来", "莱", "了", "我", "们", "是", "事", "市"};
    const Transcript o{"他来了我们是", Language::zh};
    for (int trial = 0; trial < 500; ++trial) {
      std::string c;
      const std::size_t len = 4 + rng() % 5;
      for (std::size_t i = 0; i < len; ++i) c += pool[rng() % pool.size()];
      RuleConfig tight{0.8, 0.1, 0.1};
      RuleConfig loose{0.4, 0.3, 0.3};
      const auto t = lir::check(o, cand(c, Language::zh), tight);
      const auto l = lir::check(o, cand(c, Language::zh), loose);
      if (t.accepted) CHECK(l.accepted);
      CHECK(t.violations.size() >= l.violations.size());
    }
  }

  TEST_CASE("config validation") {
    CHECK_THROWS_AS((RuleConfig{1.5, 0.2, 0.15}.validate()), lir::ConfigError);
    CHECK_THROWS_AS((RuleConfig{0.5, -0.1, 0.15}.validate()), lir::ConfigError);
    CHECK_NOTHROW(RuleConfig{}.validate());
  }
}

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

#include <algorithm>
#include <random>

#include "lir/assets.hpp"
#include "lir/errors.hpp"
#include "lir/phonetics.hpp"

using lir::Language;
using lir::PhonemeSequence;

namespace {

// Weighted edit distance where each pinyin token is split into a syllable
// sub-token and a tone sub-token; tone-only substitutions cost 0.3.
double oracle_zh_similarity(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  auto cost = [](const std::string& x, const std::string& y) {
    if (x == y) return 0.0;
    const std::string bx = x.substr(0, x.size() - 1);
    const std::string by = y.substr(0, y.size() - 1);
    return bx == by ? 0.3 : 1.0;
  };
  std::vector<std::vector<double>> d(a.size() + 1, std::vector<double>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = static_cast<double>(i);
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = static_cast<double>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j - 1] + cost(a[i - 1], b[j - 1]), d[i - 1][j] + 1, d[i][j - 1] + 1});
    }
  }
  const double n = static_cast<double>(std::max(a.size(), b.size()));
  return n == 0 ? 1.0 : 1.0 - d[a.size()][b.size()] / n;
}

bool has_unit(const std::vector<lir::Substitution>& subs, const std::string& unit) {
  return std::any_of(subs.begin(), subs.end(), [&](const auto& s) { return s.unit == unit; });
}

}  // namespace

TEST_SUITE("phonetics") {
  TEST_CASE("bundled data sizes") {
    const auto& p = lir::Phonetics::bundled();
    CHECK(p.lexicon_size() >= 50000);
    CHECK(p.pinyin_size() >= 20000);
    CHECK(p.zh_common().size() > 3000);
  }

  TEST_CASE("g2p examples") {
    const auto& p = lir::Phonetics::bundled();
    REQUIRE(p.in_lexicon("cat"));
    CHECK(p.g2p("cat", Language::en).tokens == std::vector<std::string>{"K", "AE", "T"});
    CHECK(p.g2p("Cat!", Language::en).tokens == std::vector<std::string>{"K", "AE", "T"});
    CHECK(p.g2p("中", Language::zh).tokens == std::vector<std::string>{"zhong1"});
    CHECK(p.g2p("", Language::en).tokens.empty());
    CHECK(p.g2p("", Language::zh).tokens.empty());
  }

  TEST_CASE("every phoneme belongs to the inventory") {
    const auto& p = lir::Phonetics::bundled();
    const auto inv = lir::arpabet_inventory();
    CHECK(inv.size() == 39);
    for (const char* w : {"cat", "through", "zyxqvw", "antidisestablishment", "knight", "o'brien"}) {
      for (const auto& t : p.g2p(w, Language::en).tokens) {
        CHECK(std::find(inv.begin(), inv.end(), t) != inv.end());
      }
    }
  }

  TEST_CASE("letter-to-sound fallback") {
    CHECK(lir::letter_to_sound("nation") == std::vector<std::string>{"N", "AE", "SH", "AH", "N"});
    CHECK(lir::letter_to_sound("blorpy").back() == "IY");
    CHECK(lir::letter_to_sound("123").empty());
    const auto& p = lir::Phonetics::bundled();
    REQUIRE_FALSE(p.in_lexicon("zorblatt"));
    CHECK(p.g2p("zorblatt", Language::en).tokens == lir::letter_to_sound("zorblatt"));
  }

  TEST_CASE("unknown units map to UNK") {
    const auto& p = lir::Phonetics::bundled();
    const auto seq = p.g2p("a1中", Language::zh);
    REQUIRE(seq.tokens.size() == 3);
    CHECK(seq.tokens[1] == std::string(lir::kUnknownPhoneme));
    CHECK(lir::unknown_pronunciation(p.g2p("123", Language::en)));
  }

  TEST_CASE("similarity examples") {
    const PhonemeSequence cat{{"K", "AE", "T"}, Language::en};
    const PhonemeSequence bee{{"B", "IY"}, Language::en};
    CHECK(lir::phonetic_similarity(cat, cat) == 1.0);
    CHECK(lir::phonetic_similarity(cat, bee) == 0.0);
    CHECK(lir::phonetic_similarity({{}, Language::en}, {{}, Language::en}) == 1.0);
    const PhonemeSequence z1{{"zhong1"}, Language::zh};
    const PhonemeSequence z4{{"zhong4"}, Language::zh};
    const double s = lir::phonetic_similarity(z1, z4);
    CHECK(s > 0.0);
    CHECK(s < 1.0);
    CHECK(s == doctest::Approx(oracle_zh_similarity({"zhong1"}, {"zhong4"})));
    CHECK_THROWS_AS(lir::phonetic_similarity(cat, z1), lir::LanguageMismatch);
  }

  TEST_CASE("similarity is symmetric and exact only on identity") {
    std::mt19937 rng(9);
    const std::vector<std::string> syl = {"ma1", "ma2", "ma3", "ta1", "ta4", "shi4", "shi2"};
    for (int trial = 0; trial < 2000; ++trial) {
      std::vector<std::string> a(rng() % 4), b(rng() % 4);
      for (auto& x : a) x = syl[rng() % syl.size()];
      for (auto& x : b) x = syl[rng() % syl.size()];
      const PhonemeSequence pa{a, Language::zh}, pb{b, Language::zh};
      const double ab = lir::phonetic_similarity(pa, pb);
      CHECK(ab == lir::phonetic_similarity(pb, pa));
      CHECK(ab == doctest::Approx(oracle_zh_similarity(a, b)));
      CHECK((ab == 1.0) == (a == b));
      CHECK(ab >= 0.0);
    }
  }

  TEST_CASE("homophones of ta") {
    const auto& p = lir::Phonetics::bundled();
    const auto table = lir::SubstitutionTable::build(p, Language::zh, 0.6);
    const auto subs = lir::similar_units("他", Language::zh, table, 1.0);
    CHECK(has_unit(subs, "她"));
    CHECK(has_unit(subs, "它"));
    CHECK_FALSE(has_unit(subs, "他"));
    for (const auto& s : subs) CHECK(s.weight == 1.0);
  }

  TEST_CASE("similar units respect the threshold and ranking") {
    const auto& p = lir::Phonetics::bundled();
    for (Language lang : {Language::zh, Language::en}) {
      const auto table = lir::SubstitutionTable::build(p, lang, 0.6);
      const std::vector<std::string> probes =
          lang == Language::zh ? std::vector<std::string>{"他", "是", "的", "中", "书", "见"}
                               : std::vector<std::string>{"cat", "see", "there", "night", "write", "book"};
      for (const auto& u : probes) {
        for (double min : {0.6, 0.8, 1.0}) {
          const auto subs = lir::similar_units(u, lang, table, min);
          for (std::size_t i = 0; i < subs.size(); ++i) {
            CHECK(subs[i].unit != u);
            CHECK(subs[i].weight >= min);
            CHECK(lir::unit_similarity(p, u, subs[i].unit, lang) == doctest::Approx(subs[i].weight));
            if (i > 0) {
              const bool ordered = subs[i - 1].weight > subs[i].weight ||
                                   (subs[i - 1].weight == subs[i].weight && subs[i - 1].unit < subs[i].unit);
              CHECK(ordered);
            }
          }
        }
      }
    }
  }

  TEST_CASE("table edge cases") {
    const lir::SubstitutionTable empty(Language::zh, 0.8);
    CHECK(lir::similar_units("他", Language::zh, empty, 0.0).empty());
    const auto table = lir::SubstitutionTable::from_entries(
        Language::zh, 0.7, {{"他", {{"她", 1.0}, {"它", 1.0}, {"塔", 0.7}}}});
    CHECK(lir::similar_units("他", Language::zh, table, 1.0).size() == 2);
    CHECK(lir::similar_units("他", Language::zh, table, 0.7).size() == 3);
    CHECK(lir::similar_units("你", Language::zh, table, 0.0).empty());
    CHECK(lir::similar_units("他", Language::en, table, 0.0).empty());
    CHECK_THROWS_AS(lir::SubstitutionTable::from_entries(Language::zh, 0.5, {{"他", {{"他", 1.0}}}}),
                    lir::ConfigError);
    CHECK_THROWS_AS(lir::SubstitutionTable::from_entries(Language::zh, 0.9, {{"他", {{"塔", 0.7}}}}),
                    lir::ConfigError);
  }

  TEST_CASE("custom data") {
    const auto p = lir::Phonetics::from_entries({{"cat", "K AE1 T"}, {"bat", "B AE1 T"}},
                                                {{"中", "zhong1 zhong4"}, {"钟", "zhong1"}}, {"中", "钟"});
    CHECK(p.g2p("cat", Language::en).tokens == std::vector<std::string>{"K", "AE", "T"});
    REQUIRE(p.readings(U'中') != nullptr);
    CHECK(p.readings(U'中')->size() == 2);
    const auto zh = lir::SubstitutionTable::build(p, Language::zh, 0.6);
    CHECK(has_unit(lir::similar_units("中", Language::zh, zh, 1.0), "钟"));
    const auto en = lir::SubstitutionTable::build(p, Language::en, 0.6);
    const auto subs = lir::similar_units("cat", Language::en, en, 0.6);
    REQUIRE(subs.size() == 1);
    CHECK(subs[0].unit == "bat");
    CHECK(subs[0].weight == doctest::Approx(2.0 / 3.0));
  }

  TEST_CASE("g2p is deterministic") {
    const auto& p = lir::Phonetics::bundled();
    for (const char* w : {"hello", "world", "qwertyuiop"}) {
      CHECK(p.g2p(w, Language::en) == p.g2p(w, Language::en));
    }
  }

  TEST_CASE("substitutes never share the source key") {
    const auto table = lir::SubstitutionTable::build(lir::Phonetics::bundled(), Language::en, 0.6);
    for (const char* w : {"this", "its", "james", "students"}) {
      for (const auto& s : lir::similar_units(w, Language::en, table, 0.0)) {
        CHECK(lir::unit_key(s.unit, Language::en) != w);
      }
    }
  }
}

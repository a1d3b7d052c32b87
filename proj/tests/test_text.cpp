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

#include "lir/errors.hpp"
#include "lir/random.hpp"
#include "lir/text.hpp"

using lir::Language;

TEST_SUITE("text") {
  TEST_CASE("utf8 round trip") {
    const std::string s = "a你好🙂é";
    const auto cps = lir::decode_utf8(s);
    REQUIRE(cps.size() == 5);
    CHECK(cps[1] == U'你');
    CHECK(cps[3] == U'🙂');
    CHECK(lir::encode_utf8(cps) == s);
  }

  TEST_CASE("invalid utf8 becomes replacement characters") {
    const auto cps = lir::decode_utf8(std::string("a\xff" "b\xe4\xbd"));
    REQUIRE(cps.size() >= 3);
    CHECK(cps[0] == U'a');
    CHECK(cps[1] == 0xFFFD);
    CHECK(cps[2] == U'b');
  }

  TEST_CASE("en normalization") {
    CHECK(lir::normalize("Hello,   World!", Language::en) == "hello world");
    CHECK(lir::normalize("Don't stop-now", Language::en) == "don't stop now");
    CHECK(lir::normalize("'quoted' words", Language::en) == "quoted words");
    CHECK(lir::normalize("  ...  ", Language::en).empty());
  }

  TEST_CASE("zh normalization strips punctuation and whitespace") {
    CHECK(lir::normalize("今天，天气 很好！", Language::zh) == "今天天气很好");
    CHECK(lir::normalize("ABC中文", Language::zh) == "abc中文");
  }

  TEST_CASE("units") {
    const auto zh = lir::split_units("他 来了。", Language::zh);
    CHECK(zh == std::vector<std::string>{"他", "来", "了", "。"});
    const auto en = lir::split_units("  The cat,  sat ", Language::en);
    CHECK(en == std::vector<std::string>{"The", "cat,", "sat"});
    CHECK(lir::join_units(en, Language::en) == "The cat, sat");
    CHECK(lir::join_units(zh, Language::zh) == "他来了。");
    CHECK(lir::unit_key("Cat,", Language::en) == "cat");
    CHECK(lir::unit_key("\"", Language::en).empty());
  }

  TEST_CASE("restyle keeps affixes and capitalization") {
    CHECK(lir::restyle_word("Cat,", "bat") == "Bat,");
    CHECK(lir::restyle_word("(CAT)", "bat") == "(BAT)");
    CHECK(lir::restyle_word("cat", "bat") == "bat");
  }

  TEST_CASE("language tags") {
    CHECK(lir::parse_language("zh") == Language::zh);
    CHECK(lir::parse_language("en") == Language::en);
    CHECK(lir::to_string(Language::zh) == "zh");
    CHECK_THROWS_AS(lir::parse_language("fr"), lir::ConfigError);
  }

  TEST_CASE("rng draw sequence is fixed") {
    lir::Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    lir::Rng r(7);
    for (int i = 0; i < 1000; ++i) {
      CHECK(r.below(5) < 5);
      const double u = r.uniform();
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
    }
    CHECK(lir::derive_seed(1, "a") == lir::derive_seed(1, "a"));
    CHECK(lir::derive_seed(1, "a") != lir::derive_seed(1, "b"));
    CHECK(lir::derive_seed(1, "a") != lir::derive_seed(2, "a"));
  }
}

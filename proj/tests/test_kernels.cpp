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

#include "lir/kernels.hpp"
#include "support.hpp"

namespace k = lir::kernels;
using Tokens = std::vector<k::Token>;

namespace {

Tokens random_tokens(std::mt19937& rng, std::size_t len, int alphabet) {
  std::uniform_int_distribution<int> d(0, alphabet - 1);
  Tokens t(len);
  for (auto& x : t) x = d(rng);
  return t;
}

Tokens from(std::string_view s) { return Tokens(s.begin(), s.end()); }

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar reference on known pairs") {
    CHECK(k::scalar::levenshtein(from("kitten"), from("sitting")) == 3);
    CHECK(k::scalar::levenshtein(from(""), from("abc")) == 3);
    CHECK(k::scalar::levenshtein(from("abc"), from("")) == 3);
    CHECK(k::scalar::levenshtein(from(""), from("")) == 0);
    CHECK(k::scalar::lcs_length(from("ABCBDAB"), from("BDCABA")) == 4);
    CHECK(k::scalar::lcs_length(from("abc"), from("")) == 0);
  }

  TEST_CASE("scalar agrees with recursive oracles") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
      const auto a = random_tokens(rng, rng() % 12, 1 + static_cast<int>(rng() % 4));
      const auto b = random_tokens(rng, rng() % 12, 1 + static_cast<int>(rng() % 4));
      CHECK(k::scalar::levenshtein(a, b) == lir::test::recursive_counts(a, b).total());
      CHECK(k::scalar::lcs_length(a, b) == lir::test::recursive_lcs(a, b));
    }
  }

  TEST_CASE("vector kernels match the scalar reference") {
    const bool have_avx2 = k::avx2::available();
    const bool have_neon = k::neon::available();
    MESSAGE("detected isa: " << k::to_string(k::detected_isa()) << ", active: " << k::to_string(k::active_isa()));
    std::mt19937 rng(2024);
    // Lengths straddle the vector width and the short-input cutoff.
    const std::size_t lengths[] = {0, 1, 2, 7, 8, 9, 15, 16, 17, 31, 33, 64, 100, 257};
    for (std::size_t la : lengths) {
      for (std::size_t lb : lengths) {
        for (int alphabet : {2, 5, 1000}) {
          const auto a = random_tokens(rng, la, alphabet);
          const auto b = random_tokens(rng, lb, alphabet);
          const auto lev = k::scalar::levenshtein(a, b);
          const auto lcs = k::scalar::lcs_length(a, b);
          CHECK(k::levenshtein(a, b) == lev);
          CHECK(k::lcs_length(a, b) == lcs);
          if (have_avx2) {
            CHECK(k::avx2::levenshtein(a, b) == lev);
            CHECK(k::avx2::lcs_length(a, b) == lcs);
          }
          if (have_neon) {
            CHECK(k::neon::levenshtein(a, b) == lev);
            CHECK(k::neon::lcs_length(a, b) == lcs);
          }
        }
      }
    }
  }

  TEST_CASE("vector kernels on long and extreme inputs") {
    std::mt19937 rng(5);
    const auto a = random_tokens(rng, 1500, 30);
    auto b = a;
    for (int i = 0; i < 40; ++i) b[rng() % b.size()] = 99;
    b.insert(b.begin() + 10, 7);
    CHECK(k::levenshtein(a, b) == k::scalar::levenshtein(a, b));
    CHECK(k::lcs_length(a, b) == k::scalar::lcs_length(a, b));
    // Negative and large ids must compare as plain values.
    const Tokens c = {-5, INT32_MAX, INT32_MIN, 0, 3, -5, 9, 9, 9, 1, 2};
    const Tokens d = {INT32_MIN, -5, 0, 3, INT32_MAX, 9, 1, 1, 2, 7, 7, 8};
    CHECK(k::levenshtein(c, d) == k::scalar::levenshtein(c, d));
    CHECK(k::lcs_length(c, d) == k::scalar::lcs_length(c, d));
  }

  TEST_CASE("isa names") {
    CHECK(k::to_string(k::Isa::scalar) == "scalar");
    CHECK(k::to_string(k::Isa::avx2) == "avx2");
    CHECK(k::to_string(k::Isa::neon) == "neon");
  }
}

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

// Test-only oracles and fixtures. The oracles here are written
// independently of the library code they check.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <unistd.h>

#include "lir/backend.hpp"
#include "lir/errors.hpp"
#include "lir/metrics.hpp"

namespace lir::test {

/// Edit counts by memoized recursion over suffixes, breaking ties
/// diagonal > deletion > insertion from the end of both sequences.
template <typename T>
EditCounts recursive_counts(const std::vector<T>& ref, const std::vector<T>& hyp) {
  const std::size_t m = ref.size();
  const std::size_t n = hyp.size();
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  // cost(i, j): distance between ref[0, i) and hyp[0, j).
  std::function<std::size_t(std::size_t, std::size_t)> cost = [&](std::size_t i, std::size_t j) -> std::size_t {
    if (i == 0) return j;
    if (j == 0) return i;
    auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const std::size_t v = std::min({cost(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1), cost(i - 1, j) + 1,
                                    cost(i, j - 1) + 1});
    memo[key] = v;
    return v;
  };
  EditCounts c;
  c.reference_length = m;
  std::size_t i = m, j = n;
  while (i > 0 || j > 0) {
    const std::size_t here = cost(i, j);
    if (i > 0 && j > 0 && cost(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1) == here) {
      if (ref[i - 1] != hyp[j - 1]) ++c.substitutions;
      --i;
      --j;
    } else if (i > 0 && cost(i - 1, j) + 1 == here) {
      ++c.deletions;
      --i;
    } else {
      ++c.insertions;
      --j;
    }
  }
  return c;
}

/// Index pairs aligned as substitutions, using the same recursion and tie
/// order as recursive_counts().
template <typename T>
std::vector<std::pair<std::size_t, std::size_t>> recursive_substitutions(const std::vector<T>& ref,
                                                                         const std::vector<T>& hyp) {
  std::vector<std::vector<std::size_t>> cost(ref.size() + 1, std::vector<std::size_t>(hyp.size() + 1));
  for (std::size_t i = 0; i <= ref.size(); ++i) {
    for (std::size_t j = 0; j <= hyp.size(); ++j) {
      if (i == 0 || j == 0) {
        cost[i][j] = i + j;
      } else {
        cost[i][j] = std::min({cost[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1), cost[i - 1][j] + 1,
                               cost[i][j - 1] + 1});
      }
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> subs;
  std::size_t i = ref.size(), j = hyp.size();
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && cost[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1) == cost[i][j]) {
      if (ref[i - 1] != hyp[j - 1]) subs.emplace_back(i - 1, j - 1);
      --i;
      --j;
    } else if (i > 0 && cost[i - 1][j] + 1 == cost[i][j]) {
      --i;
    } else {
      --j;
    }
  }
  return subs;
}

/// Minimum edit cost by enumerating every alignment path (exponential).
template <typename T>
std::size_t enumerated_distance(const std::vector<T>& a, const std::vector<T>& b, std::size_t i = 0,
                                std::size_t j = 0) {
  if (i == a.size()) return b.size() - j;
  if (j == b.size()) return a.size() - i;
  const std::size_t diag = enumerated_distance(a, b, i + 1, j + 1) + (a[i] == b[j] ? 0 : 1);
  const std::size_t del = enumerated_distance(a, b, i + 1, j) + 1;
  const std::size_t ins = enumerated_distance(a, b, i, j + 1) + 1;
  return std::min({diag, del, ins});
}

/// Longest common subsequence by plain recursion with memo.
template <typename T>
std::size_t recursive_lcs(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<std::vector<int>> memo(a.size() + 1, std::vector<int>(b.size() + 1, -1));
  std::function<std::size_t(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t j) -> std::size_t {
    if (i == a.size() || j == b.size()) return 0;
    int& m = memo[i][j];
    if (m >= 0) return static_cast<std::size_t>(m);
    std::size_t v = a[i] == b[j] ? 1 + go(i + 1, j + 1) : std::max(go(i + 1, j), go(i, j + 1));
    m = static_cast<int>(v);
    return v;
  };
  return go(0, 0);
}

/// All sequences of length `len` over {0, .., alphabet-1}.
inline std::vector<std::vector<int>> all_sequences(std::size_t len, int alphabet) {
  std::vector<std::vector<int>> out{{}};
  for (std::size_t k = 0; k < len; ++k) {
    std::vector<std::vector<int>> next;
    for (const auto& s : out) {
      for (int c = 0; c < alphabet; ++c) {
        auto t = s;
        t.push_back(c);
        next.push_back(std::move(t));
      }
    }
    out = std::move(next);
  }
  return out;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("lir_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

/// Deterministic per-text pseudo-random value in [0, 1).
inline double text_hash_unit(const std::string& text, std::uint64_t salt) {
  std::uint64_t h = 1469598103934665603ULL ^ salt;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

/// Backend whose verdicts are pseudo-random functions of the text. Given a
/// table, correction swaps one hashed unit for a hashed similar unit most of
/// the time; otherwise it is the identity. Fusion picks a hashed member and
/// scores are uniform in [0, f_max]. With fail_rate > 0 a hashed share of
/// calls throws.
class HashBackend : public Backend {
 public:
  explicit HashBackend(std::uint64_t salt, double fail_rate = 0.0, const SubstitutionTable* table = nullptr)
      : Backend(100.0), salt_(salt), fail_rate_(fail_rate), table_(table) {}

  Candidate correct(const Candidate& candidate, const Transcript& context) const override {
    ++corrects;
    const std::string key = candidate.text + "|" + context.text;
    maybe_fail("correct" + key);
    Candidate c = candidate;
    c.provenance = Provenance::corrected;
    if (table_ == nullptr || text_hash_unit(key, salt_ + 3) >= 0.7) return c;
    auto units = split_units(c.text, c.language);
    if (units.empty()) return c;
    const auto pos = static_cast<std::size_t>(text_hash_unit(key, salt_ + 4) * static_cast<double>(units.size()));
    const auto subs = similar_units(unit_key(units[pos], c.language), c.language, *table_, table_->threshold());
    if (subs.empty()) return c;
    units[pos] = subs[static_cast<std::size_t>(text_hash_unit(key, salt_ + 5) * static_cast<double>(subs.size()))].unit;
    c.text = join_units(units, c.language);
    return c;
  }
  Candidate fuse(const Transcript& current, std::span<const Candidate> corrected) const override {
    ++fuses;
    std::string key = current.text;
    for (const auto& c : corrected) key += "|" + c.text;
    maybe_fail("fuse" + key);
    const auto pick = static_cast<std::size_t>(text_hash_unit(key, salt_) * static_cast<double>(corrected.size()));
    Candidate c = corrected[pick];
    c.provenance = Provenance::fused;
    return c;
  }
  Score score(const Candidate& candidate) const override {
    ++scores;
    maybe_fail("score" + candidate.text);
    return {text_hash_unit(candidate.text, salt_ + 1) * f_max(), f_max(), "hashed"};
  }
  std::size_t max_parallel() const override { return 3; }

  mutable std::atomic<std::size_t> corrects{0};
  mutable std::atomic<std::size_t> fuses{0};
  mutable std::atomic<std::size_t> scores{0};

 private:
  void maybe_fail(const std::string& key) const {
    if (fail_rate_ > 0.0 && text_hash_unit(key, salt_ + 2) < fail_rate_) throw BackendUnavailable("mock failure");
  }

  std::uint64_t salt_;
  double fail_rate_;
  const SubstitutionTable* table_;
};

}  // namespace lir::test

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

// Grapheme-to-phoneme conversion, phonetic similarity and similar-sounding
// substitution tables.
//
// en pronunciations are ARPAbet without stress marks, from the bundled
// lexicon or, for out-of-lexicon words, from letter_to_sound(). zh
// pronunciations are numbered-tone pinyin syllables ("zhong1"; neutral tone
// is 5); polyphonic characters use their first listed reading.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lir/text.hpp"

namespace lir {

/// Reserved symbol for units without a known pronunciation.
inline constexpr std::string_view kUnknownPhoneme = "UNK";

/// Tone mismatch cost relative to a whole-syllable mismatch (1.0).
inline constexpr double kToneMismatchCost = 0.3;

struct PhonemeSequence {
  std::vector<std::string> tokens;
  Language language = Language::en;

  bool operator==(const PhonemeSequence&) const = default;
};

/// The 39 ARPAbet phonemes of the en inventory, in id order.
std::span<const std::string_view> arpabet_inventory();

/// Fixed letter-to-sound fallback; returns an empty vector when `word` has no
/// ASCII letters. See the table in phonetics.cpp for the exact rules.
std::vector<std::string> letter_to_sound(std::string_view word);

/// Immutable pronunciation data; copies share the loaded tables.
class Phonetics {
 public:
  /// Reads en_lexicon.txt, zh_pinyin.txt and zh_common_chars.txt from `dir`.
  static Phonetics load(const std::filesystem::path& dir);
  /// Builds an instance from in-memory entries (tests, custom data).
  static Phonetics from_entries(const std::vector<std::pair<std::string, std::string>>& en_lexicon,
                                const std::vector<std::pair<std::string, std::string>>& zh_pinyin,
                                const std::vector<std::string>& zh_common = {});
  /// Shared instance over the bundled assets.
  static const Phonetics& bundled();

  PhonemeSequence g2p(std::string_view surface, Language language) const;

  /// Lexicon pronunciation of a normalized en word, if listed.
  const std::vector<std::string>* lexicon_entry(std::string_view word) const;
  bool in_lexicon(std::string_view word) const { return lexicon_entry(word) != nullptr; }
  std::size_t lexicon_size() const;

  /// All readings of a zh character, first one being the default.
  const std::vector<std::string>* readings(char32_t cp) const;
  std::size_t pinyin_size() const;
  /// Characters eligible as zh substitution targets.
  std::span<const char32_t> zh_common() const;

  struct Data;
  const Data& data() const { return *data_; }

 private:
  explicit Phonetics(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

/// True when the sequence carries no known phoneme (empty or all UNK).
bool unknown_pronunciation(const PhonemeSequence& seq);

/// 1 - dist(a, b) / max(|a|, |b|), with unit insert/delete/substitute costs.
/// zh substitutions that differ only in tone cost kToneMismatchCost.
/// Returns 1.0 for two empty sequences; throws LanguageMismatch.
double phonetic_similarity(const PhonemeSequence& a, const PhonemeSequence& b);

/// phonetic_similarity(g2p(a), g2p(b)).
double unit_similarity(const Phonetics& phonetics, std::string_view a, std::string_view b, Language language);

struct Substitution {
  std::string unit;
  double weight = 0.0;

  bool operator==(const Substitution&) const = default;
};

namespace detail {
class PhoneticIndex;
}

/// Map from a surface unit to its similar-sounding units.
///
/// Tables built from Phonetics are computed on demand from an immutable
/// index, so lookups are safe to run concurrently. Entries supplied
/// explicitly take precedence over indexed ones for the same unit.
class SubstitutionTable {
 public:
  SubstitutionTable(Language language, double threshold);

  /// Throws ConfigError if an entry maps a unit to itself or falls below
  /// `threshold`.
  static SubstitutionTable from_entries(Language language, double threshold,
                                        std::map<std::string, std::vector<Substitution>> entries);
  /// Every unit whose phonetic similarity to the looked-up unit is at least
  /// `threshold`. zh targets are restricted to Phonetics::zh_common(); en
  /// targets are lexicon words within one phoneme edit (at most 11 phonemes).
  static SubstitutionTable build(const Phonetics& phonetics, Language language, double threshold);

  Language language() const { return language_; }
  double threshold() const { return threshold_; }

  /// Ranked by weight descending, then lexicographically. `unit` is taken in
  /// key form (see unit_key()).
  std::vector<Substitution> lookup(std::string_view unit) const;

 private:
  Language language_;
  double threshold_;
  std::map<std::string, std::vector<Substitution>, std::less<>> entries_;
  std::shared_ptr<const detail::PhoneticIndex> index_;
};

/// Substitutions of `unit` with weight >= min_similarity, excluding the unit
/// itself and units with the same unit_key(). Unknown units and tables of
/// another language yield an empty set.
std::vector<Substitution> similar_units(std::string_view unit, Language language, const SubstitutionTable& table,
                                        double min_similarity);

}  // namespace lir

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

#include "lir/phonetics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "lir/assets.hpp"
#include "lir/errors.hpp"
#include "lir/kernels.hpp"

namespace lir {

namespace {

constexpr std::array<std::string_view, 39> kArpabet = {
    "AA", "AE", "AH", "AO", "AW", "AY", "B",  "CH", "D", "DH", "EH", "ER", "EY",
    "F",  "G",  "HH", "IH", "IY", "JH", "K",  "L",  "M", "N",  "NG", "OW", "OY",
    "P",  "R",  "S",  "SH", "T",  "TH", "UH", "UW", "V", "W",  "Y",  "Z",  "ZH"};

// Letter-to-sound rules, tried longest pattern first at each position.
// A trailing '$' anchors the pattern to the end of the word; the anchored
// silent-e rule only applies to words longer than three letters.
struct LtsRule {
  std::string_view pattern;
  std::string_view phonemes;
};

constexpr LtsRule kLtsRules[] = {
    {"tion", "SH AH N"}, {"sion", "ZH AH N"}, {"ough", "AO"},  {"augh", "AO"},  {"eigh", "EY"},
    {"igh", "AY"},       {"tch", "CH"},       {"dge", "JH"},   {"sch", "S K"},  {"ch", "CH"},
    {"sh", "SH"},        {"th", "TH"},        {"ph", "F"},     {"wh", "W"},     {"ck", "K"},
    {"ng", "NG"},        {"qu", "K W"},       {"kn", "N"},     {"wr", "R"},     {"gh", "G"},
    {"gn", "N"},         {"ee", "IY"},        {"ea", "IY"},    {"oo", "UW"},    {"ou", "AW"},
    {"ow", "OW"},        {"ai", "EY"},        {"ay", "EY"},    {"ei", "EY"},    {"ey", "IY"},
    {"oi", "OY"},        {"oy", "OY"},        {"au", "AO"},    {"aw", "AO"},    {"ie", "IY"},
    {"oa", "OW"},        {"ue", "UW"},        {"ew", "UW"},    {"ar", "AA R"},  {"er", "ER"},
    {"ir", "ER"},        {"ur", "ER"},        {"or", "AO R"},  {"ce", "S"},     {"ci", "S IH"},
    {"cy", "S IY"},      {"ll", "L"},         {"ss", "S"},     {"tt", "T"},     {"ff", "F"},
    {"pp", "P"},         {"mm", "M"},         {"nn", "N"},     {"rr", "R"},     {"dd", "D"},
    {"bb", "B"},         {"gg", "G"},         {"zz", "Z"},     {"cc", "K"},     {"e$", ""},
    {"y$", "IY"},        {"a", "AE"},         {"b", "B"},      {"c", "K"},      {"d", "D"},
    {"e", "EH"},         {"f", "F"},          {"g", "G"},      {"h", "HH"},     {"i", "IH"},
    {"j", "JH"},         {"k", "K"},          {"l", "L"},      {"m", "M"},      {"n", "N"},
    {"o", "AA"},         {"p", "P"},          {"q", "K"},      {"r", "R"},      {"s", "S"},
    {"t", "T"},          {"u", "AH"},         {"v", "V"},      {"w", "W"},      {"x", "K S"},
    {"y", "Y"},          {"z", "Z"},
};

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// ARPAbet tokens with any CMUdict stress digit removed.
std::vector<std::string> arpabet_tokens(std::string_view s) {
  auto tokens = split_ws(s);
  for (auto& t : tokens) {
    while (!t.empty() && t.back() >= '0' && t.back() <= '9') t.pop_back();
  }
  std::erase_if(tokens, [](const std::string& t) { return t.empty(); });
  return tokens;
}

// Syllable split for zh similarity: "zhong1" -> ("zhong", '1').
std::pair<std::string_view, char> split_tone(std::string_view syllable) {
  if (!syllable.empty() && syllable.back() >= '1' && syllable.back() <= '5') {
    return {syllable.substr(0, syllable.size() - 1), syllable.back()};
  }
  return {syllable, '\0'};
}

double syllable_cost(std::string_view a, std::string_view b) {
  if (a == b) return 0.0;
  const auto [base_a, tone_a] = split_tone(a);
  const auto [base_b, tone_b] = split_tone(b);
  if (base_a == base_b) return kToneMismatchCost;
  return 1.0;
}

double weighted_distance(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<double> prev(b.size() + 1);
  std::vector<double> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<double>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<double>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j - 1] + syllable_cost(a[i - 1], b[j - 1]), prev[j] + 1.0, cur[j - 1] + 1.0});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

kernels::Token arpabet_id(std::string_view phoneme) {
  for (std::size_t i = 0; i < kArpabet.size(); ++i) {
    if (kArpabet[i] == phoneme) return static_cast<kernels::Token>(i + 1);
  }
  return static_cast<kernels::Token>(kArpabet.size() + 1);  // UNK
}

std::vector<kernels::Token> arpabet_ids(std::span<const std::string> tokens) {
  std::vector<kernels::Token> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(arpabet_id(t));
  return ids;
}

double unit_cost_similarity(std::span<const kernels::Token> a, std::span<const kernels::Token> b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  const std::size_t dist = kernels::levenshtein(a, b);
  return 1.0 - static_cast<double>(dist) / static_cast<double>(longest);
}

void rank(std::vector<Substitution>& subs) {
  std::sort(subs.begin(), subs.end(), [](const Substitution& x, const Substitution& y) {
    if (x.weight != y.weight) return x.weight > y.weight;
    return x.unit < y.unit;
  });
}

}  // namespace

struct Phonetics::Data {
  std::unordered_map<std::string, std::vector<std::string>> en;
  std::unordered_map<char32_t, std::vector<std::string>> zh;
  std::vector<char32_t> zh_common;
};

std::span<const std::string_view> arpabet_inventory() { return kArpabet; }

std::vector<std::string> letter_to_sound(std::string_view word) {
  std::string w;
  for (char c : word) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
    if (c >= 'a' && c <= 'z') w.push_back(c);
  }
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < w.size()) {
    const LtsRule* best = nullptr;
    std::size_t best_len = 0;
    for (const auto& rule : kLtsRules) {
      std::string_view pat = rule.pattern;
      const bool anchored = !pat.empty() && pat.back() == '$';
      if (anchored) pat.remove_suffix(1);
      if (pat.size() <= best_len || w.compare(i, pat.size(), pat) != 0) continue;
      if (anchored && (i + pat.size() != w.size() || (pat == "e" && w.size() <= 3))) continue;
      best = &rule;
      best_len = pat.size();
    }
    for (auto& p : split_ws(best->phonemes)) out.push_back(std::move(p));
    i += best_len;
  }
  return out;
}

Phonetics Phonetics::load(const std::filesystem::path& dir) {
  auto data = std::make_shared<Data>();
  data->en.reserve(130000);
  for_each_entry(dir / "en_lexicon.txt", [&](std::string_view surface, std::string_view fields) {
    data->en.try_emplace(std::string(surface), arpabet_tokens(fields));
  });
  for_each_entry(dir / "zh_pinyin.txt", [&](std::string_view surface, std::string_view fields) {
    const std::u32string cps = decode_utf8(surface);
    if (cps.size() == 1) data->zh.try_emplace(cps[0], split_ws(fields));
  });
  for_each_entry(dir / "zh_common_chars.txt", [&](std::string_view surface, std::string_view) {
    const std::u32string cps = decode_utf8(surface);
    if (cps.size() == 1) data->zh_common.push_back(cps[0]);
  });
  return Phonetics(std::move(data));
}

Phonetics Phonetics::from_entries(const std::vector<std::pair<std::string, std::string>>& en_lexicon,
                                  const std::vector<std::pair<std::string, std::string>>& zh_pinyin,
                                  const std::vector<std::string>& zh_common) {
  auto data = std::make_shared<Data>();
  for (const auto& [word, phones] : en_lexicon) data->en.try_emplace(word, arpabet_tokens(phones));
  for (const auto& [ch, readings] : zh_pinyin) {
    const std::u32string cps = decode_utf8(ch);
    if (cps.size() == 1) data->zh.try_emplace(cps[0], split_ws(readings));
  }
  if (zh_common.empty()) {
    for (const auto& [cp, r] : data->zh) data->zh_common.push_back(cp);
    std::sort(data->zh_common.begin(), data->zh_common.end());
  } else {
    for (const auto& ch : zh_common) {
      const std::u32string cps = decode_utf8(ch);
      if (cps.size() == 1) data->zh_common.push_back(cps[0]);
    }
  }
  return Phonetics(std::move(data));
}

const Phonetics& Phonetics::bundled() {
  static const Phonetics instance = load(data_dir());
  return instance;
}

const std::vector<std::string>* Phonetics::lexicon_entry(std::string_view word) const {
  auto it = data_->en.find(std::string(word));
  return it == data_->en.end() ? nullptr : &it->second;
}

std::size_t Phonetics::lexicon_size() const { return data_->en.size(); }

const std::vector<std::string>* Phonetics::readings(char32_t cp) const {
  auto it = data_->zh.find(cp);
  return it == data_->zh.end() ? nullptr : &it->second;
}

std::size_t Phonetics::pinyin_size() const { return data_->zh.size(); }

std::span<const char32_t> Phonetics::zh_common() const { return data_->zh_common; }

PhonemeSequence Phonetics::g2p(std::string_view surface, Language language) const {
  PhonemeSequence seq;
  seq.language = language;
  if (language == Language::zh) {
    for (char32_t cp : decode_utf8(surface)) {
      if (is_space(cp)) continue;
      const auto* r = readings(cp);
      seq.tokens.emplace_back(r != nullptr && !r->empty() ? r->front() : std::string(kUnknownPhoneme));
    }
    return seq;
  }
  for (const auto& word : split_units(normalize(surface, Language::en), Language::en)) {
    if (const auto* entry = lexicon_entry(word)) {
      seq.tokens.insert(seq.tokens.end(), entry->begin(), entry->end());
      continue;
    }
    auto phones = letter_to_sound(word);
    if (phones.empty()) {
      seq.tokens.emplace_back(kUnknownPhoneme);
    } else {
      seq.tokens.insert(seq.tokens.end(), phones.begin(), phones.end());
    }
  }
  return seq;
}

bool unknown_pronunciation(const PhonemeSequence& seq) {
  return std::all_of(seq.tokens.begin(), seq.tokens.end(), [](const std::string& t) { return t == kUnknownPhoneme; });
}

double phonetic_similarity(const PhonemeSequence& a, const PhonemeSequence& b) {
  if (a.language != b.language) throw LanguageMismatch("phonetic_similarity across languages");
  const std::size_t longest = std::max(a.tokens.size(), b.tokens.size());
  if (longest == 0) return 1.0;
  if (a.language == Language::en) {
    const auto ia = arpabet_ids(a.tokens);
    const auto ib = arpabet_ids(b.tokens);
    return unit_cost_similarity(ia, ib);
  }
  const double dist = weighted_distance(a.tokens, b.tokens);
  return std::clamp(1.0 - dist / static_cast<double>(longest), 0.0, 1.0);
}

double unit_similarity(const Phonetics& phonetics, std::string_view a, std::string_view b, Language language) {
  return phonetic_similarity(phonetics.g2p(a, language), phonetics.g2p(b, language));
}

namespace detail {

class PhoneticIndex {
 public:
  virtual ~PhoneticIndex() = default;
  virtual std::vector<Substitution> lookup(std::string_view unit, double threshold) const = 0;
};

namespace {

class ZhIndex final : public PhoneticIndex {
 public:
  explicit ZhIndex(const Phonetics& phonetics) : phonetics_(phonetics) {
    for (char32_t cp : phonetics_.zh_common()) {
      const auto* r = phonetics_.readings(cp);
      if (r == nullptr || r->empty()) continue;
      const std::string& reading = r->front();
      buckets_[std::string(split_tone(reading).first)].push_back({cp, reading});
    }
  }

  std::vector<Substitution> lookup(std::string_view unit, double threshold) const override {
    std::vector<Substitution> out;
    const std::u32string cps = decode_utf8(unit);
    if (cps.size() != 1) return out;
    const auto* r = phonetics_.readings(cps[0]);
    if (r == nullptr || r->empty()) return out;
    const std::string& reading = r->front();
    auto it = buckets_.find(std::string(split_tone(reading).first));
    if (it == buckets_.end()) return out;
    for (const auto& [cp, other] : it->second) {
      if (cp == cps[0]) continue;
      const double w = 1.0 - syllable_cost(reading, other);
      if (w >= threshold) out.push_back({encode_utf8(std::u32string(1, cp)), w});
    }
    return out;
  }

 private:
  struct Member {
    char32_t cp;
    std::string reading;
  };
  Phonetics phonetics_;
  std::unordered_map<std::string, std::vector<Member>> buckets_;
};

// Symmetric single-deletion index over packed phoneme ids: two sequences
// within one edit share at least one key among {full, each deletion}.
class EnIndex final : public PhoneticIndex {
 public:
  static constexpr std::size_t kMaxPhonemes = 11;

  explicit EnIndex(const Phonetics& phonetics) : phonetics_(phonetics) {
    for (const auto& [word, phones] : phonetics_.data().en) {
      if (phones.empty() || phones.size() > kMaxPhonemes) continue;
      const auto ids = arpabet_ids(phones);
      const auto word_id = static_cast<std::uint32_t>(words_.size());
      words_.push_back(word);
      ids_.push_back(ids);
      for (std::uint64_t key : keys_of(ids)) keys_.emplace_back(key, word_id);
    }
    std::sort(keys_.begin(), keys_.end());
  }

  std::vector<Substitution> lookup(std::string_view unit, double threshold) const override {
    std::vector<Substitution> out;
    const auto seq = phonetics_.g2p(unit, Language::en);
    if (seq.tokens.empty() || seq.tokens.size() > kMaxPhonemes || unknown_pronunciation(seq)) return out;
    const auto ids = arpabet_ids(seq.tokens);
    std::unordered_set<std::uint32_t> seen;
    for (std::uint64_t key : keys_of(ids)) {
      auto lo = std::lower_bound(keys_.begin(), keys_.end(), std::pair<std::uint64_t, std::uint32_t>{key, 0});
      for (auto it = lo; it != keys_.end() && it->first == key; ++it) {
        if (!seen.insert(it->second).second) continue;
        const std::string& word = words_[it->second];
        if (word == unit) continue;
        const double w = unit_cost_similarity(ids, ids_[it->second]);
        if (w >= threshold) out.push_back({word, w});
      }
    }
    return out;
  }

 private:
  static std::uint64_t pack(std::span<const kernels::Token> ids, std::size_t skip) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i == skip) continue;
      key = key * 41 + static_cast<std::uint64_t>(ids[i]);
    }
    return key;
  }

  static std::vector<std::uint64_t> keys_of(std::span<const kernels::Token> ids) {
    std::vector<std::uint64_t> keys;
    keys.push_back(pack(ids, ids.size()));
    for (std::size_t i = 0; i < ids.size(); ++i) keys.push_back(pack(ids, i));
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
  }

  Phonetics phonetics_;
  std::vector<std::string> words_;
  std::vector<std::vector<kernels::Token>> ids_;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> keys_;
};

}  // namespace

}  // namespace detail

SubstitutionTable::SubstitutionTable(Language language, double threshold)
    : language_(language), threshold_(threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw ConfigError("substitution threshold must be in [0,1]");
}

SubstitutionTable SubstitutionTable::from_entries(Language language, double threshold,
                                                  std::map<std::string, std::vector<Substitution>> entries) {
  SubstitutionTable table(language, threshold);
  for (auto& [unit, subs] : entries) {
    for (const auto& s : subs) {
      if (s.unit == unit) throw ConfigError("substitution table maps '" + unit + "' to itself");
      if (s.weight < threshold || s.weight > 1.0) {
        throw ConfigError("substitution '" + unit + "' -> '" + s.unit + "' has weight outside [threshold,1]");
      }
    }
    rank(subs);
    table.entries_.emplace(unit, std::move(subs));
  }
  return table;
}

SubstitutionTable SubstitutionTable::build(const Phonetics& phonetics, Language language, double threshold) {
  SubstitutionTable table(language, threshold);
  if (language == Language::zh) {
    table.index_ = std::make_shared<detail::ZhIndex>(phonetics);
  } else {
    table.index_ = std::make_shared<detail::EnIndex>(phonetics);
  }
  return table;
}

std::vector<Substitution> SubstitutionTable::lookup(std::string_view unit) const {
  if (auto it = entries_.find(unit); it != entries_.end()) return it->second;
  if (!index_) return {};
  auto subs = index_->lookup(unit, threshold_);
  rank(subs);
  return subs;
}

std::vector<Substitution> similar_units(std::string_view unit, Language language, const SubstitutionTable& table,
                                        double min_similarity) {
  if (table.language() != language) return {};
  auto subs = table.lookup(unit);
  // Lexicon forms such as "this'" share the key of "this"; they are not edits.
  const std::string key = unit_key(unit, language);
  std::erase_if(subs, [&](const Substitution& s) {
    return s.weight < min_similarity || s.unit == unit || unit_key(s.unit, language) == key;
  });
  return subs;
}

}  // namespace lir

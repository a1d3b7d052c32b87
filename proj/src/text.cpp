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

#include "lir/text.hpp"

#include <algorithm>

#include "lir/errors.hpp"

namespace lir {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

// Full-width and CJK punctuation stripped before scoring.
constexpr std::u32string_view kCjkPunctuation =
    U"，。！？、；：“”‘’（）《》〈〉【】〔〕「」『』—…·～－＿／＼＂＇＃＄％＆＊＋＜＝＞＠［］＾｀｛｜｝￥";

char32_t ascii_lower(char32_t cp) { return (cp >= U'A' && cp <= U'Z') ? cp + 32 : cp; }

bool is_word_char(char32_t cp) { return !is_space(cp) && !is_punctuation(cp); }

}  // namespace

std::string_view to_string(Language language) {
  return language == Language::zh ? "zh" : "en";
}

Language parse_language(std::string_view tag) {
  if (tag == "zh") return Language::zh;
  if (tag == "en") return Language::en;
  throw ConfigError("unsupported language tag '" + std::string(tag) + "' (expected zh or en)");
}

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    std::size_t len = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      len = 1;
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    if (i + len > text.size()) {
      out.push_back(kReplacement);
      break;
    }
    bool ok = true;
    for (std::size_t k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(text[i + k]);
      if ((b & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (b & 0x3F);
    }
    if (!ok) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) append_utf8(out, cp);
  return out;
}

bool is_space(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\v' ||
         cp == U'\f' || cp == 0x3000 || cp == 0x00A0;
}

bool is_punctuation(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) || (cp >= 0x5B && cp <= 0x60) ||
           (cp >= 0x7B && cp <= 0x7E);
  }
  return kCjkPunctuation.find(cp) != std::u32string_view::npos;
}

bool is_han(char32_t cp) {
  return (cp >= 0x4E00 && cp <= 0x9FFF) || (cp >= 0x3400 && cp <= 0x4DBF) ||
         (cp >= 0x20000 && cp <= 0x2EBEF) || (cp >= 0xF900 && cp <= 0xFAFF);
}

std::string normalize(std::string_view text, Language language) {
  const std::u32string cps = decode_utf8(text);
  std::u32string out;
  out.reserve(cps.size());
  if (language == Language::zh) {
    for (char32_t cp : cps) {
      if (is_space(cp) || is_punctuation(cp)) continue;
      out.push_back(ascii_lower(cp));
    }
    return encode_utf8(out);
  }

  bool pending_space = false;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    char32_t cp = cps[i];
    bool keep = is_word_char(cp);
    if (cp == U'\'') {
      // Apostrophes survive only between two word characters ("don't").
      keep = i > 0 && i + 1 < cps.size() && is_word_char(cps[i - 1]) && is_word_char(cps[i + 1]);
    }
    if (!keep) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(U' ');
    pending_space = false;
    out.push_back(ascii_lower(cp));
  }
  return encode_utf8(out);
}

std::vector<std::string> split_units(std::string_view text, Language language) {
  std::vector<std::string> units;
  const std::u32string cps = decode_utf8(text);
  if (language == Language::zh) {
    for (char32_t cp : cps) {
      if (is_space(cp)) continue;
      std::string unit;
      append_utf8(unit, cp);
      units.push_back(std::move(unit));
    }
    return units;
  }
  std::string current;
  for (char32_t cp : cps) {
    if (is_space(cp)) {
      if (!current.empty()) units.push_back(std::move(current));
      current.clear();
    } else {
      append_utf8(current, cp);
    }
  }
  if (!current.empty()) units.push_back(std::move(current));
  return units;
}

std::string join_units(std::span<const std::string> units, Language language) {
  std::string out;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (language == Language::en && i > 0) out.push_back(' ');
    out += units[i];
  }
  return out;
}

std::string unit_key(std::string_view unit, Language language) {
  if (language == Language::zh) return std::string(unit);
  std::string key = normalize(unit, Language::en);
  key.erase(std::remove(key.begin(), key.end(), ' '), key.end());
  return key;
}

std::string restyle_word(std::string_view original, std::string_view replacement_key) {
  const std::u32string cps = decode_utf8(original);
  std::size_t begin = 0;
  std::size_t end = cps.size();
  while (begin < end && !is_word_char(cps[begin])) ++begin;
  while (end > begin && !is_word_char(cps[end - 1])) --end;

  std::u32string core(cps.begin() + static_cast<std::ptrdiff_t>(begin),
                      cps.begin() + static_cast<std::ptrdiff_t>(end));
  std::u32string repl = decode_utf8(replacement_key);
  const bool all_upper = core.size() > 1 && std::all_of(core.begin(), core.end(), [](char32_t c) {
                           return !(c >= U'a' && c <= U'z');
                         }) && std::any_of(core.begin(), core.end(), [](char32_t c) {
                           return c >= U'A' && c <= U'Z';
                         });
  if (all_upper) {
    for (auto& c : repl)
      if (c >= U'a' && c <= U'z') c -= 32;
  } else if (!core.empty() && core[0] >= U'A' && core[0] <= U'Z' && !repl.empty() && repl[0] >= U'a' &&
             repl[0] <= U'z') {
    repl[0] -= 32;
  }

  std::u32string out(cps.begin(), cps.begin() + static_cast<std::ptrdiff_t>(begin));
  out += repl;
  out.append(cps.begin() + static_cast<std::ptrdiff_t>(end), cps.end());
  return encode_utf8(out);
}

}  // namespace lir

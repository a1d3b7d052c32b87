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

// UTF-8 handling, scoring normalization and unit splitting shared by every
// module. A "unit" is the granularity at which transcripts are edited: one
// code point for zh, one whitespace-delimited word for en.

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lir {

enum class Language { zh, en };

std::string_view to_string(Language language);
/// Accepts "zh" / "en"; throws ConfigError otherwise.
Language parse_language(std::string_view tag);

/// Invalid byte sequences decode to U+FFFD.
std::u32string decode_utf8(std::string_view text);
std::string encode_utf8(std::u32string_view text);
void append_utf8(std::string& out, char32_t cp);

bool is_space(char32_t cp);
/// Members of the fixed punctuation table (ASCII plus CJK/full-width marks).
bool is_punctuation(char32_t cp);
bool is_han(char32_t cp);

/// Scoring normalization.
///   en: ASCII lowercase; punctuation becomes a word break except apostrophes
///       inside a word; whitespace runs collapse to one space; trimmed.
///   zh: punctuation and all whitespace removed; ASCII lowercase.
std::string normalize(std::string_view text, Language language);

/// Raw editing units. zh: every non-space code point; en: whitespace tokens.
std::vector<std::string> split_units(std::string_view text, Language language);
std::string join_units(std::span<const std::string> units, Language language);

/// Comparison key of a single unit (en: normalized word, zh: the unit itself).
std::string unit_key(std::string_view unit, Language language);

/// Re-applies the affixes and capitalization of `original` (an en token such
/// as "Their,") to `replacement_key` (a bare lowercase word such as "there").
std::string restyle_word(std::string_view original, std::string_view replacement_key);

}  // namespace lir

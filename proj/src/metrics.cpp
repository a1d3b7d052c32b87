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

#include "lir/metrics.hpp"

#include <unordered_map>

#include "lir/assets.hpp"
#include "lir/errors.hpp"
#include "lir/kernels.hpp"

namespace lir {

namespace {

bool is_ascii_alnum(char32_t cp) {
  return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z') || (cp >= U'0' && cp <= U'9');
}

std::vector<kernels::Token> to_tokens(std::u32string_view s) {
  std::vector<kernels::Token> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = static_cast<kernels::Token>(s[i]);
  return out;
}

}  // namespace

std::size_t token_distance(std::span<const std::string> a, std::span<const std::string> b) {
  std::unordered_map<std::string_view, kernels::Token> ids;
  auto intern = [&](std::span<const std::string> seq) {
    std::vector<kernels::Token> out;
    out.reserve(seq.size());
    for (const auto& s : seq) {
      auto [it, inserted] = ids.try_emplace(s, static_cast<kernels::Token>(ids.size()));
      out.push_back(it->second);
    }
    return out;
  };
  const auto ia = intern(a);
  const auto ib = intern(b);
  return kernels::levenshtein(ia, ib);
}

std::size_t codepoint_distance(std::u32string_view a, std::u32string_view b) {
  const auto ta = to_tokens(a);
  const auto tb = to_tokens(b);
  return kernels::levenshtein(ta, tb);
}

ZhSegmenter::ZhSegmenter(const std::vector<std::string>& words) {
  for (const auto& w : words) {
    std::u32string cps = decode_utf8(w);
    if (cps.empty()) continue;
    max_length_ = std::max(max_length_, cps.size());
    words_.insert(std::move(cps));
  }
}

ZhSegmenter ZhSegmenter::load(const std::filesystem::path& path) {
  std::vector<std::string> words;
  for_each_entry(path, [&](std::string_view surface, std::string_view) { words.emplace_back(surface); });
  return ZhSegmenter(words);
}

const ZhSegmenter& ZhSegmenter::bundled() {
  static const ZhSegmenter instance = load(data_dir() / "zh_words.txt");
  return instance;
}

std::vector<std::string> ZhSegmenter::segment(std::string_view text) const {
  const std::u32string cps = decode_utf8(normalize(text, Language::zh));
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (is_ascii_alnum(cps[i])) {
      std::size_t j = i;
      while (j < cps.size() && is_ascii_alnum(cps[j])) ++j;
      out.push_back(encode_utf8(std::u32string_view(cps).substr(i, j - i)));
      i = j;
      continue;
    }
    std::size_t len = std::min(max_length_, cps.size() - i);
    for (; len > 1; --len) {
      if (words_.count(cps.substr(i, len)) != 0) break;
    }
    out.push_back(encode_utf8(std::u32string_view(cps).substr(i, len)));
    i += len;
  }
  return out;
}

std::u32string cer_tokens(std::string_view text, Language language) {
  return decode_utf8(normalize(text, language));
}

std::vector<std::string> wer_tokens(std::string_view text, Language language, const ZhSegmenter& segmenter) {
  if (language == Language::zh) return segmenter.segment(text);
  return split_units(normalize(text, Language::en), Language::en);
}

std::vector<std::string> wer_tokens(std::string_view text, Language language) {
  if (language == Language::zh) return ZhSegmenter::bundled().segment(text);
  return split_units(normalize(text, Language::en), Language::en);
}

RateParts cer_parts(std::string_view reference, std::string_view hypothesis, Language language) {
  const auto ref = cer_tokens(reference, language);
  if (ref.empty()) throw EmptyReference();
  const auto hyp = cer_tokens(hypothesis, language);
  return {codepoint_distance(ref, hyp), ref.size()};
}

RateParts wer_parts(std::string_view reference, std::string_view hypothesis, Language language,
                    const ZhSegmenter& segmenter) {
  const auto ref = wer_tokens(reference, language, segmenter);
  if (ref.empty()) throw EmptyReference();
  const auto hyp = wer_tokens(hypothesis, language, segmenter);
  return {token_distance(ref, hyp), ref.size()};
}

RateParts wer_parts(std::string_view reference, std::string_view hypothesis, Language language) {
  const auto ref = wer_tokens(reference, language);
  if (ref.empty()) throw EmptyReference();
  const auto hyp = wer_tokens(hypothesis, language);
  return {token_distance(ref, hyp), ref.size()};
}

double cer(std::string_view reference, std::string_view hypothesis, Language language) {
  return cer_parts(reference, hypothesis, language).rate();
}

double wer(std::string_view reference, std::string_view hypothesis, Language language) {
  return wer_parts(reference, hypothesis, language).rate();
}

double wer(std::string_view reference, std::string_view hypothesis, Language language,
           const ZhSegmenter& segmenter) {
  return wer_parts(reference, hypothesis, language, segmenter).rate();
}

}  // namespace lir

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

#include <cstdlib>
#include <string_view>

#include "lir/kernels.hpp"

namespace lir::kernels {

namespace {

// Below this many tokens on the shorter side the diagonal sweep costs more
// than it saves.
constexpr std::size_t kVectorMinLength = 8;

struct Table {
  Isa isa;
  std::size_t (*levenshtein)(std::span<const Token>, std::span<const Token>);
  std::size_t (*lcs_length)(std::span<const Token>, std::span<const Token>);
};

Table select() {
  const char* forced = std::getenv("LIR_KERNEL");
  if (forced != nullptr && std::string_view(forced) == "scalar") {
    return {Isa::scalar, &scalar::levenshtein, &scalar::lcs_length};
  }
  switch (detected_isa()) {
    case Isa::avx2:
      return {Isa::avx2, &avx2::levenshtein, &avx2::lcs_length};
    case Isa::neon:
      return {Isa::neon, &neon::levenshtein, &neon::lcs_length};
    case Isa::scalar:
      break;
  }
  return {Isa::scalar, &scalar::levenshtein, &scalar::lcs_length};
}

const Table& table() {
  static const Table t = select();
  return t;
}

bool short_input(std::span<const Token> a, std::span<const Token> b) {
  return a.size() < kVectorMinLength || b.size() < kVectorMinLength;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
    case Isa::scalar:
      break;
  }
  return "scalar";
}

Isa detected_isa() {
  if (avx2::available()) return Isa::avx2;
  if (neon::available()) return Isa::neon;
  return Isa::scalar;
}

Isa active_isa() { return table().isa; }

std::size_t levenshtein(std::span<const Token> a, std::span<const Token> b) {
  if (short_input(a, b)) return scalar::levenshtein(a, b);
  return table().levenshtein(a, b);
}

std::size_t lcs_length(std::span<const Token> a, std::span<const Token> b) {
  if (short_input(a, b)) return scalar::lcs_length(a, b);
  return table().lcs_length(a, b);
}

}  // namespace lir::kernels

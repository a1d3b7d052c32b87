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

// Sequence-alignment kernels over interned token ids.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, a vector implementation that walks the DP matrix along
// anti-diagonals (cells on one anti-diagonal are independent). The public
// entry points dispatch once, at first use, on the running CPU. Set
// LIR_KERNEL=scalar in the environment to force the reference path.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace lir::kernels {

using Token = std::int32_t;

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa);

/// Best implementation the running CPU supports (ignores LIR_KERNEL).
Isa detected_isa();
/// Implementation the dispatching entry points use.
Isa active_isa();

/// Unit-cost Levenshtein distance.
std::size_t levenshtein(std::span<const Token> a, std::span<const Token> b);
/// Length of the longest common subsequence.
std::size_t lcs_length(std::span<const Token> a, std::span<const Token> b);

namespace scalar {
std::size_t levenshtein(std::span<const Token> a, std::span<const Token> b);
std::size_t lcs_length(std::span<const Token> a, std::span<const Token> b);
}  // namespace scalar

// The vector namespaces are only callable when detected_isa() reports them.
namespace avx2 {
bool available();
std::size_t levenshtein(std::span<const Token> a, std::span<const Token> b);
std::size_t lcs_length(std::span<const Token> a, std::span<const Token> b);
}  // namespace avx2

namespace neon {
bool available();
std::size_t levenshtein(std::span<const Token> a, std::span<const Token> b);
std::size_t lcs_length(std::span<const Token> a, std::span<const Token> b);
}  // namespace neon

}  // namespace lir::kernels

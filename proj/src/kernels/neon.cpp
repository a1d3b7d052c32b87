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

// NEON counterpart of avx2.cpp: same anti-diagonal sweep, 4 lanes.

#include <algorithm>
#include <vector>

#include "lir/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace lir::kernels::neon {

#if defined(__aarch64__)

namespace {

struct Buffers {
  std::vector<Token> brev;
  std::vector<std::int32_t> d0, d1, d2;

  Buffers(std::span<const Token> b, std::size_t m) : brev(b.rbegin(), b.rend()), d0(m + 1), d1(m + 1), d2(m + 1) {}
};

}  // namespace

bool available() { return true; }

std::size_t levenshtein(std::span<const Token> a, std::span<const Token> b) {
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  if (m == 0) return n;
  if (n == 0) return m;
  Buffers buf(b, m);
  std::int32_t* cur = buf.d0.data();
  std::int32_t* prev1 = buf.d1.data();
  std::int32_t* prev2 = buf.d2.data();
  const Token* ap = a.data();
  const int32x4_t one = vdupq_n_s32(1);
  prev2[0] = 0;
  prev1[0] = 1;
  prev1[1] = 1;
  for (std::size_t d = 2; d <= m + n; ++d) {
    const std::size_t lo = d > n ? d - n : 1;
    const std::size_t hi = std::min(m, d - 1);
    if (d <= n) cur[0] = static_cast<std::int32_t>(d);
    if (d <= m) cur[d] = static_cast<std::int32_t>(d);
    const Token* bdiag = buf.brev.data() + n - d;
    std::size_t i = lo;
    for (; i + 4 <= hi + 1; i += 4) {
      const uint32x4_t eq = vceqq_s32(vld1q_s32(ap + i - 1), vld1q_s32(bdiag + i));
      const int32x4_t cost = vbicq_s32(one, vreinterpretq_s32_u32(eq));
      const int32x4_t diag = vaddq_s32(vld1q_s32(prev2 + i - 1), cost);
      const int32x4_t gap = vaddq_s32(vminq_s32(vld1q_s32(prev1 + i - 1), vld1q_s32(prev1 + i)), one);
      vst1q_s32(cur + i, vminq_s32(diag, gap));
    }
    for (; i <= hi; ++i) {
      const std::int32_t diag = prev2[i - 1] + (ap[i - 1] == bdiag[i] ? 0 : 1);
      cur[i] = std::min(diag, std::min(prev1[i - 1], prev1[i]) + 1);
    }
    std::int32_t* t = prev2;
    prev2 = prev1;
    prev1 = cur;
    cur = t;
  }
  return static_cast<std::size_t>(prev1[m]);
}

std::size_t lcs_length(std::span<const Token> a, std::span<const Token> b) {
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  if (m == 0 || n == 0) return 0;
  Buffers buf(b, m);
  std::int32_t* cur = buf.d0.data();
  std::int32_t* prev1 = buf.d1.data();
  std::int32_t* prev2 = buf.d2.data();
  const Token* ap = a.data();
  const int32x4_t one = vdupq_n_s32(1);
  for (std::size_t d = 2; d <= m + n; ++d) {
    const std::size_t lo = d > n ? d - n : 1;
    const std::size_t hi = std::min(m, d - 1);
    if (d <= n) cur[0] = 0;
    if (d <= m) cur[d] = 0;
    const Token* bdiag = buf.brev.data() + n - d;
    std::size_t i = lo;
    for (; i + 4 <= hi + 1; i += 4) {
      const uint32x4_t eq = vceqq_s32(vld1q_s32(ap + i - 1), vld1q_s32(bdiag + i));
      const int32x4_t diag = vaddq_s32(vld1q_s32(prev2 + i - 1), one);
      const int32x4_t best = vmaxq_s32(vld1q_s32(prev1 + i - 1), vld1q_s32(prev1 + i));
      vst1q_s32(cur + i, vbslq_s32(eq, diag, best));
    }
    for (; i <= hi; ++i) {
      cur[i] = ap[i - 1] == bdiag[i] ? prev2[i - 1] + 1 : std::max(prev1[i - 1], prev1[i]);
    }
    std::int32_t* t = prev2;
    prev2 = prev1;
    prev1 = cur;
    cur = t;
  }
  return static_cast<std::size_t>(prev1[m]);
}

#else

bool available() { return false; }
std::size_t levenshtein(std::span<const Token> a, std::span<const Token> b) { return scalar::levenshtein(a, b); }
std::size_t lcs_length(std::span<const Token> a, std::span<const Token> b) { return scalar::lcs_length(a, b); }

#endif

}  // namespace lir::kernels::neon

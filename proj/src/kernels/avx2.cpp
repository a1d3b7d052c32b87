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

// Anti-diagonal AVX2 kernels. Row i of diagonal d is cell (i, d - i); the
// diagonal buffers are indexed by row, so the three DP predecessors of a
// block of 8 rows are contiguous loads. `b` is reversed up front so that
// b[d - i - 1] is contiguous in i as well.
//
// Only the worker functions carry target("avx2"); buffers are owned by the
// plain wrappers so no std:: template is instantiated with AVX2 codegen.

#include <algorithm>
#include <vector>

#include "lir/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define LIR_HAVE_AVX2_KERNELS 1
#endif

namespace lir::kernels::avx2 {

#if defined(LIR_HAVE_AVX2_KERNELS)

namespace {

struct Buffers {
  std::vector<Token> brev;
  std::vector<std::int32_t> d0, d1, d2;

  Buffers(std::span<const Token> b, std::size_t m) : brev(b.rbegin(), b.rend()), d0(m + 1), d1(m + 1), d2(m + 1) {}
};

__attribute__((target("avx2"))) std::int32_t levenshtein_diagonals(const Token* a, std::size_t m,
                                                                    const Token* brev, std::size_t n,
                                                                    std::int32_t* cur, std::int32_t* prev1,
                                                                    std::int32_t* prev2) {
  const __m256i one = _mm256_set1_epi32(1);
  prev2[0] = 0;
  prev1[0] = 1;
  prev1[1] = 1;
  for (std::size_t d = 2; d <= m + n; ++d) {
    const std::size_t lo = d > n ? d - n : 1;
    const std::size_t hi = std::min(m, d - 1);
    if (d <= n) cur[0] = static_cast<std::int32_t>(d);
    if (d <= m) cur[d] = static_cast<std::int32_t>(d);

    const Token* bdiag = brev + n - d;  // bdiag[i] == b[d - i - 1]
    std::size_t i = lo;
    for (; i + 8 <= hi + 1; i += 8) {
      const __m256i av = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i - 1));
      const __m256i bv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(bdiag + i));
      const __m256i cost = _mm256_andnot_si256(_mm256_cmpeq_epi32(av, bv), one);
      const __m256i diag =
          _mm256_add_epi32(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(prev2 + i - 1)), cost);
      const __m256i up = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(prev1 + i - 1));
      const __m256i left = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(prev1 + i));
      const __m256i gap = _mm256_add_epi32(_mm256_min_epi32(up, left), one);
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(cur + i), _mm256_min_epi32(diag, gap));
    }
    for (; i <= hi; ++i) {
      const std::int32_t diag = prev2[i - 1] + (a[i - 1] == bdiag[i] ? 0 : 1);
      cur[i] = std::min(diag, std::min(prev1[i - 1], prev1[i]) + 1);
    }
    std::int32_t* t = prev2;
    prev2 = prev1;
    prev1 = cur;
    cur = t;
  }
  return prev1[m];
}

__attribute__((target("avx2"))) std::int32_t lcs_diagonals(const Token* a, std::size_t m, const Token* brev,
                                                            std::size_t n, std::int32_t* cur,
                                                            std::int32_t* prev1, std::int32_t* prev2) {
  const __m256i one = _mm256_set1_epi32(1);
  for (std::size_t d = 2; d <= m + n; ++d) {
    const std::size_t lo = d > n ? d - n : 1;
    const std::size_t hi = std::min(m, d - 1);
    if (d <= n) cur[0] = 0;
    if (d <= m) cur[d] = 0;

    const Token* bdiag = brev + n - d;
    std::size_t i = lo;
    for (; i + 8 <= hi + 1; i += 8) {
      const __m256i av = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i - 1));
      const __m256i bv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(bdiag + i));
      const __m256i eq = _mm256_cmpeq_epi32(av, bv);
      const __m256i diag =
          _mm256_add_epi32(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(prev2 + i - 1)), one);
      const __m256i up = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(prev1 + i - 1));
      const __m256i left = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(prev1 + i));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(cur + i),
                          _mm256_blendv_epi8(_mm256_max_epi32(up, left), diag, eq));
    }
    for (; i <= hi; ++i) {
      cur[i] = a[i - 1] == bdiag[i] ? prev2[i - 1] + 1 : std::max(prev1[i - 1], prev1[i]);
    }
    std::int32_t* t = prev2;
    prev2 = prev1;
    prev1 = cur;
    cur = t;
  }
  return prev1[m];
}

}  // namespace

bool available() {
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok;
}

std::size_t levenshtein(std::span<const Token> a, std::span<const Token> b) {
  if (a.empty()) return b.size();
  if (b.empty()) return a.size();
  Buffers buf(b, a.size());
  return static_cast<std::size_t>(levenshtein_diagonals(a.data(), a.size(), buf.brev.data(), b.size(),
                                                        buf.d0.data(), buf.d1.data(), buf.d2.data()));
}

std::size_t lcs_length(std::span<const Token> a, std::span<const Token> b) {
  if (a.empty() || b.empty()) return 0;
  Buffers buf(b, a.size());
  return static_cast<std::size_t>(
      lcs_diagonals(a.data(), a.size(), buf.brev.data(), b.size(), buf.d0.data(), buf.d1.data(), buf.d2.data()));
}

#else

bool available() { return false; }
std::size_t levenshtein(std::span<const Token> a, std::span<const Token> b) { return scalar::levenshtein(a, b); }
std::size_t lcs_length(std::span<const Token> a, std::span<const Token> b) { return scalar::lcs_length(a, b); }

#endif

}  // namespace lir::kernels::avx2

// Compiled with -mavx2; only reached after a runtime CPUID check.

#include <immintrin.h>

#include "kernels_internal.hpp"

namespace penair::kernels::detail {
namespace {

void adjacent_differences_avx2(std::span<const std::int64_t> t, std::span<std::int64_t> out) {
  const std::size_t n = t.size() < 2 ? 0 : t.size() - 1;
  const std::int64_t* src = t.data();
  std::int64_t* dst = out.data();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i lo = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    const __m256i hi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i + 1));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_sub_epi64(hi, lo));
  }
  for (; i < n; ++i) dst[i] = src[i + 1] - src[i];
}

void find_gaps_avx2(std::span<const std::int64_t> t, std::int64_t threshold,
                    std::vector<std::size_t>& out) {
  const std::size_t n = t.size() < 2 ? 0 : t.size() - 1;
  const std::int64_t* src = t.data();
  const __m256i limit = _mm256_set1_epi64x(threshold);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i lo = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    const __m256i hi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i + 1));
    const __m256i over = _mm256_cmpgt_epi64(_mm256_sub_epi64(hi, lo), limit);
    unsigned mask = static_cast<unsigned>(_mm256_movemask_pd(_mm256_castsi256_pd(over)));
    while (mask != 0) {
      out.push_back(i + static_cast<std::size_t>(__builtin_ctz(mask)));
      mask &= mask - 1;
    }
  }
  for (; i < n; ++i) {
    if (src[i + 1] - src[i] > threshold) out.push_back(i);
  }
}

std::size_t count_transitions_avx2(std::span<const std::uint8_t> status) {
  const std::size_t n = status.size() < 2 ? 0 : status.size() - 1;
  const std::uint8_t* src = status.data();
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i + 1));
    const auto same = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(a, b)));
    count += static_cast<std::size_t>(_mm_popcnt_u32(~same));
  }
  for (; i < n; ++i) count += src[i] != src[i + 1];
  return count;
}

}  // namespace

const KernelSet& avx2_set() {
  static const KernelSet set{"avx2", adjacent_differences_avx2, find_gaps_avx2,
                             count_transitions_avx2};
  return set;
}

}  // namespace penair::kernels::detail

#include "polyskel/kernels.hpp"

#include <bit>

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define POLYSKEL_HAVE_AVX2_TU 1
#else
#define POLYSKEL_HAVE_AVX2_TU 0
#endif

namespace polyskel::kernels::avx2 {

#if POLYSKEL_HAVE_AVX2_TU

namespace {

// Hit mask (bit j <-> lane j) for eight consecutive offsets.
__attribute__((target("avx2"))) inline unsigned probe8(const std::uint32_t* words, __m256i base,
                                                       const std::uint32_t* offs) {
  const __m256i idx = _mm256_xor_si256(base, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(offs)));
  const __m256i word_idx = _mm256_srli_epi32(idx, 5);
  const __m256i w = _mm256_i32gather_epi32(reinterpret_cast<const int*>(words), word_idx, 4);
  const __m256i shift = _mm256_and_si256(idx, _mm256_set1_epi32(31));
  const __m256i bit = _mm256_slli_epi32(_mm256_srlv_epi32(w, shift), 31);
  return static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(bit)));
}

}  // namespace

__attribute__((target("avx2"))) std::size_t count_xor_hits(Bitmap bitmap, std::uint32_t base,
                                                           std::span<const std::uint32_t> offsets) {
  const __m256i vb = _mm256_set1_epi32(static_cast<int>(base));
  std::size_t hits = 0;
  std::size_t i = 0;
  for (; i + 8 <= offsets.size(); i += 8) {
    hits += static_cast<std::size_t>(std::popcount(probe8(bitmap.data(), vb, offsets.data() + i)));
  }
  for (; i < offsets.size(); ++i) hits += test_bit(bitmap, base ^ offsets[i]);
  return hits;
}

__attribute__((target("avx2"))) std::size_t first_xor_hit(Bitmap bitmap, std::uint32_t base,
                                                          std::span<const std::uint32_t> offsets) {
  const __m256i vb = _mm256_set1_epi32(static_cast<int>(base));
  std::size_t i = 0;
  for (; i + 8 <= offsets.size(); i += 8) {
    const unsigned m = probe8(bitmap.data(), vb, offsets.data() + i);
    if (m != 0) return i + static_cast<std::size_t>(std::countr_zero(m));
  }
  for (; i < offsets.size(); ++i) {
    if (test_bit(bitmap, base ^ offsets[i])) return i;
  }
  return offsets.size();
}

__attribute__((target("avx2"))) void select_xor_hits(Bitmap bitmap, std::uint32_t base,
                                                     std::span<const std::uint32_t> offsets,
                                                     std::vector<std::uint32_t>& out) {
  const __m256i vb = _mm256_set1_epi32(static_cast<int>(base));
  std::size_t i = 0;
  for (; i + 8 <= offsets.size(); i += 8) {
    for (unsigned m = probe8(bitmap.data(), vb, offsets.data() + i); m != 0; m &= m - 1) {
      out.push_back(base ^ offsets[i + static_cast<std::size_t>(std::countr_zero(m))]);
    }
  }
  for (; i < offsets.size(); ++i) {
    const std::uint32_t v = base ^ offsets[i];
    if (test_bit(bitmap, v)) out.push_back(v);
  }
}

#else

std::size_t count_xor_hits(Bitmap bitmap, std::uint32_t base, std::span<const std::uint32_t> offsets) {
  return scalar::count_xor_hits(bitmap, base, offsets);
}
std::size_t first_xor_hit(Bitmap bitmap, std::uint32_t base, std::span<const std::uint32_t> offsets) {
  return scalar::first_xor_hit(bitmap, base, offsets);
}
void select_xor_hits(Bitmap bitmap, std::uint32_t base, std::span<const std::uint32_t> offsets,
                     std::vector<std::uint32_t>& out) {
  scalar::select_xor_hits(bitmap, base, offsets, out);
}

#endif

}  // namespace polyskel::kernels::avx2

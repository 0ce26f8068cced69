#include <immintrin.h>

#include <algorithm>
#include <cstdlib>
#include <vector>

#include "tablegrid/simd/kernels.hpp"

namespace tablegrid::simd {

namespace {

void rgb_to_luma(const std::uint8_t* rgb, std::uint8_t* out, std::size_t pixels) {
  // Each 128-bit half holds 4 pixels (12 bytes); shuffle one channel into
  // the low byte of each 32-bit lane.
  const __m256i pick_r = _mm256_setr_epi8(0, -1, -1, -1, 3, -1, -1, -1, 6, -1, -1, -1, 9, -1, -1, -1,
                                          0, -1, -1, -1, 3, -1, -1, -1, 6, -1, -1, -1, 9, -1, -1, -1);
  const __m256i pick_g = _mm256_setr_epi8(1, -1, -1, -1, 4, -1, -1, -1, 7, -1, -1, -1, 10, -1, -1, -1,
                                          1, -1, -1, -1, 4, -1, -1, -1, 7, -1, -1, -1, 10, -1, -1, -1);
  const __m256i pick_b = _mm256_setr_epi8(2, -1, -1, -1, 5, -1, -1, -1, 8, -1, -1, -1, 11, -1, -1, -1,
                                          2, -1, -1, -1, 5, -1, -1, -1, 8, -1, -1, -1, 11, -1, -1, -1);
  const __m256i wr = _mm256_set1_epi32(299);
  const __m256i wg = _mm256_set1_epi32(587);
  const __m256i wb = _mm256_set1_epi32(114);
  const __m256i half = _mm256_set1_epi32(500);
  const __m256 thousand = _mm256_set1_ps(1000.0f);
  const __m256i gather_low = _mm256_setr_epi32(0, 4, 1, 1, 1, 1, 1, 1);

  std::size_t i = 0;
  // The upper half loads 16 bytes from pixel i+4, so keep 10 pixels of slack.
  for (; i + 10 <= pixels; i += 8) {
    const std::uint8_t* p = rgb + 3 * i;
    const __m256i raw = _mm256_loadu2_m128i(reinterpret_cast<const __m128i*>(p + 12),
                                            reinterpret_cast<const __m128i*>(p));
    const __m256i r = _mm256_shuffle_epi8(raw, pick_r);
    const __m256i g = _mm256_shuffle_epi8(raw, pick_g);
    const __m256i b = _mm256_shuffle_epi8(raw, pick_b);
    __m256i s = _mm256_add_epi32(_mm256_mullo_epi32(r, wr), _mm256_mullo_epi32(g, wg));
    s = _mm256_add_epi32(s, _mm256_mullo_epi32(b, wb));
    s = _mm256_add_epi32(s, half);
    // s < 2^24 is exact in float and s / 1000 never rounds across an integer.
    const __m256i q = _mm256_cvttps_epi32(_mm256_div_ps(_mm256_cvtepi32_ps(s), thousand));
    __m256i packed = _mm256_packus_epi32(q, q);
    packed = _mm256_packus_epi16(packed, packed);
    packed = _mm256_permutevar8x32_epi32(packed, gather_low);
    _mm_storel_epi64(reinterpret_cast<__m128i*>(out + i), _mm256_castsi256_si128(packed));
  }
  for (; i < pixels; ++i) {
    const std::uint32_t s = 299u * rgb[3 * i] + 587u * rgb[3 * i + 1] + 114u * rgb[3 * i + 2];
    out[i] = static_cast<std::uint8_t>((s + 500u) / 1000u);
  }
}

void threshold_black(const std::uint8_t* gray, std::uint8_t* out, std::size_t n,
                     std::uint8_t threshold) {
  const __m256i t = _mm256_set1_epi8(static_cast<char>(threshold));
  const __m256i one = _mm256_set1_epi8(1);
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(gray + i));
    const __m256i le = _mm256_cmpeq_epi8(_mm256_min_epu8(v, t), v);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_and_si256(le, one));
  }
  for (; i < n; ++i) out[i] = gray[i] <= threshold ? 1 : 0;
}

std::uint64_t horizontal_sum(__m256i v) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

OverlapSums overlap_sums(const std::uint8_t* target, const std::uint8_t* candidate,
                         std::size_t n) {
  const __m256i white = _mm256_set1_epi8(static_cast<char>(0xFF));
  __m256i diff = _mm256_setzero_si256();
  __m256i dark_t = _mm256_setzero_si256();
  __m256i dark_c = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i t = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(target + i));
    const __m256i c = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(candidate + i));
    diff = _mm256_add_epi64(diff, _mm256_sad_epu8(t, c));
    dark_t = _mm256_add_epi64(dark_t, _mm256_sad_epu8(t, white));
    dark_c = _mm256_add_epi64(dark_c, _mm256_sad_epu8(c, white));
  }
  OverlapSums s{horizontal_sum(diff), horizontal_sum(dark_t), horizontal_sum(dark_c)};
  for (; i < n; ++i) {
    s.abs_diff += static_cast<std::uint64_t>(std::abs(int(target[i]) - int(candidate[i])));
    s.dark_target += 255u - target[i];
    s.dark_candidate += 255u - candidate[i];
  }
  return s;
}

void column_runs(const std::uint8_t* mask, int width, int height, std::uint32_t* longest) {
  int x = 0;
  // 16-bit lane counters; taller images take the scalar path.
  if (height < 0xFFFF) {
    const __m256i zero = _mm256_setzero_si256();
    const __m256i one = _mm256_set1_epi16(1);
    for (; x + 16 <= width; x += 16) {
      __m256i run = zero;
      __m256i best = zero;
      for (int y = 0; y < height; ++y) {
        const __m128i bytes = _mm_loadu_si128(
            reinterpret_cast<const __m128i*>(mask + static_cast<std::size_t>(y) * width + x));
        const __m256i set = _mm256_cmpgt_epi16(_mm256_cvtepu8_epi16(bytes), zero);
        run = _mm256_and_si256(_mm256_add_epi16(run, one), set);
        best = _mm256_max_epu16(best, run);
      }
      alignas(32) std::uint16_t lanes[16];
      _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), best);
      for (int k = 0; k < 16; ++k) longest[x + k] = lanes[k];
    }
  }
  for (; x < width; ++x) {
    std::uint32_t run = 0;
    std::uint32_t best = 0;
    for (int y = 0; y < height; ++y) {
      run = mask[static_cast<std::size_t>(y) * width + x] ? run + 1 : 0;
      best = std::max(best, run);
    }
    longest[x] = best;
  }
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{"avx2", rgb_to_luma, threshold_black, overlap_sums, column_runs};
  return table;
}

}  // namespace tablegrid::simd

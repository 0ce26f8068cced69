#include <algorithm>
#include <cstdlib>

#include "tablegrid/simd/kernels.hpp"

namespace tablegrid::simd {

namespace {

void rgb_to_luma(const std::uint8_t* rgb, std::uint8_t* out, std::size_t pixels) {
  for (std::size_t i = 0; i < pixels; ++i) {
    const std::uint32_t s = 299u * rgb[3 * i] + 587u * rgb[3 * i + 1] + 114u * rgb[3 * i + 2];
    out[i] = static_cast<std::uint8_t>((s + 500u) / 1000u);
  }
}

void threshold_black(const std::uint8_t* gray, std::uint8_t* out, std::size_t n,
                     std::uint8_t threshold) {
  for (std::size_t i = 0; i < n; ++i) out[i] = gray[i] <= threshold ? 1 : 0;
}

OverlapSums overlap_sums(const std::uint8_t* target, const std::uint8_t* candidate,
                         std::size_t n) {
  OverlapSums s;
  for (std::size_t i = 0; i < n; ++i) {
    s.abs_diff += static_cast<std::uint64_t>(std::abs(int(target[i]) - int(candidate[i])));
    s.dark_target += 255u - target[i];
    s.dark_candidate += 255u - candidate[i];
  }
  return s;
}

void column_runs(const std::uint8_t* mask, int width, int height, std::uint32_t* longest) {
  for (int x = 0; x < width; ++x) {
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

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", rgb_to_luma, threshold_black, overlap_sums,
                                 column_runs};
  return table;
}

}  // namespace tablegrid::simd

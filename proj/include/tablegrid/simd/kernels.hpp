#pragma once

// Data-parallel pixel kernels. Every kernel has a scalar reference
// implementation; an AVX2 variant is compiled on x86-64 and chosen at runtime
// when the CPU supports it. Variants must agree bit-exactly.

#include <cstddef>
#include <cstdint>

namespace tablegrid::simd {

// Integer sums behind the overlap objective, on 8-bit intensities:
// sum |t - c|, sum (255 - t), sum (255 - c).
struct OverlapSums {
  std::uint64_t abs_diff = 0;
  std::uint64_t dark_target = 0;
  std::uint64_t dark_candidate = 0;
  bool operator==(const OverlapSums&) const = default;
};

struct KernelTable {
  const char* name;
  // round(0.299 R + 0.587 G + 0.114 B), halves rounded up.
  void (*rgb_to_luma)(const std::uint8_t* rgb, std::uint8_t* out, std::size_t pixels);
  // out[i] = 1 when gray[i] <= threshold (black), else 0.
  void (*threshold_black)(const std::uint8_t* gray, std::uint8_t* out, std::size_t n,
                          std::uint8_t threshold);
  OverlapSums (*overlap_sums)(const std::uint8_t* target, const std::uint8_t* candidate,
                              std::size_t n);
  // Longest vertical run of non-zero mask values per column.
  void (*column_runs)(const std::uint8_t* mask, int width, int height, std::uint32_t* longest);
};

const KernelTable& scalar_kernels();

// nullptr when the AVX2 variant was not built or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

// Best available table, resolved once. TABLEGRID_SIMD=scalar forces the
// reference kernels.
const KernelTable& active_kernels();

}  // namespace tablegrid::simd

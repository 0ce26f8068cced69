#include <doctest.h>

#include <cstdlib>
#include <random>
#include <vector>

#include "tablegrid/simd/kernels.hpp"

using namespace tablegrid::simd;

namespace {

// Straight-from-definition oracles.
std::uint8_t luma_oracle(int r, int g, int b) {
  // Exact decimal arithmetic: 299 R + 587 G + 114 B over 1000, halves up.
  return static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
}

OverlapSums overlap_oracle(const std::vector<std::uint8_t>& t, const std::vector<std::uint8_t>& c) {
  OverlapSums s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    s.abs_diff += static_cast<std::uint64_t>(std::abs(int(t[i]) - int(c[i])));
    s.dark_target += 255u - t[i];
    s.dark_candidate += 255u - c[i];
  }
  return s;
}

std::vector<std::uint32_t> column_runs_oracle(const std::vector<std::uint8_t>& m, int w, int h) {
  std::vector<std::uint32_t> out(static_cast<std::size_t>(w), 0);
  for (int x = 0; x < w; ++x) {
    std::uint32_t run = 0;
    for (int y = 0; y < h; ++y) {
      run = m[static_cast<std::size_t>(y) * w + x] ? run + 1 : 0;
      out[static_cast<std::size_t>(x)] = std::max(out[static_cast<std::size_t>(x)], run);
    }
  }
  return out;
}

std::vector<const KernelTable*> variants() {
  std::vector<const KernelTable*> v{&scalar_kernels()};
  if (const auto* a = avx2_kernels()) v.push_back(a);
  return v;
}

std::vector<std::uint8_t> random_bytes(std::size_t n, std::mt19937& rng) {
  std::vector<std::uint8_t> v(n);
  std::uniform_int_distribution<int> d(0, 255);
  for (auto& b : v) b = static_cast<std::uint8_t>(d(rng));
  return v;
}

}  // namespace

TEST_CASE("luma kernels match the integer oracle on every variant") {
  std::mt19937 rng(1);
  for (std::size_t n : {0u, 1u, 7u, 31u, 32u, 33u, 100u, 1001u}) {
    auto rgb = random_bytes(n * 3, rng);
    std::vector<std::uint8_t> want(n);
    for (std::size_t i = 0; i < n; ++i) want[i] = luma_oracle(rgb[3 * i], rgb[3 * i + 1], rgb[3 * i + 2]);
    for (const auto* k : variants()) {
      std::vector<std::uint8_t> got(n, 7);
      k->rgb_to_luma(rgb.data(), got.data(), n);
      CHECK_MESSAGE(got == want, k->name << " n=" << n);
    }
  }
}

TEST_CASE("luma kernels are exact over a dense sweep of the colour cube") {
  std::vector<std::uint8_t> rgb;
  for (int r = 0; r < 256; r += 3) {
    for (int g = 0; g < 256; g += 5) {
      for (int b = 0; b < 256; b += 7) {
        rgb.insert(rgb.end(), {std::uint8_t(r), std::uint8_t(g), std::uint8_t(b)});
      }
    }
  }
  const std::size_t n = rgb.size() / 3;
  std::vector<std::uint8_t> want(n);
  for (std::size_t i = 0; i < n; ++i) want[i] = luma_oracle(rgb[3 * i], rgb[3 * i + 1], rgb[3 * i + 2]);
  for (const auto* k : variants()) {
    std::vector<std::uint8_t> got(n);
    k->rgb_to_luma(rgb.data(), got.data(), n);
    CHECK_MESSAGE(got == want, k->name);
  }
}

TEST_CASE("threshold kernels classify the boundary as black") {
  std::vector<std::uint8_t> gray(256);
  for (int i = 0; i < 256; ++i) gray[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  for (const auto* k : variants()) {
    for (int t : {0, 1, 125, 254, 255}) {
      std::vector<std::uint8_t> out(256);
      k->threshold_black(gray.data(), out.data(), gray.size(), static_cast<std::uint8_t>(t));
      for (int i = 0; i < 256; ++i) REQUIRE(out[static_cast<std::size_t>(i)] == (i <= t ? 1 : 0));
    }
  }
}

TEST_CASE("overlap sums agree with the oracle on every variant") {
  std::mt19937 rng(2);
  for (std::size_t n : {0u, 1u, 31u, 32u, 63u, 64u, 65u, 4099u, 595u * 842u}) {
    auto t = random_bytes(n, rng);
    auto c = random_bytes(n, rng);
    const auto want = overlap_oracle(t, c);
    for (const auto* k : variants()) CHECK_MESSAGE(k->overlap_sums(t.data(), c.data(), n) == want, k->name << " n=" << n);
  }
}

TEST_CASE("column run kernels agree with the oracle, including long runs") {
  std::mt19937 rng(3);
  for (auto [w, h] : {std::pair{1, 1}, {5, 3}, {31, 17}, {32, 70000}, {33, 300}, {100, 1}}) {
    std::vector<std::uint8_t> m(static_cast<std::size_t>(w) * h);
    std::bernoulli_distribution black(0.8);
    for (auto& b : m) b = black(rng) ? 1 : 0;
    // A column that is black throughout overflows any narrow counter.
    for (int y = 0; y < h; ++y) m[static_cast<std::size_t>(y) * w] = 1;
    const auto want = column_runs_oracle(m, w, h);
    for (const auto* k : variants()) {
      std::vector<std::uint32_t> got(static_cast<std::size_t>(w));
      k->column_runs(m.data(), w, h, got.data());
      CHECK_MESSAGE(got == want, k->name << " " << w << "x" << h);
    }
  }
}

TEST_CASE("active kernels honour the scalar override") {
  const char* forced = std::getenv("TABLEGRID_SIMD");
  if (forced && std::string(forced) == "scalar") {
    CHECK(std::string(active_kernels().name) == "scalar");
  } else if (avx2_kernels()) {
    CHECK(std::string(active_kernels().name) == avx2_kernels()->name);
  }
}

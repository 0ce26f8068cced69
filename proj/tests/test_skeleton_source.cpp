#include <doctest.h>

#include "helpers.hpp"
#include "tablegrid/error.hpp"
#include "tablegrid/png_io.hpp"
#include "tablegrid/render.hpp"
#include "tablegrid/skeleton_source.hpp"
#include "tablegrid/xycut.hpp"

using namespace tablegrid;

TEST_CASE("degrade with no artifacts and no jitter is the identity") {
  auto img = render_skeleton(sample_genotype(builtin_config("base"), 1), BorderStyle::blurred());
  NoiseParams p;
  p.seed = 9;
  CHECK(degrade(img, p) == img);
}

TEST_CASE("artifacts only darken white pixels and keep dimensions") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto img = render_skeleton(sample_genotype(builtin_config("base"), seed), BorderStyle::blurred());
    NoiseParams p;
    p.artifact_count = {3, 8};
    p.seed = seed;
    auto out = degrade(img, p);
    REQUIRE(out.width() == img.width());
    REQUIRE(out.height() == img.height());
    std::size_t changed = 0;
    for (std::size_t i = 0; i < img.size(); ++i) {
      if (out.pixels()[i] != img.pixels()[i]) {
        CHECK(img.pixels()[i] == 255);
        CHECK(out.pixels()[i] == 0);
        ++changed;
      }
    }
    CHECK(changed > 0);
    CHECK(degrade(img, p) == out);
  }
}

TEST_CASE("jitter keeps values in range and is seeded") {
  auto img = render_skeleton(sample_genotype(builtin_config("base"), 2), BorderStyle::blurred());
  NoiseParams p;
  p.gray_jitter_sigma = 20;
  p.seed = 4;
  auto a = degrade(img, p);
  CHECK(a == degrade(img, p));
  CHECK_FALSE(a == img);
  p.gray_jitter_sigma = -1;
  CHECK_THROWS_AS(degrade(img, p), InvalidArgument);
}

TEST_CASE("short artifacts never change the estimate") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto& config = builtin_configs()[seed % 4];
    auto img = render_skeleton(sample_genotype(config, seed, {}, 10, 10), BorderStyle::blurred());
    NoiseParams p;
    p.artifact_count = {5, 10};
    p.artifact_len_frac = 0.2;
    p.seed = seed;
    CHECK(estimate_structure(degrade(img, p)) == estimate_structure(img));
  }
}

TEST_CASE("long artifacts can inject spurious dividers") {
  int spurious = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto g = sample_genotype(builtin_config("base"), seed, {}, 10, 10);
    auto img = render_skeleton(g, BorderStyle::blurred());
    NoiseParams p;
    p.artifact_count = {5, 10};
    p.artifact_len_frac = 0.5;
    p.seed = seed;
    const auto d = find_dividers(degrade(img, p));
    if (d.horizontal_positions.size() != g.horizontal_dividers().size() ||
        d.vertical_positions.size() != g.vertical_dividers().size()) {
      ++spurious;
    }
  }
  CHECK(spurious > 0);
}

TEST_CASE("external skeletons are resampled into the estimation space") {
  const auto dir = scratch_dir("external");
  auto g = make_genotype(40, 60, {120, 150, 100}, {160, 200}, 10, 10);
  auto full = render_skeleton(g, BorderStyle::blurred());
  auto small = resample_bilinear(full, 256, 256);
  CHECK(small.width() == 256);
  write_png(small, dir / "t.skel.png");
  auto back = load_external(dir / "t.skel.png", 595, 842);
  CHECK(back.width() == 595);
  CHECK(back.height() == 842);
  auto e = estimate_structure(back);
  CHECK(e.effective_rows() == 3);
  CHECK(e.effective_cols() == 2);
  const auto want = g.horizontal_dividers();
  const auto got = e.horizontal_dividers();
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(std::abs(want[i] - got[i]) <= 3);

  write_png(full, dir / "same.png");
  CHECK(load_external(dir / "same.png", 595, 842) == full);

  write_png(RasterImage::white(256, 256), dir / "white.png");
  auto w = load_external(dir / "white.png", 595, 842);
  CHECK(std::all_of(w.pixels().begin(), w.pixels().end(), [](auto v) { return v == 255; }));

  CHECK_THROWS_AS(load_external(dir / "missing.png", 595, 842), DataError);
  CHECK_THROWS_AS(load_external(dir / "same.png", 0, 842), InvalidArgument);
}

TEST_CASE("scale_genotype maps divider positions between spaces") {
  auto g = make_genotype(10, 20, {40, 50}, {70, 80}, 4, 4);
  CHECK(scale_genotype(g, 1.0, 1.0) == g);
  auto s = scale_genotype(g, 0.5, 2.0);
  CHECK(s.vertical_dividers() == std::vector<int>{5, 40, 80});
  CHECK(s.horizontal_dividers() == std::vector<int>{40, 120, 220});
  CHECK(s.max_rows == 4);
}

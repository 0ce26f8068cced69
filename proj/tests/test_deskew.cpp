#include <doctest.h>

#include "tablegrid/deskew.hpp"
#include "tablegrid/error.hpp"
#include "tablegrid/render.hpp"
#include "tablegrid/xycut.hpp"

using namespace tablegrid;

TEST_CASE("rotated canvas sizes") {
  CHECK(rotated_extent(595, 842, 15) == std::pair{795, 970});
  CHECK(rotated_extent(595, 842, -15) == std::pair{795, 970});
  CHECK(rotated_extent(595, 842, 0) == std::pair{595, 842});
  CHECK(rotated_extent(595, 842, 360) == std::pair{595, 842});
  // Back-rotating the 15 degree page grows it again.
  CHECK(rotated_extent(795, 970, -15) == std::pair{1021, 1145});
}

TEST_CASE("rotation basics") {
  auto img = render_skeleton(sample_genotype(builtin_config("base"), 1), BorderStyle::blurred());
  CHECK(rotate(img, 0) == img);
  auto white = rotate(RasterImage::white(100, 60), 17);
  CHECK(std::all_of(white.pixels().begin(), white.pixels().end(), [](auto v) { return v == 255; }));

  // Clockwise on screen: a point right of centre moves down.
  RasterImage dot = RasterImage::white(101, 101);
  dot.at(90, 50) = 0;
  auto r = rotate(dot, 90);
  REQUIRE(r.width() == 103);
  int darkest_x = 0, darkest_y = 0, darkest = 256;
  for (int y = 0; y < r.height(); ++y) {
    for (int x = 0; x < r.width(); ++x) {
      if (r.at(x, y) < darkest) darkest = r.at(x, y), darkest_x = x, darkest_y = y;
    }
  }
  CHECK(darkest_x == 51);
  CHECK(darkest_y == 91);

  RasterImage rgb(10, 10, 3, 0);
  CHECK(rotate(rgb, 10).channels() == 3);
}

TEST_CASE("crop offsets round halves down") {
  CHECK(crop_offsets(1015, 1140, 595, 842) == std::pair{210, 149});
  CHECK(crop_offsets(595, 842, 595, 842) == std::pair{0, 0});
  CHECK(crop_offsets(600, 845, 595, 842) == std::pair{2, 1});
  CHECK_THROWS_AS(crop_offsets(500, 842, 595, 842), InvalidArgument);

  RasterImage img(7, 5, 1);
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 7; ++x) img.at(x, y) = static_cast<std::uint8_t>(10 * y + x);
  }
  auto c = crop_center(img, 3, 2);
  CHECK(c.at(0, 0) == 10 * 1 + 2);
  CHECK(c.at(2, 1) == 10 * 2 + 4);
}

TEST_CASE("skew estimate recovers applied rotations") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    auto img = render_skeleton(sample_genotype(builtin_configs()[seed], seed), BorderStyle::blurred());
    CHECK(std::abs(estimate_skew(img)) < 0.05);
    for (double angle : {-27.0, -12.5, -3.0, 1.0, 7.3, 20.0, 33.0}) {
      CHECK_MESSAGE(std::abs(estimate_skew(rotate(img, angle)) - angle) <= 0.3,
                    "seed " << seed << " angle " << angle);
    }
  }
}

TEST_CASE("skew estimate fails on images without line structure") {
  CHECK_THROWS_AS(estimate_skew(RasterImage::white(200, 200)), DataError);
  RasterImage dots = RasterImage::white(200, 200);
  for (int i = 10; i < 190; i += 7) dots.at(i, (i * 13) % 200) = 0;
  CHECK_THROWS_AS(estimate_skew(dots), DataError);
}

TEST_CASE("iterative deskew leaves a small residual and is stable") {
  auto g = sample_genotype(builtin_config("base"), 12);
  auto img = render_skeleton(g, BorderStyle::blurred());
  for (double angle : {-30.0, -15.0, -5.0, 5.0, 20.0, 30.0}) {
    auto rotated = rotate(img, angle);
    auto once = deskew_iterative(rotated, 5, 35);
    CHECK(std::abs(once.report.residual_angle) < 2.0);
    CHECK(std::abs(once.report.estimated_angle - angle) < 0.5);
    CHECK(once.report.pre_dims == std::pair{rotated.width(), rotated.height()});
    CHECK(once.report.post_dims == std::pair{once.image.width(), once.image.height()});
    CHECK(once.report.passes_applied >= 1);
    CHECK(once.report.passes_applied <= 5);
    auto twice = deskew_iterative(once.image, 5, 35);
    CHECK(std::abs(twice.report.residual_angle - once.report.residual_angle) < 0.2);
  }
  auto none = deskew_iterative(img, 5, 35);
  CHECK(none.report.passes_applied == 0);
  CHECK(none.image == img);
}

TEST_CASE("deskew then crop restores the structure estimate") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto g = sample_genotype(builtin_configs()[seed % 4], seed, {}, 10, 10);
    auto img = render_skeleton(g, BorderStyle::blurred());
    const auto want = estimate_structure(img);
    for (double angle : {-20.0, -10.0, 5.0, 15.0}) {
      auto fixed = crop_center(deskew_iterative(rotate(img, angle), 5, 35).image, 595, 842);
      auto got = estimate_structure(fixed);
      CHECK_MESSAGE(got.effective_rows() == want.effective_rows(), "seed " << seed << " angle " << angle);
      CHECK_MESSAGE(got.effective_cols() == want.effective_cols(), "seed " << seed << " angle " << angle);
    }
  }
}

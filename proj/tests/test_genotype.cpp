#include <doctest.h>

#include <json.hpp>

#include <fstream>

#include "helpers.hpp"
#include "tablegrid/error.hpp"
#include "tablegrid/genotype.hpp"
#include "tablegrid/render.hpp"

using namespace tablegrid;

TEST_CASE("make_genotype pads with absent extents") {
  auto g = make_genotype(10, 20, {40, 50}, {70}, 4, 3);
  CHECK(g.row_heights == std::vector<int>{40, 50, 0, 0});
  CHECK(g.col_widths == std::vector<int>{70, 0, 0});
  CHECK(g.effective_rows() == 2);
  CHECK(g.effective_cols() == 1);
  CHECK(g.horizontal_dividers() == std::vector<int>{20, 60, 110});
  CHECK(g.vertical_dividers() == std::vector<int>{10, 80});
}

TEST_CASE("zero extents in the middle are skipped") {
  auto g = make_genotype(10, 20, {40, 0, 60}, {70, 30});
  CHECK(g.effective_rows() == 2);
  CHECK(g.horizontal_dividers() == std::vector<int>{20, 60, 120});
  CHECK(bounding_box(g) == Rect{10, 20, 100, 100});
  CHECK(bounding_box(make_genotype(0, 0, {50}, {80})) == Rect{0, 0, 80, 50});
}

TEST_CASE("validation accepts in-range tables and names the first violation") {
  const Canvas canvas;
  CHECK(validate_genotype(make_genotype(70, 70, {90, 90, 90, 90, 90, 90}, {70, 70, 70, 70, 70, 70}), canvas));

  auto negative = make_genotype(0, 0, {40, -1}, {70, 70});
  auto v = validate_genotype(negative, canvas);
  CHECK_FALSE(v);
  CHECK(v.reason.find("negative") != std::string::npos);

  auto wide = make_genotype(500, 0, {40}, {100, 100});
  v = validate_genotype(wide, canvas);
  CHECK_FALSE(v);
  CHECK(v.reason.find("width") != std::string::npos);

  CHECK_FALSE(validate_genotype(make_genotype(0, 0, {0, 0}, {70}), canvas));
  CHECK_FALSE(validate_genotype(make_genotype(0, 0, {40}, {0}), canvas));
  CHECK_FALSE(validate_genotype(make_genotype(-1, 0, {40}, {70}), canvas));

  // Border core must fit too.
  CHECK(validate_genotype(make_genotype(0, 0, {40}, {592}), canvas));
  CHECK_FALSE(validate_genotype(make_genotype(0, 0, {40}, {593}), canvas));

  auto short_rows = make_genotype(0, 0, {40}, {70}, 2, 2);
  short_rows.row_heights.pop_back();
  CHECK_FALSE(validate_genotype(short_rows, canvas));
}

TEST_CASE("bounding box properties over sampled tables") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    for (const auto& config : builtin_configs()) {
      auto g = sample_genotype(config, seed);
      const Rect box = bounding_box(g);
      REQUIRE(validate_genotype(g, Canvas{}));
      CHECK(box.x + box.width + kBorderCore <= 595);
      CHECK(box.y + box.height + kBorderCore <= 842);

      // Appending a column grows the box by exactly its width.
      auto wider = g;
      wider.col_widths.push_back(17);
      ++wider.max_cols;
      CHECK(bounding_box(wider).width == box.width + 17);

      // Zeroing a row never changes the width.
      auto fewer = g;
      fewer.row_heights[0] = 0;
      CHECK(bounding_box(fewer).width == box.width);
    }
  }
}

TEST_CASE("short cell tables span 4*40 to 10*60 when all columns are present") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto g = sample_genotype(builtin_config("short_cells"), seed);
    const int w = bounding_box(g).width;
    CHECK(w >= 4 * 40);
    CHECK(w <= 10 * 60);
  }
}

TEST_CASE("compacted moves absent extents to the end") {
  auto g = make_genotype(0, 0, {0, 40, 0, 50}, {70, 0, 80});
  auto c = compacted(g);
  CHECK(c.row_heights == std::vector<int>{40, 50, 0, 0});
  CHECK(c.col_widths == std::vector<int>{70, 80, 0});
  CHECK(c.horizontal_dividers() == g.horizontal_dividers());
}

TEST_CASE("genotype JSON round trip and strict integer parsing") {
  const auto dir = scratch_dir("genotype_json");
  auto g = make_genotype(12, 34, {40, 50}, {70, 80, 90}, 6, 6);
  save_genotype(g, dir / "g.json");
  CHECK(load_genotype(dir / "g.json") == g);

  auto j = nlohmann::json::parse(std::ifstream(dir / "g.json"));
  for (const char* key : {"max_rows", "max_cols", "origin_x", "origin_y", "row_heights", "col_widths"}) {
    CHECK(j.contains(key));
  }

  j["origin_x"] = 12.5;
  std::ofstream(dir / "bad.json") << j.dump();
  CHECK_THROWS_AS(load_genotype(dir / "bad.json"), DataError);

  j["origin_x"] = 12;
  j["row_heights"] = {40, "x"};
  std::ofstream(dir / "bad2.json") << j.dump();
  CHECK_THROWS_AS(load_genotype(dir / "bad2.json"), DataError);

  std::ofstream(dir / "broken.json") << "{";
  CHECK_THROWS_AS(load_genotype(dir / "broken.json"), DataError);
  CHECK_THROWS_AS(load_genotype(dir / "missing.json"), DataError);
}

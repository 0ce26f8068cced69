#include "tablegrid/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "tablegrid/error.hpp"

namespace tablegrid {

namespace {

const std::array<TableConfig, 4> kBuiltins{{
    {"base", {2, 6}, {2, 6}, {0, 70}, {0, 70}, {40, 90}, {70, 100}, {5, 9}, {2, 4}, 10},
    {"larger_font", {2, 6}, {2, 6}, {0, 70}, {0, 70}, {40, 90}, {70, 100}, {5, 9}, {2, 4}, 18},
    {"smaller_font", {2, 6}, {2, 6}, {0, 70}, {0, 70}, {40, 90}, {70, 100}, {5, 9}, {2, 4}, 6},
    {"short_cells", {4, 10}, {4, 10}, {0, 70}, {0, 70}, {20, 20}, {40, 60}, {1, 4}, {1, 1}, 10},
}};

constexpr int kMaxSampleAttempts = 10000;

int draw(std::mt19937_64& rng, IntRange r) {
  return std::uniform_int_distribution<int>(r.lo, r.hi)(rng);
}

void check_range(const IntRange& r, const char* what) {
  if (r.lo > r.hi) throw InvalidArgument(std::string("empty range for ") + what);
}

// Min-composites value over the clipped rectangle [x0,x1] x [y0,y1].
void darken_rect(RasterImage& img, int x0, int y0, int x1, int y1, std::uint8_t value) {
  x0 = std::max(x0, 0);
  y0 = std::max(y0, 0);
  x1 = std::min(x1, img.width() - 1);
  y1 = std::min(y1, img.height() - 1);
  for (int y = y0; y <= y1; ++y) {
    auto row = img.row(y);
    for (int x = x0; x <= x1; ++x) row[x] = std::min(row[x], value);
  }
}

// Gray falloff around a core rectangle: intensity grows linearly with the
// Euclidean distance from the core, reaching white at `reach`.
void darken_halo(RasterImage& img, int x0, int y0, int x1, int y1, int reach) {
  std::vector<std::uint8_t> lut(static_cast<std::size_t>(reach + 1) * (reach + 1));
  for (int dy = 0; dy <= reach; ++dy) {
    for (int dx = 0; dx <= reach; ++dx) {
      const double d = std::min(std::hypot(dx, dy), static_cast<double>(reach));
      lut[static_cast<std::size_t>(dy) * (reach + 1) + dx] =
          static_cast<std::uint8_t>(std::lround(255.0 * d / reach));
    }
  }
  const int ya = std::max(y0 - reach, 0);
  const int yb = std::min(y1 + reach, img.height() - 1);
  const int xa = std::max(x0 - reach, 0);
  const int xb = std::min(x1 + reach, img.width() - 1);
  for (int y = ya; y <= yb; ++y) {
    const int dy = std::max({y0 - y, 0, y - y1});
    auto row = img.row(y);
    for (int x = xa; x <= xb; ++x) {
      const int dx = std::max({x0 - x, 0, x - x1});
      row[x] = std::min(row[x], lut[static_cast<std::size_t>(dy) * (reach + 1) + dx]);
    }
  }
}

struct Line {
  bool horizontal;
  int position;
};

void draw_line(RasterImage& img, const TableGenotype& g, const BorderStyle& style, Line line) {
  const int lo = style.core_thickness / 2;
  const int hi = style.core_thickness - 1 - lo;
  const int x_first = g.origin_x - lo;
  const int x_last = g.origin_x + g.total_width() + hi;
  const int y_first = g.origin_y - lo;
  const int y_last = g.origin_y + g.total_height() + hi;
  int x0, y0, x1, y1;
  if (line.horizontal) {
    x0 = x_first, x1 = x_last, y0 = line.position - lo, y1 = line.position + hi;
  } else {
    y0 = y_first, y1 = y_last, x0 = line.position - lo, x1 = line.position + hi;
  }
  if (style.blurry && style.reach() > 0) {
    darken_halo(img, x0, y0, x1, y1, style.reach());
  } else {
    darken_rect(img, x0, y0, x1, y1, kBlack);
  }
}

void require_valid(const TableGenotype& g, Canvas canvas) {
  if (auto v = validate_genotype(g, canvas); !v) {
    throw InvalidArgument("genotype does not fit the canvas: " + v.reason);
  }
}

}  // namespace

std::span<const TableConfig> builtin_configs() { return kBuiltins; }

const TableConfig& builtin_config(std::string_view name) {
  for (const auto& c : kBuiltins) {
    if (c.name == name) return c;
  }
  throw InvalidArgument("unknown table configuration '" + std::string(name) + "'");
}

BorderStyle parse_border_style(std::string_view name) {
  if (name == "solid") return BorderStyle::solid();
  if (name == "blurry") return BorderStyle::blurred();
  throw InvalidArgument("unknown border style '" + std::string(name) + "'");
}

TableGenotype sample_genotype(const TableConfig& config, std::uint64_t seed, Canvas canvas,
                              int max_rows, int max_cols) {
  check_range(config.rows, "rows");
  check_range(config.cols, "cols");
  check_range(config.x_offset, "x_offset");
  check_range(config.y_offset, "y_offset");
  check_range(config.row_height, "row_height");
  check_range(config.col_width, "col_width");
  if (config.rows.lo < 1 || config.cols.lo < 1) throw InvalidArgument("tables need at least one row and column");
  if (config.row_height.lo < 1 || config.col_width.lo < 1) throw InvalidArgument("extents must be positive");
  max_rows = std::max(max_rows, config.rows.hi);
  max_cols = std::max(max_cols, config.cols.hi);

  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kMaxSampleAttempts; ++attempt) {
    const int rows = draw(rng, config.rows);
    const int cols = draw(rng, config.cols);
    const int x0 = draw(rng, config.x_offset);
    const int y0 = draw(rng, config.y_offset);
    std::vector<int> heights(static_cast<std::size_t>(rows));
    std::vector<int> widths(static_cast<std::size_t>(cols));
    for (int& h : heights) h = draw(rng, config.row_height);
    for (int& w : widths) w = draw(rng, config.col_width);
    auto g = make_genotype(x0, y0, std::move(heights), std::move(widths), max_rows, max_cols);
    if (validate_genotype(g, canvas)) return g;
  }
  throw InvalidArgument("configuration '" + config.name + "' cannot produce tables that fit a " +
                        std::to_string(canvas.width) + "x" + std::to_string(canvas.height) +
                        " canvas");
}

RasterImage render_skeleton(const TableGenotype& g, const BorderStyle& style, Canvas canvas) {
  RasterImage img;
  render_skeleton_into(img, g, style, canvas);
  return img;
}

void render_skeleton_into(RasterImage& out, const TableGenotype& g, const BorderStyle& style, Canvas canvas) {
  require_valid(g, canvas);
  if (out.width() != canvas.width || out.height() != canvas.height || out.channels() != 1) {
    out = RasterImage::white(canvas.width, canvas.height);
  } else {
    std::fill(out.pixels().begin(), out.pixels().end(), kWhite);
  }
  for (int y : g.horizontal_dividers()) draw_line(out, g, style, {true, y});
  for (int x : g.vertical_dividers()) draw_line(out, g, style, {false, x});
}

RasterImage render_scan(const TableGenotype& g, const TableConfig& config, std::uint64_t seed,
                        Canvas canvas, const ScanOptions& options) {
  require_valid(g, canvas);
  check_range(config.word_len, "word_len");
  check_range(config.words_per_cell, "words_per_cell");
  RasterImage img = RasterImage::white(canvas.width, canvas.height);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution visible(options.divider_visibility);
  const BorderStyle solid = BorderStyle::solid();

  const auto ys = g.horizontal_dividers();
  const auto xs = g.vertical_dividers();
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const bool outer = i == 0 || i + 1 == ys.size();
    if (visible(rng) || outer) draw_line(img, g, solid, {true, ys[i]});
  }
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const bool outer = j == 0 || j + 1 == xs.size();
    if (visible(rng) || outer) draw_line(img, g, solid, {false, xs[j]});
  }

  // Words: dark boxes 0.6 * font per character wide, one font size apart,
  // wrapped inside the padded cell and centred vertically.
  const int font = config.font_size;
  const int core_reach = solid.core_thickness / 2 + 1;
  const int line_step = static_cast<int>(std::lround(1.2 * font));
  for (std::size_t r = 0; r + 1 < ys.size(); ++r) {
    for (std::size_t c = 0; c + 1 < xs.size(); ++c) {
      const int left = xs[c] + core_reach + options.cell_padding;
      const int right = xs[c + 1] - core_reach - options.cell_padding;
      const int top = ys[r] + core_reach + options.cell_padding;
      const int bottom = ys[r + 1] - core_reach - options.cell_padding;
      const int words = draw(rng, config.words_per_cell);
      std::vector<std::vector<std::pair<int, int>>> lines(1);  // (x, width) per word
      int cursor = left;
      for (int w = 0; w < words; ++w) {
        const int width = static_cast<int>(std::lround(0.6 * font * draw(rng, config.word_len)));
        if (cursor != left && cursor + width - 1 > right) {
          lines.emplace_back();
          cursor = left;
        }
        lines.back().emplace_back(cursor, width);
        cursor += width + font;
      }
      const int block = static_cast<int>(lines.size() - 1) * line_step + font;
      int y = top + std::max(0, (bottom - top + 1 - block) / 2);
      for (const auto& line : lines) {
        for (auto [x, width] : line) {
          const int x1 = std::min(x + width - 1, right);
          const int y1 = std::min(y + font - 1, bottom);
          if (x <= x1 && y <= y1) darken_rect(img, x, y, x1, y1, kBlack);
        }
        y += line_step;
      }
    }
  }
  return img;
}

}  // namespace tablegrid

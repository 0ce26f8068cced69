#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "tablegrid/genotype.hpp"
#include "tablegrid/image.hpp"

namespace tablegrid {

struct IntRange {
  int lo = 0;
  int hi = 0;
  bool contains(int v) const { return v >= lo && v <= hi; }
  bool operator==(const IntRange&) const = default;
};

// Sampling ranges for one family of synthetic tables. All ranges inclusive.
struct TableConfig {
  std::string name;
  IntRange rows;
  IntRange cols;
  IntRange x_offset;
  IntRange y_offset;
  IntRange row_height;
  IntRange col_width;
  IntRange word_len;
  IntRange words_per_cell;
  int font_size = 10;
};

// base, larger_font, smaller_font, short_cells.
std::span<const TableConfig> builtin_configs();
// Throws InvalidArgument for unknown names.
const TableConfig& builtin_config(std::string_view name);

struct BorderStyle {
  int core_thickness = kBorderCore;
  bool blurry = false;
  int blur_radius = 7;
  int spread = 3;

  // Distance beyond the core edge at which the gray falloff reaches white.
  int reach() const { return blurry ? blur_radius + spread : 0; }

  static BorderStyle solid() { return {}; }
  static BorderStyle blurred() { return {kBorderCore, true, 7, 3}; }
};

// Parses "solid" or "blurry".
BorderStyle parse_border_style(std::string_view name);

// Draws every range uniformly and redraws the whole table until it fits the
// canvas. max_rows/max_cols default to the upper ends of the config ranges.
TableGenotype sample_genotype(const TableConfig& config, std::uint64_t seed,
                              Canvas canvas = {}, int max_rows = 0, int max_cols = 0);

struct ScanOptions {
  // Probability that an interior divider is drawn in the scan.
  double divider_visibility = 0.5;
  int cell_padding = 2;
};

// Simulated scan: outer border, a random subset of interior dividers and
// filled rectangles standing in for words. Grayscale.
RasterImage render_scan(const TableGenotype& g, const TableConfig& config, std::uint64_t seed,
                        Canvas canvas = {}, const ScanOptions& options = {});

// All dividers and the outer border in the given style, no text.
RasterImage render_skeleton(const TableGenotype& g, const BorderStyle& style, Canvas canvas = {});
// Same, drawn into `out`, which is reallocated only when its shape differs.
void render_skeleton_into(RasterImage& out, const TableGenotype& g, const BorderStyle& style,
                          Canvas canvas = {});

}  // namespace tablegrid

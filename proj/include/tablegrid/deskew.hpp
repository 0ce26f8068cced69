#pragma once

#include <utility>

#include "tablegrid/image.hpp"

namespace tablegrid {

// Canvas size after rotating a w x h image by `degrees`: the rotated
// bounding box rounded up plus a one pixel white margin on each side.
// Zero rotation keeps the size.
std::pair<int, int> rotated_extent(int width, int height, double degrees);

// Rotates about the image centre (positive = clockwise on screen), growing
// the canvas to hold the result. Bilinear; uncovered area is white.
RasterImage rotate(const RasterImage& img, double degrees);

struct SkewOptions {
  double max_angle = 35.0;
  double resolution = 0.1;
  // Edge pixels must belong to a left-to-right chain at least this long.
  int min_run = 20;
  std::uint8_t threshold = 125;
};

// Dominant near-horizontal line angle in [-max_angle, max_angle] from a
// Hough accumulator over bottom edges of black structures. Throws DataError
// when no qualifying edge exists.
double estimate_skew(const RasterImage& img, const SkewOptions& options = {});
double estimate_skew(const RasterImage& img, double max_angle);

struct SkewReport {
  // Total correction applied (sum of per-pass estimates), degrees.
  double estimated_angle = 0.0;
  int passes_applied = 0;
  // Skew still measured on the output.
  double residual_angle = 0.0;
  std::pair<int, int> pre_dims{0, 0};
  std::pair<int, int> post_dims{0, 0};
};

struct DeskewResult {
  RasterImage image;
  SkewReport report;
};

inline constexpr double kSkewStopAngle = 0.1;

// Up to `passes` rounds of estimate + back-rotation. Each round re-rotates
// the input by the accumulated correction, so the output is resampled once.
// Stops early when a round measures less than kSkewStopAngle.
DeskewResult deskew_iterative(const RasterImage& img, int passes = 5, double max_angle = 35.0);

// Upper-left corner of a centred target_w x target_h window, halves rounded down.
std::pair<int, int> crop_offsets(int width, int height, int target_w, int target_h);

// Throws InvalidArgument when the target exceeds the image.
RasterImage crop_center(const RasterImage& img, int target_w, int target_h);

}  // namespace tablegrid

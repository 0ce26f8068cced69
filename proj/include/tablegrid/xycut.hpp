#pragma once

#include <cstdint>
#include <vector>

#include "tablegrid/genotype.hpp"
#include "tablegrid/image.hpp"

namespace tablegrid {

enum class Axis {
  horizontal,  // one entry per image row; finds horizontal dividers (y positions)
  vertical,    // one entry per image column; finds vertical dividers (x positions)
};

struct ProjectionProfile {
  Axis axis = Axis::horizontal;
  // Longest contiguous black run on each scanline, in pixels.
  std::vector<std::uint32_t> run_lengths;
};

struct DividerSet {
  std::vector<int> horizontal_positions;
  std::vector<int> vertical_positions;
};

inline constexpr std::uint8_t kDefaultLumaThreshold = 125;
inline constexpr double kDefaultMinLineFraction = 0.25;

// E = 0.299 R + 0.587 G + 0.114 B rounded to nearest; grayscale passes through.
RasterImage to_luminance(const RasterImage& img);

// Luminance strictly above the threshold is white, everything else black.
BinaryImage binarize(const RasterImage& gray, std::uint8_t threshold = kDefaultLumaThreshold);

ProjectionProfile project(const BinaryImage& bin, Axis axis);

struct DividerOptions {
  double min_frac = kDefaultMinLineFraction;
  // A band cut off by the image border is re-centred using the median width
  // of the untruncated bands on the same axis.
  bool recentre_truncated = true;
};

// Accepts scanlines whose run is at least min_frac of the longest run, groups
// contiguous accepted scanlines into bands and returns each band's centre.
// Throws NoTableFound when the profile holds no black pixels.
std::vector<int> detect_dividers(const ProjectionProfile& profile, const DividerOptions& options = {});

struct EstimateOptions {
  std::uint8_t threshold = kDefaultLumaThreshold;
  DividerOptions dividers;
  int max_rows = 10;
  int max_cols = 10;
};

DividerSet find_dividers(const RasterImage& skeleton, const EstimateOptions& options = {});

// xy-cut estimate of the table behind a skeleton image. The outermost bands
// are the table border. Throws NoTableFound with fewer than two dividers on
// either axis.
TableGenotype estimate_structure(const RasterImage& skeleton, const EstimateOptions& options = {});

}  // namespace tablegrid

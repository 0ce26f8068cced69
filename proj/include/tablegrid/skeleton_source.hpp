#pragma once

#include <cstdint>
#include <filesystem>

#include "tablegrid/genotype.hpp"
#include "tablegrid/image.hpp"
#include "tablegrid/render.hpp"

namespace tablegrid {

// Knobs for simulating an imperfect learned skeleton.
struct NoiseParams {
  IntRange artifact_count{0, 0};
  // Artifact length as a fraction of the longest true line of the same orientation.
  double artifact_len_frac = 0.2;
  int artifact_thickness = 3;
  double gray_jitter_sigma = 0.0;
  std::uint64_t seed = 0;
};

// Adds isolated axis-aligned black segments (never touching existing ink or
// each other) and zero-mean Gaussian intensity jitter. Dimensions unchanged.
RasterImage degrade(const RasterImage& skeleton, const NoiseParams& params);

// Bilinear resampling with pixel-centre alignment. Same size returns a copy.
RasterImage resample_bilinear(const RasterImage& img, int target_w, int target_h);

// Reads a skeleton produced elsewhere (e.g. a 256x256 model output) and
// resamples it into the estimation space.
RasterImage load_external(const std::filesystem::path& path, int target_w, int target_h);

// Maps a genotype between pixel spaces by scaling divider positions,
// rounding each to the nearest pixel.
TableGenotype scale_genotype(const TableGenotype& g, double sx, double sy);

}  // namespace tablegrid

#include "tablegrid/xycut.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tablegrid/error.hpp"
#include "tablegrid/simd/kernels.hpp"

namespace tablegrid {

RasterImage to_luminance(const RasterImage& img) {
  if (img.channels() == 1) return img;
  if (img.channels() != 3) {
    throw InvalidArgument("unsupported channel count " + std::to_string(img.channels()));
  }
  const std::size_t n = static_cast<std::size_t>(img.width()) * img.height();
  std::vector<std::uint8_t> out(n);
  simd::active_kernels().rgb_to_luma(img.pixels().data(), out.data(), n);
  return RasterImage(img.width(), img.height(), 1, std::move(out));
}

BinaryImage binarize(const RasterImage& gray, std::uint8_t threshold) {
  if (gray.channels() != 1) throw InvalidArgument("binarize expects a grayscale image");
  std::vector<std::uint8_t> black(gray.size());
  simd::active_kernels().threshold_black(gray.pixels().data(), black.data(), gray.size(), threshold);
  return BinaryImage(gray.width(), gray.height(), std::move(black));
}

ProjectionProfile project(const BinaryImage& bin, Axis axis) {
  if (bin.width() == 0 || bin.height() == 0) throw InvalidArgument("cannot project an empty image");
  ProjectionProfile profile;
  profile.axis = axis;
  if (axis == Axis::horizontal) {
    profile.run_lengths.resize(static_cast<std::size_t>(bin.height()));
    for (int y = 0; y < bin.height(); ++y) {
      std::uint32_t run = 0;
      std::uint32_t best = 0;
      for (std::uint8_t b : bin.row(y)) {
        run = b ? run + 1 : 0;
        best = std::max(best, run);
      }
      profile.run_lengths[static_cast<std::size_t>(y)] = best;
    }
  } else {
    profile.run_lengths.resize(static_cast<std::size_t>(bin.width()));
    simd::active_kernels().column_runs(bin.mask().data(), bin.width(), bin.height(),
                                       profile.run_lengths.data());
  }
  return profile;
}

std::vector<int> detect_dividers(const ProjectionProfile& profile, const DividerOptions& options) {
  const auto& runs = profile.run_lengths;
  const std::uint32_t longest = runs.empty() ? 0 : *std::max_element(runs.begin(), runs.end());
  if (longest == 0) throw NoTableFound("no lines found in projection profile");
  const double cutoff = options.min_frac * longest;

  struct Band {
    int first;
    int last;
  };
  std::vector<Band> bands;
  const int n = static_cast<int>(runs.size());
  for (int i = 0; i < n; ++i) {
    if (static_cast<double>(runs[static_cast<std::size_t>(i)]) < cutoff) continue;
    if (!bands.empty() && bands.back().last == i - 1) {
      bands.back().last = i;
    } else {
      bands.push_back({i, i});
    }
  }

  auto truncated = [n](const Band& b) { return b.first == 0 || b.last == n - 1; };
  std::vector<int> full_widths;
  for (const auto& b : bands) {
    if (!truncated(b)) full_widths.push_back(b.last - b.first + 1);
  }
  int typical = 0;
  if (!full_widths.empty()) {
    std::nth_element(full_widths.begin(), full_widths.begin() + full_widths.size() / 2, full_widths.end());
    typical = full_widths[full_widths.size() / 2];
  }

  std::vector<int> positions;
  positions.reserve(bands.size());
  for (const auto& b : bands) {
    double centre = 0.5 * (b.first + b.last);
    const int width = b.last - b.first + 1;
    if (options.recentre_truncated && typical > width && truncated(b) && width < n) {
      centre = b.first == 0 ? b.last - 0.5 * (typical - 1) : b.first + 0.5 * (typical - 1);
    }
    positions.push_back(static_cast<int>(std::floor(centre + 0.5)));
  }
  return positions;
}

DividerSet find_dividers(const RasterImage& skeleton, const EstimateOptions& options) {
  const BinaryImage bin = binarize(to_luminance(skeleton), options.threshold);
  return {detect_dividers(project(bin, Axis::horizontal), options.dividers),
          detect_dividers(project(bin, Axis::vertical), options.dividers)};
}

TableGenotype estimate_structure(const RasterImage& skeleton, const EstimateOptions& options) {
  const DividerSet d = find_dividers(skeleton, options);
  if (d.horizontal_positions.size() < 2 || d.vertical_positions.size() < 2) {
    throw NoTableFound("no table: found " + std::to_string(d.horizontal_positions.size()) +
                       " horizontal and " + std::to_string(d.vertical_positions.size()) +
                       " vertical dividers");
  }
  std::vector<int> heights;
  std::vector<int> widths;
  for (std::size_t i = 1; i < d.horizontal_positions.size(); ++i) {
    heights.push_back(d.horizontal_positions[i] - d.horizontal_positions[i - 1]);
  }
  for (std::size_t i = 1; i < d.vertical_positions.size(); ++i) {
    widths.push_back(d.vertical_positions[i] - d.vertical_positions[i - 1]);
  }
  return make_genotype(d.vertical_positions.front(), d.horizontal_positions.front(),
                       std::move(heights), std::move(widths), options.max_rows, options.max_cols);
}

}  // namespace tablegrid

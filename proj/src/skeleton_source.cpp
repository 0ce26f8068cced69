#include "tablegrid/skeleton_source.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tablegrid/error.hpp"
#include "tablegrid/png_io.hpp"
#include "tablegrid/xycut.hpp"

namespace tablegrid {

namespace {

bool region_is_white(const RasterImage& img, int x0, int y0, int x1, int y1) {
  x0 = std::max(x0, 0);
  y0 = std::max(y0, 0);
  x1 = std::min(x1, img.width() - 1);
  y1 = std::min(y1, img.height() - 1);
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      for (int c = 0; c < img.channels(); ++c) {
        if (img.at(x, y, c) != kWhite) return false;
      }
    }
  }
  return true;
}

constexpr int kPlacementAttempts = 200;

}  // namespace

RasterImage degrade(const RasterImage& skeleton, const NoiseParams& params) {
  if (params.artifact_len_frac < 0) throw InvalidArgument("artifact_len_frac must be non-negative");
  if (params.gray_jitter_sigma < 0) throw InvalidArgument("gray_jitter_sigma must be non-negative");
  if (params.artifact_count.lo > params.artifact_count.hi || params.artifact_count.lo < 0) {
    throw InvalidArgument("invalid artifact count range");
  }
  RasterImage out = skeleton;
  std::mt19937_64 rng(params.seed);
  const int count = std::uniform_int_distribution<int>(params.artifact_count.lo,
                                                       params.artifact_count.hi)(rng);
  const int thickness = std::max(1, params.artifact_thickness);
  if (count > 0 && params.artifact_len_frac > 0 && !skeleton.empty()) {
    const BinaryImage bin = binarize(to_luminance(skeleton));
    const auto& rows = project(bin, Axis::horizontal).run_lengths;
    const auto& cols = project(bin, Axis::vertical).run_lengths;
    const std::uint32_t longest_h = *std::max_element(rows.begin(), rows.end());
    const std::uint32_t longest_v = *std::max_element(cols.begin(), cols.end());
    std::bernoulli_distribution horizontal(0.5);
    for (int a = 0; a < count; ++a) {
      const bool horiz = horizontal(rng);
      const int length = static_cast<int>(std::lround(params.artifact_len_frac * (horiz ? longest_h : longest_v)));
      const int w = horiz ? length : thickness;
      const int h = horiz ? thickness : length;
      if (length < 1 || w > out.width() || h > out.height()) continue;
      std::uniform_int_distribution<int> px(0, out.width() - w);
      std::uniform_int_distribution<int> py(0, out.height() - h);
      for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
        const int x = px(rng);
        const int y = py(rng);
        if (!region_is_white(out, x - 1, y - 1, x + w, y + h)) continue;
        for (int yy = y; yy < y + h; ++yy) {
          for (int xx = x; xx < x + w; ++xx) {
            for (int c = 0; c < out.channels(); ++c) out.at(xx, yy, c) = kBlack;
          }
        }
        break;
      }
    }
  }
  if (params.gray_jitter_sigma > 0) {
    std::normal_distribution<double> noise(0.0, params.gray_jitter_sigma);
    for (auto& p : out.pixels()) {
      p = static_cast<std::uint8_t>(std::clamp<long>(std::lround(p + noise(rng)), 0, 255));
    }
  }
  return out;
}

RasterImage resample_bilinear(const RasterImage& img, int target_w, int target_h) {
  if (target_w <= 0 || target_h <= 0) throw InvalidArgument("target dimensions must be positive");
  if (img.empty()) throw InvalidArgument("cannot resample an empty image");
  if (img.width() == target_w && img.height() == target_h) return img;
  RasterImage out(target_w, target_h, img.channels());
  const double sx = static_cast<double>(img.width()) / target_w;
  const double sy = static_cast<double>(img.height()) / target_h;
  for (int y = 0; y < target_h; ++y) {
    const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, img.height() - 1.0);
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, img.height() - 1);
    const double wy = fy - y0;
    for (int x = 0; x < target_w; ++x) {
      const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, img.width() - 1.0);
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, img.width() - 1);
      const double wx = fx - x0;
      for (int c = 0; c < img.channels(); ++c) {
        const double top = img.at(x0, y0, c) + wx * (img.at(x1, y0, c) - img.at(x0, y0, c));
        const double bottom = img.at(x0, y1, c) + wx * (img.at(x1, y1, c) - img.at(x0, y1, c));
        out.at(x, y, c) = static_cast<std::uint8_t>(std::clamp(std::lround(top + wy * (bottom - top)), 0L, 255L));
      }
    }
  }
  return out;
}

RasterImage load_external(const std::filesystem::path& path, int target_w, int target_h) {
  if (target_w <= 0 || target_h <= 0) throw InvalidArgument("target dimensions must be positive");
  return resample_bilinear(read_png(path), target_w, target_h);
}

TableGenotype scale_genotype(const TableGenotype& g, double sx, double sy) {
  auto scale_axis = [](std::vector<int> dividers, double s) {
    for (int& d : dividers) d = static_cast<int>(std::lround(d * s));
    return dividers;
  };
  const auto ys = scale_axis(g.horizontal_dividers(), sy);
  const auto xs = scale_axis(g.vertical_dividers(), sx);
  std::vector<int> heights, widths;
  for (std::size_t i = 1; i < ys.size(); ++i) heights.push_back(std::max(1, ys[i] - ys[i - 1]));
  for (std::size_t i = 1; i < xs.size(); ++i) widths.push_back(std::max(1, xs[i] - xs[i - 1]));
  return make_genotype(xs.front(), ys.front(), std::move(heights), std::move(widths), g.max_rows,
                       g.max_cols);
}

}  // namespace tablegrid

#include "tablegrid/deskew.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "tablegrid/error.hpp"
#include "tablegrid/xycut.hpp"

namespace tablegrid {

namespace {

double radians(double degrees) { return degrees * std::numbers::pi / 180.0; }

bool is_identity_rotation(double degrees) {
  const double r = std::remainder(degrees, 360.0);
  return std::abs(r) < 1e-9;
}

struct EdgePoint {
  float x;
  float y;
};

// Bottom edges of black structures (black pixel above a white one) that
// belong to a chain of at least min_run edge pixels advancing one column at
// a time with a vertical step of at most one pixel.
std::vector<EdgePoint> chained_edges(const BinaryImage& bin, int min_run) {
  const int w = bin.width();
  const int h = bin.height();
  auto edge = [&](int x, int y) {
    return bin.is_black(x, y) && (y + 1 == h || !bin.is_black(x, y + 1));
  };
  // Column-major chain lengths ending at / starting from each pixel.
  std::vector<std::uint16_t> left(static_cast<std::size_t>(w) * h, 0);
  std::vector<std::uint16_t> right(static_cast<std::size_t>(w) * h, 0);
  auto at = [h](int x, int y) { return static_cast<std::size_t>(x) * h + y; };
  auto best_neighbour = [&](const std::vector<std::uint16_t>& chain, int x, int y) {
    std::uint16_t m = 0;
    for (int dy = -1; dy <= 1; ++dy) {
      const int yy = y + dy;
      if (yy >= 0 && yy < h) m = std::max(m, chain[at(x, yy)]);
    }
    return m;
  };
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) {
      if (!edge(x, y)) continue;
      const std::uint16_t prev = x > 0 ? best_neighbour(left, x - 1, y) : 0;
      left[at(x, y)] = static_cast<std::uint16_t>(std::min<int>(prev + 1, 0xFFFF));
    }
  }
  for (int x = w - 1; x >= 0; --x) {
    for (int y = 0; y < h; ++y) {
      if (left[at(x, y)] == 0) continue;
      const std::uint16_t next = x + 1 < w ? best_neighbour(right, x + 1, y) : 0;
      right[at(x, y)] = static_cast<std::uint16_t>(std::min<int>(next + 1, 0xFFFF));
    }
  }
  std::vector<EdgePoint> points;
  const float cx = 0.5f * (w - 1);
  const float cy = 0.5f * (h - 1);
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) {
      const std::size_t i = at(x, y);
      if (left[i] != 0 && left[i] + right[i] - 1 >= min_run) {
        points.push_back({static_cast<float>(x) - cx, static_cast<float>(y) - cy});
      }
    }
  }
  return points;
}

// Concentration of votes for lines at `degrees`: sum of squared bin counts.
double hough_score(const std::vector<EdgePoint>& points, double degrees, std::vector<std::uint32_t>& bins,
                   double offset) {
  std::fill(bins.begin(), bins.end(), 0u);
  const auto c = static_cast<float>(std::cos(radians(degrees)));
  const auto s = static_cast<float>(std::sin(radians(degrees)));
  const auto off = static_cast<float>(offset);
  for (const auto& p : points) {
    const float rho = p.y * c - p.x * s + off;
    ++bins[static_cast<std::size_t>(rho)];
  }
  double score = 0.0;
  for (std::uint32_t b : bins) score += static_cast<double>(b) * b;
  return score;
}

}  // namespace

std::pair<int, int> rotated_extent(int width, int height, double degrees) {
  if (is_identity_rotation(degrees)) return {width, height};
  const double c = std::abs(std::cos(radians(degrees)));
  const double s = std::abs(std::sin(radians(degrees)));
  const int w = static_cast<int>(std::ceil(width * c + height * s - 1e-9)) + 2;
  const int h = static_cast<int>(std::ceil(width * s + height * c - 1e-9)) + 2;
  return {w, h};
}

RasterImage rotate(const RasterImage& img, double degrees) {
  if (is_identity_rotation(degrees) || img.empty()) return img;
  const auto [out_w, out_h] = rotated_extent(img.width(), img.height(), degrees);
  RasterImage out = RasterImage::white(out_w, out_h, img.channels());
  const double c = std::cos(radians(degrees));
  const double s = std::sin(radians(degrees));
  const double src_cx = 0.5 * (img.width() - 1);
  const double src_cy = 0.5 * (img.height() - 1);
  const double dst_cx = 0.5 * (out_w - 1);
  const double dst_cy = 0.5 * (out_h - 1);
  const int channels = img.channels();
  auto sample = [&](int x, int y, int ch) -> double {
    if (x < 0 || y < 0 || x >= img.width() || y >= img.height()) return kWhite;
    return img.at(x, y, ch);
  };
  for (int y = 0; y < out_h; ++y) {
    const double v = y - dst_cy;
    for (int x = 0; x < out_w; ++x) {
      const double u = x - dst_cx;
      const double sx = c * u + s * v + src_cx;
      const double sy = -s * u + c * v + src_cy;
      if (sx <= -1.0 || sy <= -1.0 || sx >= img.width() || sy >= img.height()) continue;
      const int x0 = static_cast<int>(std::floor(sx));
      const int y0 = static_cast<int>(std::floor(sy));
      const double fx = sx - x0;
      const double fy = sy - y0;
      for (int ch = 0; ch < channels; ++ch) {
        const double top = sample(x0, y0, ch) * (1 - fx) + sample(x0 + 1, y0, ch) * fx;
        const double bottom = sample(x0, y0 + 1, ch) * (1 - fx) + sample(x0 + 1, y0 + 1, ch) * fx;
        out.at(x, y, ch) = static_cast<std::uint8_t>(std::clamp(std::lround(top * (1 - fy) + bottom * fy), 0L, 255L));
      }
    }
  }
  return out;
}

double estimate_skew(const RasterImage& img, const SkewOptions& options) {
  if (options.max_angle < 0 || options.resolution <= 0) throw InvalidArgument("invalid skew search range");
  const BinaryImage bin = binarize(to_luminance(img), options.threshold);
  const auto points = chained_edges(bin, options.min_run);
  if (points.empty()) throw DataError("no line structure found for skew estimation");

  const double diag = std::hypot(img.width(), img.height());
  const double offset = diag / 2.0 + 2.0;
  std::vector<std::uint32_t> bins(static_cast<std::size_t>(2.0 * offset) + 2, 0u);

  // Coarse pass at five times the resolution, then refine around the peak
  // on the resolution grid.
  const double coarse = options.resolution * 5.0;
  const int coarse_steps = static_cast<int>(std::floor(options.max_angle / coarse + 1e-9));
  double best_angle = 0.0;
  double best_score = -1.0;
  for (int k = -coarse_steps; k <= coarse_steps; ++k) {
    const double a = k * coarse;
    const double score = hough_score(points, a, bins, offset);
    if (score > best_score) best_score = score, best_angle = a;
  }
  const int fine_steps = static_cast<int>(std::floor(options.max_angle / options.resolution + 1e-9));
  const int centre = static_cast<int>(std::lround(best_angle / options.resolution));
  const int lo = std::max(-fine_steps, centre - 6);
  const int hi = std::min(fine_steps, centre + 6);
  std::vector<double> scores;
  int best_k = centre;
  for (int k = lo; k <= hi; ++k) {
    scores.push_back(hough_score(points, k * options.resolution, bins, offset));
    if (scores.back() > best_score) best_score = scores.back(), best_k = k;
  }
  // Short tables cannot tell neighbouring angles apart and a few stray edge
  // pixels decide the maximum. Take the middle of the near-maximal plateau.
  const double floor_score = best_score * (1.0 - 1e-4);
  int first = best_k, last = best_k;
  while (first > lo && scores[first - 1 - lo] >= floor_score) --first;
  while (last < hi && scores[last + 1 - lo] >= floor_score) ++last;
  const int mid2 = first + last;  // twice the midpoint
  const int k = mid2 % 2 == 0 ? mid2 / 2 : (best_k * 2 < mid2 ? (mid2 - 1) / 2 : (mid2 + 1) / 2);
  return k * options.resolution;
}

double estimate_skew(const RasterImage& img, double max_angle) {
  SkewOptions options;
  options.max_angle = max_angle;
  return estimate_skew(img, options);
}

DeskewResult deskew_iterative(const RasterImage& img, int passes, double max_angle) {
  if (passes < 0) throw InvalidArgument("passes must be non-negative");
  DeskewResult result{img, {}};
  result.report.pre_dims = {img.width(), img.height()};
  double total = 0.0;
  bool settled = false;
  for (int pass = 0; pass < passes; ++pass) {
    double angle = 0.0;
    try {
      angle = estimate_skew(result.image, max_angle);
    } catch (const DataError&) {
      if (pass == 0) throw;
      break;
    }
    if (std::abs(angle) < kSkewStopAngle) {
      result.report.residual_angle = angle;
      settled = true;
      break;
    }
    total += angle;
    ++result.report.passes_applied;
    result.image = rotate(img, -total);
  }
  if (!settled) {
    try {
      result.report.residual_angle = estimate_skew(result.image, max_angle);
    } catch (const DataError&) {
      result.report.residual_angle = 0.0;
    }
  }
  result.report.estimated_angle = total;
  result.report.post_dims = {result.image.width(), result.image.height()};
  return result;
}

std::pair<int, int> crop_offsets(int width, int height, int target_w, int target_h) {
  if (target_w > width || target_h > height) {
    throw InvalidArgument("crop target " + std::to_string(target_w) + "x" + std::to_string(target_h) +
                          " exceeds image " + std::to_string(width) + "x" + std::to_string(height));
  }
  if (target_w <= 0 || target_h <= 0) throw InvalidArgument("crop target must be positive");
  return {(width - target_w) / 2, (height - target_h) / 2};
}

RasterImage crop_center(const RasterImage& img, int target_w, int target_h) {
  const auto [x0, y0] = crop_offsets(img.width(), img.height(), target_w, target_h);
  RasterImage out(target_w, target_h, img.channels());
  const std::size_t row_bytes = static_cast<std::size_t>(target_w) * img.channels();
  for (int y = 0; y < target_h; ++y) {
    const auto src = img.row(y0 + y).subspan(static_cast<std::size_t>(x0) * img.channels(), row_bytes);
    std::copy(src.begin(), src.end(), out.row(y).begin());
  }
  return out;
}

}  // namespace tablegrid

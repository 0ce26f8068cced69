#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tablegrid {

inline constexpr std::uint8_t kWhite = 255;
inline constexpr std::uint8_t kBlack = 0;

// Row-major 8-bit image with 1 (grayscale) or 3 (RGB) interleaved channels.
class RasterImage {
 public:
  RasterImage() = default;
  RasterImage(int width, int height, int channels = 1, std::uint8_t fill = kWhite);
  RasterImage(int width, int height, int channels, std::vector<std::uint8_t> pixels);

  static RasterImage white(int width, int height, int channels = 1) {
    return RasterImage(width, height, channels, kWhite);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  bool empty() const { return pixels_.empty(); }
  std::size_t size() const { return pixels_.size(); }

  std::uint8_t& at(int x, int y, int c = 0) {
    return pixels_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }
  std::uint8_t at(int x, int y, int c = 0) const {
    return pixels_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }

  std::span<std::uint8_t> row(int y) {
    return {pixels_.data() + static_cast<std::size_t>(y) * width_ * channels_,
            static_cast<std::size_t>(width_) * channels_};
  }
  std::span<const std::uint8_t> row(int y) const {
    return {pixels_.data() + static_cast<std::size_t>(y) * width_ * channels_,
            static_cast<std::size_t>(width_) * channels_};
  }

  std::span<std::uint8_t> pixels() { return pixels_; }
  std::span<const std::uint8_t> pixels() const { return pixels_; }

  bool operator==(const RasterImage&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 1;
  std::vector<std::uint8_t> pixels_;
};

// Black/white classification of a grayscale image; 1 marks a black pixel.
class BinaryImage {
 public:
  BinaryImage() = default;
  BinaryImage(int width, int height, std::vector<std::uint8_t> black);

  int width() const { return width_; }
  int height() const { return height_; }
  bool is_black(int x, int y) const {
    return black_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  std::span<const std::uint8_t> mask() const { return black_; }
  std::span<const std::uint8_t> row(int y) const {
    return {black_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
  }
  std::size_t black_count() const;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> black_;
};

}  // namespace tablegrid

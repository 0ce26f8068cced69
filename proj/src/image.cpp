#include "tablegrid/image.hpp"

#include <algorithm>
#include <string>

#include "tablegrid/error.hpp"

namespace tablegrid {

namespace {

void check_shape(int width, int height, int channels) {
  if (width < 0 || height < 0) throw InvalidArgument("image dimensions must be non-negative");
  if (channels != 1 && channels != 3) {
    throw InvalidArgument("unsupported channel count " + std::to_string(channels));
  }
}

}  // namespace

RasterImage::RasterImage(int width, int height, int channels, std::uint8_t fill)
    : width_(width), height_(height), channels_(channels) {
  check_shape(width, height, channels);
  pixels_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

RasterImage::RasterImage(int width, int height, int channels, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), channels_(channels), pixels_(std::move(pixels)) {
  check_shape(width, height, channels);
  if (pixels_.size() != static_cast<std::size_t>(width) * height * channels) {
    throw InvalidArgument("pixel buffer does not match width x height x channels");
  }
}

BinaryImage::BinaryImage(int width, int height, std::vector<std::uint8_t> black)
    : width_(width), height_(height), black_(std::move(black)) {
  if (black_.size() != static_cast<std::size_t>(width) * height) {
    throw InvalidArgument("mask does not match width x height");
  }
}

std::size_t BinaryImage::black_count() const {
  return static_cast<std::size_t>(std::count_if(black_.begin(), black_.end(),
                                                [](std::uint8_t b) { return b != 0; }));
}

}  // namespace tablegrid

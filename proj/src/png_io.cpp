#include "tablegrid/png_io.hpp"

#include <png.h>

#include <cstring>
#include <string>
#include <vector>

#include "tablegrid/error.hpp"

namespace tablegrid {

RasterImage read_png(const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw DataError("cannot read PNG " + path.string() + ": " + image.message);
  }
  const bool colour = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = colour ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const int channels = colour ? 3 : 1;
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
  png_color white{255, 255, 255};
  if (!png_image_finish_read(&image, &white, buffer.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw DataError("cannot decode PNG " + path.string() + ": " + msg);
  }
  return RasterImage(static_cast<int>(image.width), static_cast<int>(image.height), channels,
                     std::move(buffer));
}

void write_png(const RasterImage& img, const std::filesystem::path& path) {
  if (img.empty()) throw DataError("refusing to write an empty image to " + path.string());
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = img.channels() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, path.c_str(), 0, img.pixels().data(), 0, nullptr)) {
    throw DataError("cannot write PNG " + path.string() + ": " + image.message);
  }
}

}  // namespace tablegrid

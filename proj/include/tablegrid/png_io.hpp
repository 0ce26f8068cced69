#pragma once

#include <filesystem>

#include "tablegrid/image.hpp"

namespace tablegrid {

// Reads an 8-bit PNG as grayscale (gray sources) or RGB (colour sources).
// Alpha is composited onto white. Throws DataError on failure.
RasterImage read_png(const std::filesystem::path& path);

void write_png(const RasterImage& img, const std::filesystem::path& path);

}  // namespace tablegrid

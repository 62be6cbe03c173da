#pragma once

// 8-bit PNG input/output. Requires linking libpng.

#include <png.h>

#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "glaucad/raster.hpp"

namespace glaucad {

/// Reads a PNG as grayscale. Color inputs go through rgb_to_gray.
inline GrayImage read_png(const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.string().c_str()))
    throw InputError("cannot read PNG '" + path.string() + "': " + image.message);

  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw InputError("cannot decode PNG '" + path.string() + "': " + msg);
  }

  GrayImage out(image.width, image.height);
  if (image.width == 0 || image.height == 0) throw InputError("empty input");
  if (color) {
    for (std::size_t i = 0; i < out.size(); ++i)
      out.pixels()[i] = rgb_to_gray(buffer[3 * i], buffer[3 * i + 1], buffer[3 * i + 2]);
  } else {
    std::memcpy(out.pixels().data(), buffer.data(), out.size());
  }
  return out;
}

inline void write_png(const std::filesystem::path& path, const GrayImage& img) {
  if (img.empty()) throw InputError("empty input");
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, img.pixels().data(), 0,
                               nullptr))
    throw InputError("cannot write PNG '" + path.string() + "': " + image.message);
}

/// Linear min/max stretch of a real raster into a displayable image (debug dumps).
inline GrayImage normalize_for_display(const RealImage& img) {
  GrayImage out(img.width(), img.height());
  if (img.empty()) return out;
  const auto [lo, hi] = std::ranges::minmax(img.pixels());
  const double span = hi - lo;
  for (std::size_t i = 0; i < img.size(); ++i)
    out.pixels()[i] =
        span > 0 ? clamp_to_intensity(kMaxIntensity * (img.pixels()[i] - lo) / span) : 0;
  return out;
}

}  // namespace glaucad

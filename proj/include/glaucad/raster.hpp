#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "glaucad/error.hpp"

namespace glaucad {

/// Number of displayable intensity levels; integer pixels live in [0, kIntensityLevels).
inline constexpr int kIntensityLevels = 256;
inline constexpr int kMaxIntensity = kIntensityLevels - 1;

/// Dense row-major 2-D raster. Element (row, col) lives at row * width + col.
template <typename T>
class Raster {
 public:
  using value_type = T;

  Raster() = default;

  Raster(std::size_t width, std::size_t height, T fill = T{})
      : width_(width), height_(height), data_(width * height, fill) {}

  Raster(std::size_t width, std::size_t height, std::vector<T> data)
      : width_(width), height_(height), data_(std::move(data)) {
    detail::require(data_.size() == width_ * height_,
                    "raster data length " + std::to_string(data_.size()) +
                        " does not match " + std::to_string(width_) + "x" +
                        std::to_string(height_));
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t row, std::size_t col) { return data_[row * width_ + col]; }
  const T& operator()(std::size_t row, std::size_t col) const {
    return data_[row * width_ + col];
  }

  std::span<T> pixels() & noexcept { return data_; }
  std::span<const T> pixels() const& noexcept { return data_; }
  std::vector<T> pixels() && noexcept { return std::move(data_); }
  const std::vector<T>& values() const noexcept { return data_; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * width_, width_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * width_, width_}; }

  bool same_shape(const auto& other) const noexcept {
    return width_ == other.width() && height_ == other.height();
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<T> data_;
};

using GrayImage = Raster<std::uint8_t>;
using RealImage = Raster<double>;
using ComplexImage = Raster<std::complex<double>>;

/// Nearest integer, ties away from zero.
inline double round_half_away(double v) { return std::round(v); }

inline std::uint8_t clamp_to_intensity(double v) {
  const double r = round_half_away(v);
  return static_cast<std::uint8_t>(std::clamp(r, 0.0, static_cast<double>(kMaxIntensity)));
}

/// Luma rule used for every color input: 0.299 R + 0.587 G + 0.114 B.
inline std::uint8_t rgb_to_gray(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  return clamp_to_intensity(0.299 * r + 0.587 * g + 0.114 * b);
}

inline RealImage to_real(const GrayImage& img) {
  RealImage out(img.width(), img.height());
  std::ranges::transform(img.pixels(), out.pixels().begin(),
                         [](std::uint8_t v) { return static_cast<double>(v); });
  return out;
}

/// Stage-boundary conversion: round then clamp to the displayable range.
inline GrayImage to_gray(const RealImage& img) {
  GrayImage out(img.width(), img.height());
  std::ranges::transform(img.pixels(), out.pixels().begin(), clamp_to_intensity);
  return out;
}

template <typename T>
Raster<T> transpose(const Raster<T>& in) {
  Raster<T> out(in.height(), in.width());
  for (std::size_t r = 0; r < in.height(); ++r)
    for (std::size_t c = 0; c < in.width(); ++c) out(c, r) = in(r, c);
  return out;
}

template <typename T>
Raster<T> crop(const Raster<T>& in, std::size_t row0, std::size_t col0, std::size_t height,
               std::size_t width) {
  detail::require(row0 + height <= in.height() && col0 + width <= in.width(),
                  "crop window outside raster");
  Raster<T> out(width, height);
  for (std::size_t r = 0; r < height; ++r)
    for (std::size_t c = 0; c < width; ++c) out(r, c) = in(row0 + r, col0 + c);
  return out;
}

template <typename T>
bool all_finite(const Raster<T>& img) {
  return std::ranges::all_of(img.pixels(), [](const T& v) {
    if constexpr (std::is_same_v<T, std::complex<double>>)
      return std::isfinite(v.real()) && std::isfinite(v.imag());
    else
      return std::isfinite(static_cast<double>(v));
  });
}

}  // namespace glaucad

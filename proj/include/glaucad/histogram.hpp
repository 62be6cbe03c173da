#pragma once

// Histogram, CDF, quantile and image-quality primitives shared by every stage.

#include <array>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "glaucad/raster.hpp"

namespace glaucad {

/// Bin counts over intensity levels. Counts are integral for image histograms
/// and real-valued once blended with the uniform histogram.
template <typename Count>
struct BasicHistogram {
  std::vector<Count> bins;

  BasicHistogram() : bins(kIntensityLevels, Count{}) {}
  explicit BasicHistogram(std::vector<Count> b) : bins(std::move(b)) {}

  std::size_t levels() const noexcept { return bins.size(); }
  Count total() const { return std::accumulate(bins.begin(), bins.end(), Count{}); }
};

using Histogram = BasicHistogram<std::uint64_t>;
using RealHistogram = BasicHistogram<double>;

/// Cumulative probabilities, one per intensity level; non-decreasing, last value 1.
struct CdfTable {
  std::vector<double> values;

  std::size_t levels() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

inline Histogram compute_histogram(const GrayImage& img) {
  if (img.empty()) throw InputError("empty input");
  Histogram h;
  for (std::uint8_t v : img.pixels()) ++h.bins[v];
  return h;
}

/// values[i] = mass of bins 0..i divided by the total mass.
template <typename Count>
CdfTable normalized_cdf(const BasicHistogram<Count>& h) {
  const double total = static_cast<double>(h.total());
  if (!(total > 0.0)) throw InputError("histogram has zero total mass");
  CdfTable cdf;
  cdf.values.resize(h.levels());
  double running = 0.0;
  for (std::size_t i = 0; i < h.levels(); ++i) {
    running += static_cast<double>(h.bins[i]);
    cdf.values[i] = running / total;
  }
  cdf.values.back() = 1.0;
  return cdf;
}

/// t+1 boundaries [i_0 .. i_t]: i_0 / i_t are the lowest / highest occupied
/// levels and i_k (0<k<t) is the smallest level whose CDF reaches k/t.
/// Uses exact integer comparisons, so boundaries never depend on rounding.
inline std::vector<int> quantile_boundaries(const Histogram& h, int t) {
  if (t < 1) throw InputError("quantile count must be >= 1");
  const std::uint64_t total = h.total();
  if (total == 0) throw InputError("histogram has zero total mass");
  const int levels = static_cast<int>(h.levels());
  int lo = 0;
  while (h.bins[lo] == 0) ++lo;
  int hi = levels - 1;
  while (h.bins[hi] == 0) --hi;

  std::vector<int> b(static_cast<std::size_t>(t) + 1);
  b.front() = lo;
  b.back() = hi;
  std::uint64_t running = 0;
  int level = 0;
  for (int k = 1; k < t; ++k) {
    const std::uint64_t need = static_cast<std::uint64_t>(k) * total;
    while (running * static_cast<std::uint64_t>(t) < need) running += h.bins[level++];
    b[k] = level - 1;
  }
  return b;
}

/// Mean squared difference with intensities scaled to [0,1] by 1/(I_max - 1).
inline double mse(const GrayImage& a, const GrayImage& b) {
  if (!a.same_shape(b)) throw InputError("mse: dimension mismatch");
  if (a.empty()) throw InputError("empty input");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = (static_cast<double>(a.pixels()[i]) - b.pixels()[i]) / kMaxIntensity;
    acc += d * d;
  }
  return acc / static_cast<double>(a.size());
}

inline double mean_intensity(const GrayImage& img) {
  if (img.empty()) throw InputError("empty input");
  double acc = 0.0;
  for (std::uint8_t v : img.pixels()) acc += v;
  return acc / static_cast<double>(img.size());
}

/// Classic full-range histogram equalization, out = round(255 * CDF(I)).
/// Reference method for MSE comparisons.
inline GrayImage histogram_equalize(const GrayImage& img) {
  const CdfTable cdf = normalized_cdf(compute_histogram(img));
  GrayImage out(img.width(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i)
    out.pixels()[i] = clamp_to_intensity(kMaxIntensity * cdf[img.pixels()[i]]);
  return out;
}

}  // namespace glaucad

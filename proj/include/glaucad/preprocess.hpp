#pragma once

// Brightness and contrast preprocessing: uniform-blended histogram, quadratic
// rank transmutation of its CDF, adaptive gamma correction, blend back with
// the original, then quantile sub-histogram equalization.

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "glaucad/histogram.hpp"

namespace glaucad {

struct PreprocessConfig {
  /// Histogram blend weight. nullopt selects it by grid search (see preprocess()).
  std::optional<double> alpha;
  double delta = 0.5;  ///< transmutation parameter, [-1, 1]
  double theta = 0.7;  ///< weight of the gamma-corrected image in the restore blend
  int quantiles = 4;

  void validate() const {
    if (alpha && !(*alpha >= 0.0 && *alpha <= 1.0))
      throw InputError("pre.alpha must lie in [0,1]");
    if (!(delta >= -1.0 && delta <= 1.0)) throw InputError("invalid transmutation parameter");
    if (!(theta >= 0.0 && theta <= 1.0)) throw InputError("pre.theta must lie in [0,1]");
    if (quantiles < 1) throw InputError("pre.quantiles must be >= 1");
  }
};

/// alpha * h + (1 - alpha) * uniform histogram with the same total.
template <typename Count>
RealHistogram blend_histogram(const BasicHistogram<Count>& h, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InputError("blend weight must lie in [0,1]");
  const double uniform = static_cast<double>(h.total()) / static_cast<double>(h.levels());
  RealHistogram out(std::vector<double>(h.levels()));
  for (std::size_t i = 0; i < h.levels(); ++i)
    out.bins[i] = alpha * static_cast<double>(h.bins[i]) + (1.0 - alpha) * uniform;
  return out;
}

/// F -> (1 + delta) F - delta F^2. Stays a CDF for |delta| <= 1.
inline CdfTable qrtm_transform(const CdfTable& cdf, double delta) {
  if (!(delta >= -1.0 && delta <= 1.0)) throw InputError("invalid transmutation parameter");
  CdfTable out = cdf;
  for (double& f : out.values) f = (1.0 + delta) * f - delta * f * f;
  return out;
}

/// I -> (I_max - 1) (I / I_max)^(1 - cdf_t(I)), rounded; black stays black.
inline GrayImage adaptive_gamma(const GrayImage& img, const CdfTable& cdf_t) {
  detail::require(cdf_t.levels() == kIntensityLevels, "gamma table needs 256 levels");
  std::array<std::uint8_t, kIntensityLevels> lut{};
  for (int i = 1; i < kIntensityLevels; ++i) {
    const double exponent = 1.0 - cdf_t[i];
    lut[i] = clamp_to_intensity(
        kMaxIntensity * std::pow(static_cast<double>(i) / kIntensityLevels, exponent));
  }
  GrayImage out(img.width(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i) out.pixels()[i] = lut[img.pixels()[i]];
  return out;
}

inline GrayImage color_restore(const GrayImage& agc, const GrayImage& orig, double theta) {
  if (!agc.same_shape(orig)) throw InputError("color_restore: dimension mismatch");
  if (!(theta >= 0.0 && theta <= 1.0)) throw InputError("restore weight must lie in [0,1]");
  GrayImage out(agc.width(), agc.height());
  for (std::size_t i = 0; i < agc.size(); ++i)
    out.pixels()[i] =
        clamp_to_intensity(theta * agc.pixels()[i] + (1.0 - theta) * orig.pixels()[i]);
  return out;
}

/// Index of the quantile segment holding `level`: segment 1 is [i_0, i_1],
/// segment k > 1 is (i_{k-1}, i_k].
inline int quantile_segment(const std::vector<int>& bounds, int level) {
  const int t = static_cast<int>(bounds.size()) - 1;
  for (int k = 1; k < t; ++k)
    if (level <= bounds[k]) return k;
  return t;
}

/// Splits the histogram at its t-quantiles and equalizes each segment inside
/// its own intensity range, so no pixel leaves its segment.
inline GrayImage quantile_equalize(const GrayImage& img, int t) {
  if (t < 1) throw InputError("quantile count must be >= 1");
  const Histogram h = compute_histogram(img);
  const std::vector<int> bounds = quantile_boundaries(h, t);

  std::vector<double> segment_mass(static_cast<std::size_t>(t) + 1, 0.0);
  std::array<int, kIntensityLevels> segment{};
  for (int level = 0; level < kIntensityLevels; ++level) {
    segment[level] = quantile_segment(bounds, level);
    segment_mass[segment[level]] += static_cast<double>(h.bins[level]);
  }

  std::array<std::uint8_t, kIntensityLevels> lut{};
  std::vector<double> running(static_cast<std::size_t>(t) + 1, 0.0);
  for (int level = 0; level < kIntensityLevels; ++level) {
    const int k = segment[level];
    running[k] += static_cast<double>(h.bins[level]);
    const double lo = bounds[k - 1];
    const double hi = bounds[k];
    const double cdf = segment_mass[k] > 0 ? running[k] / segment_mass[k] : 0.0;
    lut[level] = clamp_to_intensity(lo + (hi - lo) * cdf);
  }

  GrayImage out(img.width(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i) out.pixels()[i] = lut[img.pixels()[i]];
  return out;
}

/// Brightness phase only (blend, CDF, transmutation, gamma, restore) at a fixed alpha.
inline GrayImage brighten(const GrayImage& img, double alpha, const PreprocessConfig& cfg) {
  const Histogram h = compute_histogram(img);
  const CdfTable cdf = normalized_cdf(blend_histogram(h, alpha));
  const GrayImage agc = adaptive_gamma(img, qrtm_transform(cdf, cfg.delta));
  return color_restore(agc, img, cfg.theta);
}

struct PreprocessResult {
  GrayImage image;
  double alpha = 1.0;  ///< blend weight actually used
};

/// Full preprocessing. With cfg.alpha unset, alpha is chosen from {0.1, ..., 1.0}
/// to minimize |mean(output) - mean(input)|; the first minimum wins.
inline PreprocessResult preprocess_with_alpha(const GrayImage& img, const PreprocessConfig& cfg) {
  cfg.validate();
  if (img.empty()) throw InputError("empty input");
  auto run = [&](double alpha) {
    return quantile_equalize(brighten(img, alpha, cfg), cfg.quantiles);
  };
  if (cfg.alpha) return {run(*cfg.alpha), *cfg.alpha};

  const double target = mean_intensity(img);
  PreprocessResult best;
  double best_err = std::numeric_limits<double>::infinity();
  for (int step = 1; step <= 10; ++step) {
    const double alpha = step / 10.0;
    GrayImage candidate = run(alpha);
    const double err = std::abs(mean_intensity(candidate) - target);
    if (err < best_err) {
      best_err = err;
      best = {std::move(candidate), alpha};
    }
  }
  return best;
}

inline GrayImage preprocess(const GrayImage& img, const PreprocessConfig& cfg) {
  return preprocess_with_alpha(img, cfg).image;
}

}  // namespace glaucad

#pragma once

// Synthetic fundus-like phantoms for tests and desk-scale experiments.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "glaucad/raster.hpp"

namespace glaucad::synthetic {

/// Constant-intensity disc on a constant background.
inline GrayImage disc(std::size_t size, double radius, std::uint8_t inside = 200, std::uint8_t outside = 50) {
  GrayImage g(size, size, outside);
  const double c = (static_cast<double>(size) - 1) / 2;
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t col = 0; col < size; ++col)
      if (std::hypot(r - c, col - c) <= radius) g(r, col) = inside;
  return g;
}

/// Single bright (or dark) square spot on a flat background.
inline RealImage spot(std::size_t size, std::size_t spot_size, double background, double value) {
  RealImage g(size, size, background);
  const std::size_t o = (size - spot_size) / 2;
  for (std::size_t r = 0; r < spot_size; ++r)
    for (std::size_t c = 0; c < spot_size; ++c) g(o + r, o + c) = value;
  return g;
}

struct FundusParams {
  double background = 110;  ///< mean retinal intensity
  double vignette = 25;     ///< darkening toward the corners
  double disc_gain = 45;    ///< optic disc brightness above background
  double disc_radius = 0.12;  ///< fraction of the image size
  double cup_ratio = 0.4;   ///< cup radius / disc radius
  double cup_gain = 35;     ///< cup brightness above the disc
  int vessels = 4;
  double vessel_depth = 35;
  double vessel_width = 1.2;  ///< Gaussian profile sigma, pixels
  double texture_amp = 0;   ///< amplitude of the striated patches around the disc
  int texture_patches = 4;
  double texture_patch_size = 0.06;  ///< Gaussian envelope sigma, fraction of the image size
  double texture_period = 4;  ///< pixels
  double noise = 0;         ///< Gaussian noise sigma
  double contrast = 1.0;    ///< scale of deviations around the background
};

/// Smooth background with vignetting, an optic disc with a brighter cup,
/// sinuous dark vessels, optional striated patches around the disc, and noise.
inline GrayImage fundus(std::size_t size, const FundusParams& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  const double n = static_cast<double>(size);
  const double dr = n * (0.4 + 0.2 * u(rng)), dc = n * (0.45 + 0.2 * u(rng));
  const double disc_r = p.disc_radius * n, cup_r = p.cup_ratio * disc_r;

  struct Vessel {
    double offset, amp, freq, phase;
    bool horizontal;
  };
  std::vector<Vessel> vessels;
  for (int k = 0; k < p.vessels; ++k)
    vessels.push_back({n * (0.15 + 0.7 * u(rng)), n * (0.03 + 0.08 * u(rng)), 0.5 + 2.0 * u(rng),
                       2 * std::numbers::pi * u(rng), k % 2 == 0});
  struct Patch {
    double r, c, angle, phase;
  };
  std::vector<Patch> patches;
  for (int k = 0; k < p.texture_patches; ++k) {
    const double a = 2 * std::numbers::pi * (k + u(rng)) / p.texture_patches, rad = 2.5 * disc_r;
    patches.push_back({dr + rad * std::sin(a), dc + rad * std::cos(a), a + std::numbers::pi / 2 * u(rng),
                       2 * std::numbers::pi * u(rng)});
  }
  const double patch_sigma = p.texture_patch_size * n;

  GrayImage g(size, size);
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t c = 0; c < size; ++c) {
      const double x = static_cast<double>(c), y = static_cast<double>(r);
      const double radial = std::hypot((y - n / 2) / n, (x - n / 2) / n) / std::numbers::sqrt2 * 2;
      double dev = -p.vignette * radial * radial;
      const double d = std::hypot(y - dr, x - dc);
      dev += p.disc_gain / (1 + std::exp((d - disc_r) / 1.5));
      dev += p.cup_gain / (1 + std::exp((d - cup_r) / 1.5));
      for (const Vessel& v : vessels) {
        const double along = v.horizontal ? x : y, across = v.horizontal ? y : x;
        const double centre = v.offset + v.amp * std::sin(2 * std::numbers::pi * v.freq * along / n + v.phase);
        const double t = (across - centre) / p.vessel_width;
        dev -= p.vessel_depth * std::exp(-0.5 * t * t);
      }
      if (p.texture_amp > 0) {
        for (const Patch& q : patches) {
          const double e = std::hypot(y - q.r, x - q.c) / patch_sigma;
          if (e > 4) continue;
          const double s = x * std::cos(q.angle) + y * std::sin(q.angle);
          dev += p.texture_amp * std::exp(-0.5 * e * e) * std::sin(2 * std::numbers::pi * s / p.texture_period + q.phase);
        }
      }
      double v = p.background + p.contrast * dev;
      if (p.noise > 0) v += p.noise * noise(rng);
      g(r, c) = clamp_to_intensity(v);
    }
  return g;
}

/// Clean ridge (vessel) phantom: no noise, no texture.
inline GrayImage ridge(std::size_t size = 128, std::uint64_t seed = 1) {
  FundusParams p;
  p.vessels = 6;
  return fundus(size, p, seed);
}

/// Dim, compressed-range phantom for brightness/contrast tests.
inline GrayImage low_contrast(std::size_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FundusParams p;
  p.background = 55 + 20 * u(rng);
  p.contrast = 0.25 + 0.15 * u(rng);
  p.noise = 1.0;
  p.vessels = 3 + static_cast<int>(3 * u(rng));
  return fundus(size, p, seed);
}

/// Class-conditional parameters for the two-class experiment: glaucoma
/// phantoms have a larger cup and faint or absent striated patches; the
/// remaining parameters vary randomly within each class.
inline FundusParams class_params(int label, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FundusParams p;
  p.background = 95 + 30 * u(rng);
  p.contrast = 0.7 + 0.5 * u(rng);
  p.vignette = 15 + 20 * u(rng);
  p.disc_radius = 0.10 + 0.05 * u(rng);
  p.vessels = 4 + static_cast<int>(0.9 * u(rng));
  p.vessel_depth = 30 + 4.5 * u(rng);
  p.noise = 1.5;
  p.texture_period = 6 + 4 * u(rng);
  p.texture_patches = 4;
  p.texture_patch_size = 0.1;
  if (label == 1) {
    p.cup_ratio = 0.45 + 0.35 * u(rng);
    p.texture_amp = 4 * u(rng);
  } else {
    p.cup_ratio = 0.25 + 0.35 * u(rng);
    p.texture_amp = 10 + 10 * u(rng);
  }
  return p;
}

struct Sample {
  GrayImage image;
  int label = 0;
};

/// count images, alternating labels, deterministic in seed.
inline std::vector<Sample> two_class_set(std::size_t count, std::size_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Sample> out;
  for (std::size_t i = 0; i < count; ++i) {
    const int label = static_cast<int>(i % 2);
    const FundusParams p = class_params(label, rng);
    out.push_back({fundus(size, p, rng()), label});
  }
  return out;
}

}  // namespace glaucad::synthetic

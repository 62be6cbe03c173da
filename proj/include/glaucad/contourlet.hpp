#pragma once

// Contourlet-style decomposition and locally adaptive shrinkage of DTCWT
// highpass subbands.
//
// Decomposition: a Laplacian pyramid (5-tap binomial kernel) whose bandpass
// levels are each split by a directional filter bank. The directional bank is
// a tight frame of angular wedges applied in the DFT domain: wedge k covers
// orientations within pi/D of k*pi/D with a cos^2 roll-off, so the squared
// responses sum to one at every frequency and synthesis is the adjoint.
//
// Shrinkage, per band: noise sigma = median(|c|) / beta, local energy v is the
// mean of c^2 over an A x A window, and each coefficient is scaled by
// max(v - sigma^2, 0) / v.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "glaucad/dwt.hpp"
#include "glaucad/fft.hpp"
#include "glaucad/raster.hpp"

namespace glaucad {

struct ContourletConfig {
  int pyramid_levels = 2;
  int directions = 8;

  void validate() const {
    if (pyramid_levels < 1) throw InputError("contourlet: pyramid_levels must be >= 1");
    if (directions < 1) throw InputError("contourlet: directions must be >= 1");
  }
};

/// directional[l][k]: direction k of pyramid level l (level 0 finest); every
/// directional band has the size of its pyramid level. coarse is the lowpass
/// residual. Together the bands cover the whole frequency plane.
struct ContourletBands {
  std::vector<std::vector<RealImage>> directional;
  RealImage coarse;
};

struct DenoiseConfig {
  int window = 7;         ///< A, side of the local-energy neighborhood
  double beta = 0.6745;   ///< robust-scale divisor; +inf disables shrinkage
  bool enabled = true;
  ContourletConfig contourlet{};

  void validate() const {
    if (window < 1) throw InputError("denoise.window must be >= 1");
    if (!(beta > 0)) throw InputError("denoise.beta must be > 0");
    contourlet.validate();
  }
};

namespace detail {

inline constexpr std::array<double, 5> kBinomial5{1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};

inline std::vector<double> smooth_1d(std::span<const double> x, double gain) {
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double acc = 0.0;
    for (long j = -2; j <= 2; ++j)
      acc += kBinomial5[static_cast<std::size_t>(j + 2)] *
             x[reflect_whole(static_cast<long>(i) + j, x.size())];
    y[i] = gain * acc;
  }
  return y;
}

inline RealImage smooth_rows(const RealImage& img, double gain) {
  RealImage out(img.width(), img.height());
  for (std::size_t r = 0; r < img.height(); ++r) std::ranges::copy(smooth_1d(img.row(r), gain), out.row(r).begin());
  return out;
}

inline RealImage smooth(const RealImage& img, double gain) {
  return transpose(smooth_rows(transpose(smooth_rows(img, gain)), gain));
}

inline RealImage pyramid_reduce(const RealImage& img) {
  const RealImage s = smooth(img, 1.0);
  RealImage out((img.width() + 1) / 2, (img.height() + 1) / 2);
  for (std::size_t r = 0; r < out.height(); ++r)
    for (std::size_t c = 0; c < out.width(); ++c) out(r, c) = s(2 * r, 2 * c);
  return out;
}

inline RealImage pyramid_expand(const RealImage& coarse, std::size_t width, std::size_t height) {
  RealImage up(width, height);
  for (std::size_t r = 0; r < coarse.height(); ++r)
    for (std::size_t c = 0; c < coarse.width(); ++c) up(2 * r, 2 * c) = coarse(r, c);
  return smooth(up, 2.0);
}

/// Signed angular frequency of DFT bin u out of n, in [-pi, pi).
inline double bin_frequency(std::size_t u, std::size_t n) {
  const long k = static_cast<long>(u) < static_cast<long>((n + 1) / 2) ? static_cast<long>(u)
                                                                     : static_cast<long>(u) - static_cast<long>(n);
  return 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
}

/// Angular wedge responses for one band size; result[k] is real and
/// point-symmetric on the DFT grid, and sum_k result[k]^2 == 1.
inline std::vector<RealImage> wedge_windows(std::size_t width, std::size_t height, int directions) {
  const double pi = std::numbers::pi;
  const double half_width = pi / directions;
  std::vector<RealImage> raw(static_cast<std::size_t>(directions), RealImage(width, height));
  for (std::size_t u = 0; u < height; ++u)
    for (std::size_t v = 0; v < width; ++v) {
      double theta = std::atan2(bin_frequency(u, height), bin_frequency(v, width));
      if (theta < 0) theta += pi;
      if (theta >= pi) theta -= pi;
      for (int k = 0; k < directions; ++k) {
        double delta = theta - k * half_width;
        while (delta >= pi / 2) delta -= pi;
        while (delta < -pi / 2) delta += pi;
        raw[k](u, v) = std::abs(delta) < half_width ? std::cos(delta * directions / 2.0) : 0.0;
      }
    }
  // Symmetrize so every window equals its point reflection (real outputs on
  // even-sized grids, where the Nyquist bin is its own mirror).
  std::vector<RealImage> out(raw.size(), RealImage(width, height));
  for (std::size_t k = 0; k < raw.size(); ++k)
    for (std::size_t u = 0; u < height; ++u)
      for (std::size_t v = 0; v < width; ++v) {
        const double a = raw[k](u, v);
        const double b = raw[k]((height - u) % height, (width - v) % width);
        out[k](u, v) = std::sqrt(0.5 * (a * a + b * b));
      }
  return out;
}

inline ComplexImage to_complex(const RealImage& x) {
  ComplexImage out(x.width(), x.height());
  for (std::size_t i = 0; i < x.size(); ++i) out.pixels()[i] = x.pixels()[i];
  return out;
}

inline RealImage real_part(const ComplexImage& x) {
  RealImage out(x.width(), x.height());
  for (std::size_t i = 0; i < x.size(); ++i) out.pixels()[i] = x.pixels()[i].real();
  return out;
}

inline ComplexImage apply_window(ComplexImage spectrum, const RealImage& window) {
  for (std::size_t i = 0; i < spectrum.size(); ++i) spectrum.pixels()[i] *= window.pixels()[i];
  return spectrum;
}

}  // namespace detail

inline ContourletBands contourlet_forward(const RealImage& img, const ContourletConfig& cfg = {}) {
  cfg.validate();
  if (img.empty()) throw InputError("empty input");
  ContourletBands out;
  RealImage current = img;
  for (int level = 0; level < cfg.pyramid_levels; ++level) {
    RealImage coarse = detail::pyramid_reduce(current);
    RealImage band = current;
    const RealImage predicted = detail::pyramid_expand(coarse, current.width(), current.height());
    for (std::size_t i = 0; i < band.size(); ++i) band.pixels()[i] -= predicted.pixels()[i];

    const auto windows = detail::wedge_windows(band.width(), band.height(), cfg.directions);
    const ComplexImage spectrum = fft2(detail::to_complex(band));
    std::vector<RealImage> dirs;
    for (const RealImage& w : windows)
      dirs.push_back(detail::real_part(ifft2(detail::apply_window(spectrum, w))));
    out.directional.push_back(std::move(dirs));
    current = std::move(coarse);
  }
  out.coarse = std::move(current);
  return out;
}

inline RealImage contourlet_inverse(const ContourletBands& bands) {
  if (bands.directional.empty()) throw InputError("contourlet: no pyramid levels");
  RealImage current = bands.coarse;
  for (auto level = bands.directional.rbegin(); level != bands.directional.rend(); ++level) {
    const std::size_t w = level->front().width(), h = level->front().height();
    const auto windows = detail::wedge_windows(w, h, static_cast<int>(level->size()));
    ComplexImage spectrum(w, h);
    for (std::size_t k = 0; k < level->size(); ++k) {
      const ComplexImage part = detail::apply_window(fft2(detail::to_complex((*level)[k])), windows[k]);
      for (std::size_t i = 0; i < spectrum.size(); ++i) spectrum.pixels()[i] += part.pixels()[i];
    }
    RealImage out = detail::real_part(ifft2(spectrum));
    const RealImage predicted = detail::pyramid_expand(current, w, h);
    for (std::size_t i = 0; i < out.size(); ++i) out.pixels()[i] += predicted.pixels()[i];
    current = std::move(out);
  }
  return current;
}

inline double median_abs(std::span<const double> values) {
  if (values.empty()) return 0.0;
  std::vector<double> a(values.size());
  std::ranges::transform(values, a.begin(), [](double v) { return std::abs(v); });
  const std::size_t mid = a.size() / 2;
  std::ranges::nth_element(a, a.begin() + static_cast<long>(mid));
  if (a.size() % 2 == 1) return a[mid];
  const double upper = a[mid];
  const double lower = *std::max_element(a.begin(), a.begin() + static_cast<long>(mid));
  return 0.5 * (lower + upper);
}

/// Per-coefficient gains in [0, 1] for one band.
inline RealImage shrinkage_gains(const RealImage& band, int window, double beta) {
  const double sigma = std::isinf(beta) ? 0.0 : median_abs(band.pixels()) / beta;
  const double noise_var = sigma * sigma;
  const std::size_t w = band.width(), h = band.height();

  // Integral image of squared coefficients.
  std::vector<double> sat((w + 1) * (h + 1), 0.0);
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = 0; c < w; ++c) {
      const double v = band(r, c);
      sat[(r + 1) * (w + 1) + c + 1] = v * v + sat[r * (w + 1) + c + 1] +
                                       sat[(r + 1) * (w + 1) + c] - sat[r * (w + 1) + c];
    }

  const long half = window / 2;
  RealImage gains(w, h);
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = 0; c < w; ++c) {
      const std::size_t r0 = static_cast<std::size_t>(std::max(0L, static_cast<long>(r) - half));
      const std::size_t c0 = static_cast<std::size_t>(std::max(0L, static_cast<long>(c) - half));
      const std::size_t r1 = std::min(h, r + static_cast<std::size_t>(window - half));
      const std::size_t c1 = std::min(w, c + static_cast<std::size_t>(window - half));
      const double energy = sat[r1 * (w + 1) + c1] - sat[r0 * (w + 1) + c1] -
                            sat[r1 * (w + 1) + c0] + sat[r0 * (w + 1) + c0];
      const double local = std::max(0.0, energy) / static_cast<double>((r1 - r0) * (c1 - c0));
      gains(r, c) = local > 0 ? std::max(local - noise_var, 0.0) / local : 1.0;
    }
  return gains;
}

inline void shrink_band(RealImage& band, const DenoiseConfig& cfg) {
  const RealImage g = shrinkage_gains(band, cfg.window, cfg.beta);
  for (std::size_t i = 0; i < band.size(); ++i) band.pixels()[i] *= g.pixels()[i];
}

/// Contourlet-domain shrinkage of one real raster.
inline RealImage denoise_real(const RealImage& x, const DenoiseConfig& cfg = {}) {
  cfg.validate();
  if (!cfg.enabled || x.empty()) return x;
  ContourletBands bands = contourlet_forward(x, cfg.contourlet);
  for (auto& level : bands.directional)
    for (RealImage& band : level) shrink_band(band, cfg);
  shrink_band(bands.coarse, cfg);
  return contourlet_inverse(bands);
}

/// Denoises a complex DTCWT subband; real and imaginary parts are treated as
/// independent real rasters.
inline ComplexImage denoise_highpass(const ComplexImage& hs, const DenoiseConfig& cfg = {}) {
  if (!cfg.enabled || hs.empty()) return hs;
  RealImage re(hs.width(), hs.height()), im(hs.width(), hs.height());
  for (std::size_t i = 0; i < hs.size(); ++i) {
    re.pixels()[i] = hs.pixels()[i].real();
    im.pixels()[i] = hs.pixels()[i].imag();
  }
  re = denoise_real(re, cfg);
  im = denoise_real(im, cfg);
  ComplexImage out(hs.width(), hs.height());
  for (std::size_t i = 0; i < out.size(); ++i) out.pixels()[i] = {re.pixels()[i], im.pixels()[i]};
  return out;
}

}  // namespace glaucad

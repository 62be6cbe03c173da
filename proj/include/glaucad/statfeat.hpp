#pragma once

// Statistical texture features: first-order statistics, GLCM (Haralick)
// statistics, directional third-order cumulants and bispectral features.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "glaucad/dwt.hpp"
#include "glaucad/fft.hpp"
#include "glaucad/moments.hpp"
#include "glaucad/raster.hpp"

namespace glaucad {

struct FirstOrderStats {
  double mean = 0, sd = 0, entropy = 0, rms = 0, variance = 0, smoothness = 0, kurtosis = 0, skewness = 0;
};

inline FirstOrderStats first_order_stats(const RealImage& cf) {
  if (cf.empty()) throw InputError("empty input");
  const auto x = cf.pixels();
  FirstOrderStats s;
  s.mean = stats::mean(x);
  s.variance = stats::variance(x);
  s.sd = std::sqrt(s.variance);
  s.entropy = stats::histogram_entropy(x, 256);
  s.rms = stats::rms(x);
  s.smoothness = 1.0 - 1.0 / (1.0 + s.variance);
  s.kurtosis = stats::kurtosis(x);
  s.skewness = stats::skewness(x);
  return s;
}

// ---------------------------------------------------------------- GLCM

struct GlcmConfig {
  int levels = 8;
  std::vector<std::pair<long, long>> offsets{{0, 1}, {1, 0}, {1, 1}, {1, -1}};
  bool symmetric = true;

  void validate() const {
    if (levels < 2) throw InputError("glcm.levels must be >= 2");
    if (offsets.empty()) throw InputError("glcm: no offsets");
  }
};

struct GlcmFeatures {
  double idm = 0, contrast = 0, energy = 0, homogeneity = 0;
};

/// Floor quantization of [min, max] into `levels` equal bins; constant input maps to 0.
inline std::vector<int> quantize_levels(const RealImage& img, int levels) {
  const auto [lo_it, hi_it] = std::ranges::minmax_element(img.pixels());
  const double lo = *lo_it, hi = *hi_it;
  std::vector<int> q(img.size(), 0);
  if (!(hi > lo)) return q;
  for (std::size_t i = 0; i < img.size(); ++i) {
    const int b = static_cast<int>(std::floor((img.pixels()[i] - lo) / (hi - lo) * levels));
    q[i] = std::clamp(b, 0, levels - 1);
  }
  return q;
}

/// Normalized co-occurrence matrix (levels x levels, row-major) averaged over offsets.
inline std::vector<double> glcm_matrix(const RealImage& img, const GlcmConfig& cfg) {
  cfg.validate();
  if (img.empty()) throw InputError("empty input");
  const auto levels = static_cast<std::size_t>(cfg.levels);
  const std::vector<int> q = quantize_levels(img, cfg.levels);
  const long h = static_cast<long>(img.height()), w = static_cast<long>(img.width());
  std::vector<double> avg(levels * levels, 0.0);
  for (const auto& [dr, dc] : cfg.offsets) {
    std::vector<double> m(levels * levels, 0.0);
    double total = 0.0;
    for (long r = 0; r < h; ++r)
      for (long c = 0; c < w; ++c) {
        const long r2 = r + dr, c2 = c + dc;
        if (r2 < 0 || r2 >= h || c2 < 0 || c2 >= w) continue;
        const auto a = static_cast<std::size_t>(q[static_cast<std::size_t>(r * w + c)]);
        const auto b = static_cast<std::size_t>(q[static_cast<std::size_t>(r2 * w + c2)]);
        m[a * levels + b] += 1;
        total += 1;
        if (cfg.symmetric) {
          m[b * levels + a] += 1;
          total += 1;
        }
      }
    if (total == 0) throw InputError("glcm: image smaller than offset");
    for (std::size_t i = 0; i < m.size(); ++i) avg[i] += m[i] / total;
  }
  for (double& v : avg) v /= static_cast<double>(cfg.offsets.size());
  return avg;
}

inline GlcmFeatures glcm_features(const RealImage& img, const GlcmConfig& cfg = {}) {
  const std::vector<double> p = glcm_matrix(img, cfg);
  const auto levels = static_cast<std::size_t>(cfg.levels);
  GlcmFeatures f;
  for (std::size_t i = 0; i < levels; ++i)
    for (std::size_t j = 0; j < levels; ++j) {
      const double v = p[i * levels + j];
      const double d = static_cast<double>(i) - static_cast<double>(j);
      f.idm += v / (1.0 + d * d);
      f.contrast += v * d * d;
      f.energy += v * v;
      f.homogeneity += v / (1.0 + std::abs(d));
    }
  return f;
}

// ----------------------------------------------------------------- HOC

inline constexpr std::array<int, 5> kHocAngles{10, 50, 90, 130, 180};

struct HocConfig {
  std::array<int, 5> angles = kHocAngles;
  int max_lag = 8;

  void validate() const {
    if (angles != kHocAngles) throw InputError("hoc angles must be 10, 50, 90, 130, 180");
    if (max_lag < 0) throw InputError("hoc.max_lag must be >= 0");
  }
};

/// Digital lines at `angle_deg` (direction (cos, -sin) with rows growing
/// downward). Lines step one pixel along the major axis (increasing column
/// when |cos| >= |sin|, else increasing row) with the minor coordinate rounded;
/// every pixel lies on exactly one line. Each line is a list of flat indices.
inline std::vector<std::vector<std::size_t>> directional_lines(std::size_t width, std::size_t height,
                                                               int angle_deg) {
  const double theta = angle_deg * std::numbers::pi / 180.0;
  const bool along_cols = std::abs(std::cos(theta)) >= std::abs(std::sin(theta));
  // minor = id + round(slope * major)
  const double slope = along_cols ? -std::tan(theta) : -std::cos(theta) / std::sin(theta);
  const long major_n = static_cast<long>(along_cols ? width : height);
  const long minor_n = static_cast<long>(along_cols ? height : width);
  std::vector<long> shift(static_cast<std::size_t>(major_n));
  long lo = 0, hi = 0;
  for (long m = 0; m < major_n; ++m) {
    shift[static_cast<std::size_t>(m)] = std::lround(slope * static_cast<double>(m));
    lo = std::min(lo, shift[static_cast<std::size_t>(m)]);
    hi = std::max(hi, shift[static_cast<std::size_t>(m)]);
  }
  std::vector<std::vector<std::size_t>> lines;
  for (long id = -hi; id < minor_n - lo; ++id) {
    std::vector<std::size_t> line;
    for (long m = 0; m < major_n; ++m) {
      const long minor = id + shift[static_cast<std::size_t>(m)];
      if (minor < 0 || minor >= minor_n) continue;
      const long r = along_cols ? minor : m, c = along_cols ? m : minor;
      line.push_back(static_cast<std::size_t>(r) * width + static_cast<std::size_t>(c));
    }
    if (!line.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

/// C3(tau, tau) = E[x(n) x(n+tau)^2] over within-line pairs, x zero-mean.
inline std::vector<double> line_cumulants(const RealImage& img, int angle_deg, int max_lag) {
  const double m = stats::mean(img.pixels());
  const auto lines = directional_lines(img.width(), img.height(), angle_deg);
  std::vector<double> out;
  for (int tau = 0; tau <= max_lag; ++tau) {
    double acc = 0.0;
    std::size_t count = 0;
    for (const auto& line : lines)
      for (std::size_t n = 0; n + static_cast<std::size_t>(tau) < line.size(); ++n) {
        const double a = img.pixels()[line[n]] - m;
        const double b = img.pixels()[line[n + static_cast<std::size_t>(tau)]] - m;
        acc += a * b * b;
        ++count;
      }
    if (count == 0) throw InputError("hoc: raster too small for lag " + std::to_string(tau));
    out.push_back(acc / static_cast<double>(count));
  }
  return out;
}

/// One value per angle: third-order cumulant averaged over lags
/// 0..min(max_lag, shorter side - 1).
inline std::array<double, 5> hoc_features(const RealImage& img, const HocConfig& cfg = {}) {
  cfg.validate();
  if (img.empty()) throw InputError("empty input");
  const int max_lag = std::min(cfg.max_lag, static_cast<int>(std::min(img.width(), img.height())) - 1);
  std::array<double, 5> out{};
  for (std::size_t i = 0; i < cfg.angles.size(); ++i) {
    const auto c = line_cumulants(img, cfg.angles[i], max_lag);
    out[i] = stats::mean(c);
  }
  return out;
}

// ----------------------------------------------------------------- HOS

struct HosFeatures {
  double entropy = 0;  ///< phase entropy
  double mean = 0;     ///< mean bispectral magnitude
  double ent_dg1 = 0, ent_dg2 = 0, ent_dg3 = 0;
};

inline constexpr std::size_t kHosSegment = 64;
inline constexpr std::size_t kHosPhaseBins = 36;

/// Direct bispectrum estimate over the principal domain
/// 0 <= f2 <= f1, f1 + f2 <= N/2, averaged over non-overlapping mean-removed
/// segments (one zero-padded segment when the signal is shorter).
inline std::vector<std::complex<double>> bispectrum(std::span<const double> signal,
                                                    std::size_t segment = kHosSegment) {
  if (segment < 4) throw InputError("bispectrum: segment too short");
  std::vector<std::vector<double>> segs;
  for (std::size_t s = 0; s + segment <= signal.size(); s += segment)
    segs.emplace_back(signal.begin() + static_cast<long>(s), signal.begin() + static_cast<long>(s + segment));
  if (segs.empty()) segs.emplace_back(signal.begin(), signal.end());

  const std::size_t half = segment / 2;
  std::vector<std::complex<double>> b;
  for (std::size_t f1 = 0; f1 <= half; ++f1)
    for (std::size_t f2 = 0; f2 <= f1 && f1 + f2 <= half; ++f2) b.emplace_back(0.0, 0.0);

  for (const auto& seg : segs) {
    const double m = stats::mean(seg);
    std::vector<std::complex<double>> x(segment, 0.0);
    for (std::size_t i = 0; i < seg.size(); ++i) x[i] = seg[i] - m;
    x = fft(std::move(x));
    std::size_t k = 0;
    for (std::size_t f1 = 0; f1 <= half; ++f1)
      for (std::size_t f2 = 0; f2 <= f1 && f1 + f2 <= half; ++f2) b[k++] += x[f1] * x[f2] * std::conj(x[f1 + f2]);
  }
  for (auto& v : b) v /= static_cast<double>(segs.size());
  return b;
}

inline HosFeatures hos_features_1d(std::span<const double> signal) {
  if (signal.empty()) throw InputError("empty input");
  const auto b = bispectrum(signal);
  HosFeatures f;
  std::vector<double> phase_hist(kHosPhaseBins, 0.0), p1, p2, p3;
  double mag_sum = 0.0;
  double scale = 0.0;
  for (const auto& v : b) scale = std::max(scale, std::abs(v));
  for (const auto& v : b) {
    const double a = std::abs(v);
    mag_sum += a;
    p1.push_back(a);
    p2.push_back(a * a);
    p3.push_back(a * a * a);
    // Phases of numerically-zero bins carry no information.
    if (a > 1e-12 * scale && a > 0) {
      const double t = (std::arg(v) + std::numbers::pi) / (2 * std::numbers::pi);
      const auto bin = std::min(kHosPhaseBins - 1, static_cast<std::size_t>(t * kHosPhaseBins));
      phase_hist[bin] += 1;
    }
  }
  f.mean = mag_sum / static_cast<double>(b.size());
  f.entropy = stats::entropy_of(phase_hist);
  f.ent_dg1 = stats::entropy_of(p1);
  f.ent_dg2 = stats::entropy_of(p2);
  f.ent_dg3 = stats::entropy_of(p3);
  return f;
}

/// Column profile: the mean of every column.
inline std::vector<double> row_mean_signal(const RealImage& img) {
  std::vector<double> s(img.width(), 0.0);
  for (std::size_t r = 0; r < img.height(); ++r)
    for (std::size_t c = 0; c < img.width(); ++c) s[c] += img(r, c);
  for (double& v : s) v /= static_cast<double>(img.height());
  return s;
}

inline HosFeatures hos_features(const RealImage& img) {
  if (img.empty()) throw InputError("empty input");
  return hos_features_1d(row_mean_signal(img));
}

// ------------------------------------------------------------ assembly

inline constexpr std::size_t kStatFeatureCount = 7 + 4 + 5 + 5;

struct StatFeatureConfig {
  GlcmConfig glcm{};
  HocConfig hoc{};
};

/// FoS, GLCM, HOC and HOS of one raster, in feature-vector order (RMS excluded).
/// A band flat up to rounding noise is treated as exactly constant.
inline std::array<double, kStatFeatureCount> band_statistics(const RealImage& input,
                                                             const StatFeatureConfig& cfg = {}) {
  if (input.empty()) throw InputError("empty input");
  const bool flat = stats::is_flat(input.pixels());
  const RealImage band = flat ? RealImage(input.width(), input.height(), stats::mean(input.pixels())) : input;
  const FirstOrderStats fos = first_order_stats(band);
  const GlcmFeatures g = glcm_features(band, cfg.glcm);
  const auto hoc = hoc_features(band, cfg.hoc);
  const HosFeatures hos = hos_features(band);
  return {fos.mean, fos.sd, fos.entropy, fos.variance, fos.smoothness, fos.kurtosis, fos.skewness,
          g.idm, g.contrast, g.energy, g.homogeneity,
          hoc[0], hoc[1], hoc[2], hoc[3], hoc[4],
          hos.entropy, hos.mean, hos.ent_dg1, hos.ent_dg2, hos.ent_dg3};
}

/// Band statistics averaged over the four level-2 Bior 6.8 sub-bands.
inline std::array<double, kStatFeatureCount> statistical_features(const GrayImage& img,
                                                                  const StatFeatureConfig& cfg = {}) {
  const DwtCoeffs c = dwt2_bior68(to_real(img), 2);
  const DwtLevel& l2 = c.levels[1];
  std::array<double, kStatFeatureCount> out{};
  for (const RealImage* band : {&l2.ll, &l2.lh, &l2.hl, &l2.hh}) {
    const auto s = band_statistics(*band, cfg);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += s[i] / 4.0;
  }
  return out;
}

}  // namespace glaucad

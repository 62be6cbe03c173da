#pragma once

// Low-pass enhancement with a dynamic structuring-element schedule and
// multi-scale top-hats, plus the full enhancement stage:
// DTCWT -> enhance lowpass / denoise highpass -> inverse DTCWT.

#include <algorithm>
#include <cmath>
#include <vector>

#include "glaucad/contourlet.hpp"
#include "glaucad/dtcwt.hpp"
#include "glaucad/morphology.hpp"
#include "glaucad/raster.hpp"

namespace glaucad {

struct SCurveParams {
  double c = 0.0;       ///< offset
  double r = 1.0;       ///< range
  double delta1 = 0.0;  ///< inflection center
  double delta2 = -1.0; ///< slope; negative gives an increasing curve

  void validate() const {
    if (delta2 == 0.0) throw InputError("s-curve slope must be non-zero");
    if (!(r >= 0.0)) throw InputError("s-curve range must be >= 0");
  }
};

inline double scurve_value(double pixel, const SCurveParams& p) {
  return p.c + p.r / (1.0 + std::exp((pixel - p.delta1) / p.delta2));
}

/// Global s-curve.
inline RealImage scurve_transform(const RealImage& img, const SCurveParams& p) {
  p.validate();
  RealImage out(img.width(), img.height());
  std::ranges::transform(img.pixels(), out.pixels().begin(), [&](double v) { return scurve_value(v, p); });
  return out;
}

inline constexpr double kSCurveEpsilon = 1e-6;

/// Local s-curve: each pixel uses the mean, std, min and range of the
/// window x window neighborhood around it (clipped at the border).
inline RealImage scurve_transform(const RealImage& img, int window) {
  if (window < 1) throw InputError("s-curve window must be >= 1");
  const long h = static_cast<long>(img.height()), w = static_cast<long>(img.width());
  const long half = window / 2;
  RealImage out(img.width(), img.height());
  for (long r = 0; r < h; ++r)
    for (long c = 0; c < w; ++c) {
      double sum = 0, sum2 = 0, lo = img(r, c), hi = img(r, c);
      long n = 0;
      for (long rr = std::max(0L, r - half); rr < std::min(h, r - half + window); ++rr)
        for (long cc = std::max(0L, c - half); cc < std::min(w, c - half + window); ++cc) {
          const double v = img(rr, cc);
          sum += v;
          sum2 += v * v;
          lo = std::min(lo, v);
          hi = std::max(hi, v);
          ++n;
        }
      const double mean = sum / n;
      const double sd = std::sqrt(std::max(0.0, sum2 / n - mean * mean));
      const SCurveParams p{lo, hi - lo, mean, -std::max(sd, kSCurveEpsilon)};
      out(r, c) = scurve_value(img(r, c), p);
    }
  return out;
}

/// Mean gradient magnitude; central differences inside, one-sided at the border.
inline double edge_content(const RealImage& img) {
  if (img.empty()) return 0.0;
  const std::size_t h = img.height(), w = img.width();
  auto diff = [](double a, double b, std::size_t span) { return span == 0 ? 0.0 : (a - b) / static_cast<double>(span); };
  double acc = 0.0;
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = 0; c < w; ++c) {
      const std::size_t c0 = c == 0 ? 0 : c - 1, c1 = c + 1 == w ? c : c + 1;
      const std::size_t r0 = r == 0 ? 0 : r - 1, r1 = r + 1 == h ? r : r + 1;
      const double gx = diff(img(r, c1), img(r, c0), c1 - c0);
      const double gy = diff(img(r1, c), img(r0, c), r1 - r0);
      acc += std::hypot(gx, gy);
    }
  return acc / static_cast<double>(img.size());
}

struct EnhanceConfig {
  double k = 1.0;          ///< top-hat gain
  double diff_max = 0.05;  ///< edge-content tolerance, fraction of the reference
  SeShape se0 = SeShape::Square;
  int t_cap = 10;
  int window = 15;         ///< s-curve neighborhood
  int dtcwt_levels = 3;
  DenoiseConfig denoise{};

  void validate() const {
    if (!(diff_max > 0)) throw InputError("enh.diff_max must be > 0");
    if (!std::isfinite(k) || k < 0) throw InputError("enh.k must be a finite value >= 0");
    if (t_cap < 1) throw InputError("enh.t_cap must be >= 1");
    if (window < 1) throw InputError("enh.window must be >= 1");
    if (dtcwt_levels < 1 || dtcwt_levels > kDtcwtMaxLevels) throw InputError("dtcwt.levels out of range");
    denoise.validate();
  }
};

struct DseSchedule {
  std::vector<StructuringElement> elements;  ///< SE_1 .. SE_l
  int t_final = 0;
};

inline RealImage add_tophats(const RealImage& ls, const StructuringElement& se) {
  RealImage out = ls;
  const RealImage w = tophat_white(ls, se), b = tophat_black(ls, se);
  for (std::size_t i = 0; i < out.size(); ++i) out.pixels()[i] += w.pixels()[i] - b.pixels()[i];
  return out;
}

/// Grows SE_t = se0 dilated t times while the s-curve edge content of
/// LS + TH_W(SE_t) - TH_B(SE_t) stays within diff_max of the edge content of
/// the raw band. Stops at the first violation, at t_cap, or when the next
/// element no longer fits the band.
inline DseSchedule construct_dse(const RealImage& ls, const EnhanceConfig& cfg) {
  cfg.validate();
  if (ls.empty()) throw InputError("empty input");
  const StructuringElement se0 = StructuringElement::of_shape(cfg.se0);
  if (!se_fits(se0, ls.width(), ls.height())) throw InputError("structuring element larger than image");
  const double reference = edge_content(ls);
  const double tolerance = cfg.diff_max * reference;

  DseSchedule out;
  StructuringElement se = se0;
  for (int t = 1; t <= cfg.t_cap; ++t) {
    if (t > 1) se = minkowski_sum(se, se0);
    if (!se_fits(se, ls.width(), ls.height())) break;
    out.elements.push_back(se);
    out.t_final = t;
    const double ed = edge_content(scurve_transform(add_tophats(ls, se), cfg.window));
    if (std::abs(reference - ed) > tolerance) break;
  }
  return out;
}

/// LS + k (max TH_W + max DTH_W - max TH_B - max DTH_B), maxima taken
/// pixel-wise over the schedule; DTH_i = TH_{i+1} - TH_i.
inline RealImage enhance_lowpass(const RealImage& ls, const DseSchedule& schedule, double k) {
  if (schedule.elements.empty()) throw InputError("enhance_lowpass: empty schedule");
  if (k == 0.0) return ls;
  std::vector<RealImage> white, black;
  for (const StructuringElement& se : schedule.elements) {
    white.push_back(tophat_white(ls, se));
    black.push_back(tophat_black(ls, se));
  }
  auto pixel_max = [](const std::vector<RealImage>& v, std::size_t i) {
    double m = v.front().pixels()[i];
    for (const RealImage& x : v) m = std::max(m, x.pixels()[i]);
    return m;
  };
  auto diff_max = [](const std::vector<RealImage>& v, std::size_t i) {
    if (v.size() < 2) return 0.0;
    double m = v[1].pixels()[i] - v[0].pixels()[i];
    for (std::size_t s = 1; s + 1 < v.size(); ++s) m = std::max(m, v[s + 1].pixels()[i] - v[s].pixels()[i]);
    return m;
  };
  RealImage out = ls;
  for (std::size_t i = 0; i < out.size(); ++i)
    out.pixels()[i] += k * (pixel_max(white, i) + diff_max(white, i) - pixel_max(black, i) - diff_max(black, i));
  return out;
}

struct EnhanceResult {
  GrayImage image;
  std::vector<int> t_final;  ///< one per lowpass band
};

inline EnhanceResult enhance_image(const GrayImage& img, const EnhanceConfig& cfg) {
  cfg.validate();
  if (img.empty()) throw InputError("empty input");
  DtcwtPyramid p = dtcwt_forward(to_real(img), cfg.dtcwt_levels);
  EnhanceResult out;
  const DseSchedule schedule = construct_dse(p.lowpass, cfg);
  out.t_final.push_back(schedule.t_final);
  p.lowpass = enhance_lowpass(p.lowpass, schedule, cfg.k);
  for (OrientedBands& level : p.highpass)
    for (ComplexImage& band : level) band = denoise_highpass(band, cfg.denoise);
  const RealImage rec = dtcwt_inverse(p);
  if (!all_finite(rec)) throw NumericError("enhancement produced non-finite values");
  out.image = to_gray(rec);
  return out;
}

}  // namespace glaucad

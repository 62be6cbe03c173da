#pragma once

// Separable 2-D discrete wavelet transform with the Bior 6.8 filter bank.
//
// Both analysis filters are odd-length and centered. Signals are extended by
// whole-sample symmetry about the first and last sample; lowpass outputs are
// taken at even positions and highpass outputs at odd positions. The
// extended signal stays symmetric through analysis and synthesis, which makes
// the transform non-expansive (ceil(N/2) + floor(N/2) coefficients) and
// perfectly reconstructing for any N >= 2.

#include <span>
#include <vector>

#include "glaucad/filters.hpp"
#include "glaucad/raster.hpp"

namespace glaucad {

/// One decomposition level: approximation and the three detail bands.
/// lh: lowpass along rows, highpass along columns (horizontal edges);
/// hl: highpass along rows, lowpass along columns (vertical edges).
struct DwtLevel {
  RealImage ll, lh, hl, hh;
};

/// levels[0] is the finest level; levels.back().ll is the coarse approximation.
/// Inversion only reads the deepest ll and every detail band.
struct DwtCoeffs {
  std::vector<DwtLevel> levels;
  std::size_t width = 0, height = 0;
};

namespace detail {

/// Whole-sample symmetric index into [0, n): ... 2 1 | 0 1 2 ... n-1 | n-2 ...
inline std::size_t reflect_whole(long i, std::size_t n) {
  if (n == 1) return 0;
  const long period = 2 * (static_cast<long>(n) - 1);
  long m = i % period;
  if (m < 0) m += period;
  return static_cast<std::size_t>(m < static_cast<long>(n) ? m : period - m);
}

template <std::size_t N>
double centered_tap(const std::array<double, N>& h, long j) {
  return h[static_cast<std::size_t>(j + static_cast<long>(N / 2))];
}

struct Split1d {
  std::vector<double> lo, hi;
};

inline Split1d analyze_1d(std::span<const double> x) {
  const std::size_t n = x.size();
  const auto& h0 = filters::bior68_dec_lo;
  const auto& h1 = filters::bior68_dec_hi;
  constexpr long c0 = filters::bior68_dec_lo.size() / 2;
  constexpr long c1 = filters::bior68_dec_hi.size() / 2;
  Split1d out{std::vector<double>((n + 1) / 2), std::vector<double>(n / 2)};
  for (std::size_t k = 0; k < out.lo.size(); ++k) {
    const long center = 2 * static_cast<long>(k);
    double acc = 0.0;
    for (long j = -c0; j <= c0; ++j) acc += centered_tap(h0, j) * x[reflect_whole(center - j, n)];
    out.lo[k] = acc;
  }
  for (std::size_t k = 0; k < out.hi.size(); ++k) {
    const long center = 2 * static_cast<long>(k) + 1;
    double acc = 0.0;
    for (long j = -c1; j <= c1; ++j) acc += centered_tap(h1, j) * x[reflect_whole(center - j, n)];
    out.hi[k] = acc;
  }
  return out;
}

inline std::vector<double> synthesize_1d(std::span<const double> lo, std::span<const double> hi) {
  const std::size_t n = lo.size() + hi.size();
  const auto& g0 = filters::bior68_rec_lo;
  const auto& g1 = filters::bior68_rec_hi;
  constexpr long c0 = filters::bior68_rec_lo.size() / 2;
  constexpr long c1 = filters::bior68_rec_hi.size() / 2;
  // Upsampled bands on the full grid: lowpass at even, highpass at odd samples.
  auto up_lo = [&](std::size_t m) { return m % 2 == 0 ? lo[m / 2] : 0.0; };
  auto up_hi = [&](std::size_t m) { return m % 2 == 1 ? hi[m / 2] : 0.0; };
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long pos = static_cast<long>(i);
    double acc = 0.0;
    for (long j = -c0; j <= c0; ++j) acc += centered_tap(g0, j) * up_lo(reflect_whole(pos - j, n));
    for (long j = -c1; j <= c1; ++j) acc += centered_tap(g1, j) * up_hi(reflect_whole(pos - j, n));
    x[i] = acc;
  }
  return x;
}

/// Splits every row into lowpass and highpass halves.
inline std::pair<RealImage, RealImage> analyze_rows(const RealImage& img) {
  const std::size_t wl = (img.width() + 1) / 2, wh = img.width() / 2;
  RealImage lo(wl, img.height()), hi(wh, img.height());
  for (std::size_t r = 0; r < img.height(); ++r) {
    Split1d s = analyze_1d(img.row(r));
    std::ranges::copy(s.lo, lo.row(r).begin());
    std::ranges::copy(s.hi, hi.row(r).begin());
  }
  return {std::move(lo), std::move(hi)};
}

inline RealImage synthesize_rows(const RealImage& lo, const RealImage& hi) {
  RealImage out(lo.width() + hi.width(), lo.height());
  for (std::size_t r = 0; r < lo.height(); ++r) {
    std::vector<double> x = synthesize_1d(lo.row(r), hi.row(r));
    std::ranges::copy(x, out.row(r).begin());
  }
  return out;
}

}  // namespace detail

/// Smallest accepted image side: the analysis lowpass length.
inline constexpr std::size_t kDwtMinSide = filters::bior68_dec_lo.size();

inline DwtLevel dwt2_level(const RealImage& img) {
  auto [row_lo, row_hi] = detail::analyze_rows(img);
  auto [ll_t, lh_t] = detail::analyze_rows(transpose(row_lo));
  auto [hl_t, hh_t] = detail::analyze_rows(transpose(row_hi));
  return {transpose(ll_t), transpose(lh_t), transpose(hl_t), transpose(hh_t)};
}

inline RealImage idwt2_level(const RealImage& ll, const RealImage& lh, const RealImage& hl,
                             const RealImage& hh) {
  RealImage row_lo = transpose(detail::synthesize_rows(transpose(ll), transpose(lh)));
  RealImage row_hi = transpose(detail::synthesize_rows(transpose(hl), transpose(hh)));
  return detail::synthesize_rows(row_lo, row_hi);
}

inline DwtCoeffs dwt2_bior68(const RealImage& img, int levels = 2) {
  if (levels < 1) throw InputError("dwt: level count must be >= 1");
  if (img.width() < kDwtMinSide || img.height() < kDwtMinSide)
    throw InputError("dwt: image smaller than the filter length (" +
                     std::to_string(kDwtMinSide) + ")");
  DwtCoeffs out;
  out.width = img.width();
  out.height = img.height();
  out.levels.reserve(static_cast<std::size_t>(levels));
  const RealImage* current = &img;
  for (int l = 0; l < levels; ++l) {
    if (current->width() < 2 || current->height() < 2)
      throw InputError("dwt: too many levels for this image size");
    out.levels.push_back(dwt2_level(*current));
    current = &out.levels.back().ll;
  }
  return out;
}

inline RealImage idwt2(const DwtCoeffs& coeffs) {
  if (coeffs.levels.empty()) throw InputError("idwt: no levels");
  RealImage current = coeffs.levels.back().ll;
  for (auto it = coeffs.levels.rbegin(); it != coeffs.levels.rend(); ++it)
    current = idwt2_level(current, it->lh, it->hl, it->hh);
  return current;
}

}  // namespace glaucad

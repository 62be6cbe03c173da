#pragma once

// 2-D dual-tree complex wavelet transform.
//
// Level 1 uses the near_sym_b biorthogonal pair without decimation of the
// lowpass; deeper levels use the qshift_b quarter-shift pair with the two
// trees interleaved on the decimated grid (Kingsbury's column filtering
// scheme). Every filtering step uses half-sample symmetric extension.
// Each level yields six complex oriented subbands, ordered as
// {15, 45, 75, 105, 135, 165} degrees.

#include <array>
#include <complex>
#include <numeric>
#include <span>
#include <vector>

#include "glaucad/filters.hpp"
#include "glaucad/raster.hpp"

namespace glaucad {

using OrientedBands = std::array<ComplexImage, 6>;

struct DtcwtPyramid {
  RealImage lowpass;                    ///< coarse real lowpass residual
  std::vector<OrientedBands> highpass;  ///< highpass[0] is the finest level
  std::size_t width = 0, height = 0;    ///< size of the transformed image

  int levels() const noexcept { return static_cast<int>(highpass.size()); }
};

inline constexpr int kDtcwtMaxLevels = 8;

namespace detail {

/// Half-sample symmetric index into [0, n): ... 1 0 | 0 1 ... n-1 | n-1 n-2 ...
inline std::size_t reflect_half(long i, std::size_t n) {
  const long period = 2 * static_cast<long>(n);
  long m = i % period;
  if (m < 0) m += period;
  return static_cast<std::size_t>(m < static_cast<long>(n) ? m : period - 1 - m);
}

/// Rows of x gathered through an index list.
inline RealImage gather_rows(const RealImage& x, std::span<const std::size_t> idx) {
  RealImage out(x.width(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) std::ranges::copy(x.row(idx[i]), out.row(i).begin());
  return out;
}

/// 'valid' convolution down the columns: out[i] = sum_k h[k] x[i + m - 1 - k].
inline RealImage column_convolve(const RealImage& x, std::span<const double> h) {
  const std::size_t m = h.size();
  detail::require(x.height() >= m, "column_convolve: signal shorter than filter");
  RealImage out(x.width(), x.height() - m + 1);
  for (std::size_t i = 0; i < out.height(); ++i) {
    auto dst = out.row(i);
    for (std::size_t k = 0; k < m; ++k) {
      const double hk = h[k];
      auto src = x.row(i + m - 1 - k);
      for (std::size_t c = 0; c < dst.size(); ++c) dst[c] += hk * src[c];
    }
  }
  return out;
}

inline std::vector<std::size_t> reflected_range(long first, long last, std::size_t n) {
  std::vector<std::size_t> idx;
  idx.reserve(static_cast<std::size_t>(last - first));
  for (long i = first; i < last; ++i) idx.push_back(reflect_half(i, n));
  return idx;
}

inline std::vector<double> taps(std::span<const double> h, std::size_t start) {
  std::vector<double> out;
  for (std::size_t i = start; i < h.size(); i += 2) out.push_back(h[i]);
  return out;
}

inline void add_into(RealImage& a, const RealImage& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a.pixels()[i] += b.pixels()[i];
}

inline void scatter_rows(RealImage& dst, const RealImage& src, std::size_t first, std::size_t step) {
  for (std::size_t i = 0; i < src.height(); ++i)
    std::ranges::copy(src.row(i), dst.row(first + i * step).begin());
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

/// Odd-length filtering of columns without decimation; output has x's size.
inline RealImage colfilter(const RealImage& x, std::span<const double> h) {
  const long r = static_cast<long>(x.height());
  const long m2 = static_cast<long>(h.size() / 2);
  const auto xe = reflected_range(-m2, r + m2, x.height());
  return column_convolve(gather_rows(x, xe), h);
}

/// Decimating two-tree column filter for levels >= 2. x.height() % 4 == 0.
inline RealImage coldfilt(const RealImage& x, std::span<const double> ha,
                          std::span<const double> hb) {
  const long r = static_cast<long>(x.height());
  detail::require(r % 4 == 0, "coldfilt: row count must be a multiple of 4");
  const long m = static_cast<long>(ha.size());
  const auto xe = reflected_range(-m, r + m, x.height());
  const auto hao = taps(ha, 0), hae = taps(ha, 1), hbo = taps(hb, 0), hbe = taps(hb, 1);

  std::vector<long> t;
  for (long v = 5; v < r + 2 * m - 2; v += 4) t.push_back(v);
  auto pick = [&](long offset) {
    std::vector<std::size_t> idx;
    for (long v : t) idx.push_back(xe[static_cast<std::size_t>(v - offset)]);
    return gather_rows(x, idx);
  };

  RealImage ya = column_convolve(pick(1), hao);
  add_into(ya, column_convolve(pick(3), hae));
  RealImage yb = column_convolve(pick(0), hbo);
  add_into(yb, column_convolve(pick(2), hbe));

  RealImage y(x.width(), static_cast<std::size_t>(r / 2));
  const bool a_first = dot(ha, hb) > 0;
  scatter_rows(y, ya, a_first ? 0 : 1, 2);
  scatter_rows(y, yb, a_first ? 1 : 0, 2);
  return y;
}

/// Interpolating two-tree column filter, inverse of coldfilt. x.height() even.
inline RealImage colifilt(const RealImage& x, std::span<const double> ha,
                          std::span<const double> hb) {
  const long r = static_cast<long>(x.height());
  detail::require(r % 2 == 0, "colifilt: row count must be even");
  const long m = static_cast<long>(ha.size());
  const long m2 = m / 2;
  RealImage y(x.width(), static_cast<std::size_t>(2 * r));
  if (std::ranges::all_of(x.pixels(), [](double v) { return v == 0.0; })) return y;

  const auto xe = reflected_range(-m2, r + m2, x.height());
  const auto hao = taps(ha, 0), hae = taps(ha, 1), hbo = taps(hb, 0), hbe = taps(hb, 1);
  const bool a_first = dot(ha, hb) > 0;

  std::vector<long> t;
  if (m2 % 2 == 0) {
    for (long v = 3; v < r + m; v += 2) t.push_back(v);
  } else {
    for (long v = 2; v < r + m - 1; v += 2) t.push_back(v);
  }
  auto pick = [&](bool tree_a, long offset) {
    // ta = t, tb = t - 1 when the trees are in phase; swapped otherwise.
    const long shift = (tree_a == a_first) ? 0 : 1;
    std::vector<std::size_t> idx;
    for (long v : t) idx.push_back(xe[static_cast<std::size_t>(v - shift - offset)]);
    return gather_rows(x, idx);
  };

  if (m2 % 2 == 0) {
    scatter_rows(y, column_convolve(pick(false, 2), hae), 0, 4);
    scatter_rows(y, column_convolve(pick(true, 2), hbe), 1, 4);
    scatter_rows(y, column_convolve(pick(false, 0), hao), 2, 4);
    scatter_rows(y, column_convolve(pick(true, 0), hbo), 3, 4);
  } else {
    scatter_rows(y, column_convolve(pick(false, 0), hao), 0, 4);
    scatter_rows(y, column_convolve(pick(true, 0), hbo), 1, 4);
    scatter_rows(y, column_convolve(pick(false, 0), hae), 2, 4);
    scatter_rows(y, column_convolve(pick(true, 0), hbe), 3, 4);
  }
  return y;
}

/// Quads of real samples to the two complex subbands of one orientation pair.
inline std::pair<ComplexImage, ComplexImage> q2c(const RealImage& y) {
  const std::size_t h = y.height() / 2, w = y.width() / 2;
  const double s = std::sqrt(0.5);
  ComplexImage minus(w, h), plus(w, h);
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = 0; c < w; ++c) {
      const std::complex<double> p(y(2 * r, 2 * c) * s, y(2 * r, 2 * c + 1) * s);
      const std::complex<double> q(y(2 * r + 1, 2 * c + 1) * s, -y(2 * r + 1, 2 * c) * s);
      minus(r, c) = p - q;
      plus(r, c) = p + q;
    }
  return {std::move(minus), std::move(plus)};
}

inline RealImage c2q(const ComplexImage& w0, const ComplexImage& w1) {
  RealImage x(2 * w0.width(), 2 * w0.height());
  const double s = std::sqrt(0.5);
  for (std::size_t r = 0; r < w0.height(); ++r)
    for (std::size_t c = 0; c < w0.width(); ++c) {
      const std::complex<double> p = (w0(r, c) + w1(r, c)) * s;
      const std::complex<double> q = (w0(r, c) - w1(r, c)) * s;
      x(2 * r, 2 * c) = p.real();
      x(2 * r, 2 * c + 1) = p.imag();
      x(2 * r + 1, 2 * c) = q.imag();
      x(2 * r + 1, 2 * c + 1) = -q.real();
    }
  return x;
}

inline void store_pair(OrientedBands& bands, std::size_t a, std::size_t b, const RealImage& quads) {
  auto [minus, plus] = q2c(quads);
  bands[a] = std::move(minus);
  bands[b] = std::move(plus);
}

inline RealImage sum(RealImage a, const RealImage& b) {
  add_into(a, b);
  return a;
}

inline RealImage pad_to_multiple_of_4(RealImage x) {
  if (x.height() % 4 != 0) {
    RealImage e(x.width(), x.height() + 2);
    std::ranges::copy(x.row(0), e.row(0).begin());
    for (std::size_t r = 0; r < x.height(); ++r) std::ranges::copy(x.row(r), e.row(r + 1).begin());
    std::ranges::copy(x.row(x.height() - 1), e.row(x.height() + 1).begin());
    x = std::move(e);
  }
  if (x.width() % 4 != 0) x = transpose(pad_to_multiple_of_4(transpose(x)));
  return x;
}

}  // namespace detail

inline DtcwtPyramid dtcwt_forward(const RealImage& img, int levels = 3) {
  using namespace detail;
  namespace f = filters;
  if (levels < 1 || levels > kDtcwtMaxLevels)
    throw InputError("dtcwt: unsupported level count " + std::to_string(levels));
  if (img.empty()) throw InputError("empty input");

  // Odd sizes are made even by repeating the last row / column.
  RealImage x(img.width() + img.width() % 2, img.height() + img.height() % 2);
  for (std::size_t r = 0; r < x.height(); ++r)
    for (std::size_t c = 0; c < x.width(); ++c)
      x(r, c) = img(std::min(r, img.height() - 1), std::min(c, img.width() - 1));

  DtcwtPyramid out;
  out.width = img.width();
  out.height = img.height();
  out.highpass.resize(static_cast<std::size_t>(levels));

  RealImage lo = transpose(colfilter(x, f::near_sym_b_h0o));
  RealImage hi = transpose(colfilter(x, f::near_sym_b_h1o));
  RealImage lolo = transpose(colfilter(lo, f::near_sym_b_h0o));
  store_pair(out.highpass[0], 0, 5, transpose(colfilter(hi, f::near_sym_b_h0o)));
  store_pair(out.highpass[0], 2, 3, transpose(colfilter(lo, f::near_sym_b_h1o)));
  store_pair(out.highpass[0], 1, 4, transpose(colfilter(hi, f::near_sym_b_h1o)));

  for (int level = 1; level < levels; ++level) {
    lolo = pad_to_multiple_of_4(std::move(lolo));
    lo = transpose(coldfilt(lolo, f::qshift_b_h0b, f::qshift_b_h0a));
    hi = transpose(coldfilt(lolo, f::qshift_b_h1b, f::qshift_b_h1a));
    lolo = transpose(coldfilt(lo, f::qshift_b_h0b, f::qshift_b_h0a));
    auto& bands = out.highpass[static_cast<std::size_t>(level)];
    store_pair(bands, 0, 5, transpose(coldfilt(hi, f::qshift_b_h0b, f::qshift_b_h0a)));
    store_pair(bands, 2, 3, transpose(coldfilt(lo, f::qshift_b_h1b, f::qshift_b_h1a)));
    store_pair(bands, 1, 4, transpose(coldfilt(hi, f::qshift_b_h1b, f::qshift_b_h1a)));
  }
  out.lowpass = std::move(lolo);
  return out;
}

inline RealImage dtcwt_inverse(const DtcwtPyramid& p) {
  using namespace detail;
  namespace f = filters;
  if (p.highpass.empty()) throw InputError("dtcwt: pyramid has no levels");

  RealImage z = p.lowpass;
  for (std::size_t level = p.highpass.size(); level >= 2; --level) {
    const OrientedBands& b = p.highpass[level - 1];
    const RealImage lh = c2q(b[0], b[5]);
    const RealImage hl = c2q(b[2], b[3]);
    const RealImage hh = c2q(b[1], b[4]);
    const RealImage y1 = sum(colifilt(z, f::qshift_b_g0b, f::qshift_b_g0a),
                             colifilt(lh, f::qshift_b_g1b, f::qshift_b_g1a));
    const RealImage y2 = sum(colifilt(hl, f::qshift_b_g0b, f::qshift_b_g0a),
                             colifilt(hh, f::qshift_b_g1b, f::qshift_b_g1a));
    z = transpose(sum(colifilt(transpose(y1), f::qshift_b_g0b, f::qshift_b_g0a),
                      colifilt(transpose(y2), f::qshift_b_g1b, f::qshift_b_g1a)));

    // Undo the multiple-of-4 padding applied on the way down.
    const ComplexImage& finer = p.highpass[level - 2][0];
    const std::size_t want_h = 2 * finer.height(), want_w = 2 * finer.width();
    if (z.height() != want_h) z = crop(z, 1, 0, z.height() - 2, z.width());
    if (z.width() != want_w) z = crop(z, 0, 1, z.height(), z.width() - 2);
    if (z.height() != want_h || z.width() != want_w)
      throw InputError("dtcwt: highpass sizes are inconsistent");
  }

  const OrientedBands& b = p.highpass[0];
  const RealImage lh = c2q(b[0], b[5]);
  const RealImage hl = c2q(b[2], b[3]);
  const RealImage hh = c2q(b[1], b[4]);
  const RealImage y1 = sum(colfilter(z, f::near_sym_b_g0o), colfilter(lh, f::near_sym_b_g1o));
  const RealImage y2 = sum(colfilter(hl, f::near_sym_b_g0o), colfilter(hh, f::near_sym_b_g1o));
  z = transpose(sum(colfilter(transpose(y1), f::near_sym_b_g0o),
                    colfilter(transpose(y2), f::near_sym_b_g1o)));
  if (z.width() != p.width || z.height() != p.height) z = crop(z, 0, 0, p.height, p.width);
  return z;
}

}  // namespace glaucad

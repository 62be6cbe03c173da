#pragma once

// Sample statistics over spans of reals. Population (1/n) normalization
// throughout; higher standardized moments of (near) zero-variance data are 0.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "glaucad/error.hpp"

namespace glaucad::stats {

/// Exact for identical values, so constant data has exactly zero central moments.
inline double mean(std::span<const double> x) {
  if (x.empty()) throw InputError("empty input");
  double acc = 0.0;
  bool same = true;
  for (double v : x) {
    acc += v;
    same = same && v == x.front();
  }
  return same ? x.front() : acc / static_cast<double>(x.size());
}

/// k-th central moment.
inline double central_moment(std::span<const double> x, int k) {
  const double m = mean(x);
  double acc = 0.0;
  for (double v : x) acc += std::pow(v - m, k);
  return acc / static_cast<double>(x.size());
}

inline double variance(std::span<const double> x) { return central_moment(x, 2); }
inline double stddev(std::span<const double> x) { return std::sqrt(variance(x)); }

inline double rms(std::span<const double> x) {
  if (x.empty()) throw InputError("empty input");
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc / static_cast<double>(x.size()));
}

namespace detail {
/// Variance small enough to be rounding noise around a constant.
inline bool degenerate(std::span<const double> x, double m2) {
  const double m = mean(x);
  return m2 <= 1e-24 * std::max(1.0, m * m);
}
}  // namespace detail

/// Range within rounding noise of the magnitude of the values.
inline bool is_flat(std::span<const double> x, double rel = 1e-9) {
  if (x.empty()) return true;
  const auto [lo, hi] = std::ranges::minmax_element(x);
  return *hi - *lo <= rel * std::max({1.0, std::abs(*lo), std::abs(*hi)});
}

/// m3 / m2^1.5
inline double skewness(std::span<const double> x) {
  const double m2 = central_moment(x, 2);
  if (detail::degenerate(x, m2)) return 0.0;
  return central_moment(x, 3) / std::pow(m2, 1.5);
}

/// m4 / m2^2 (normal data gives 3).
inline double kurtosis(std::span<const double> x) {
  const double m2 = central_moment(x, 2);
  if (detail::degenerate(x, m2)) return 0.0;
  return central_moment(x, 4) / (m2 * m2);
}

/// Shannon entropy (bits) of a histogram of non-negative weights.
inline double entropy_of(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0)) return 0.0;
  double h = 0.0;
  for (double w : weights)
    if (w > 0) {
      const double p = w / total;
      h -= p * std::log2(p);
    }
  return h;
}

/// Entropy of the `bins`-bin histogram of x over [min(x), max(x)].
inline double histogram_entropy(std::span<const double> x, std::size_t bins = 256) {
  if (x.empty()) throw InputError("empty input");
  const auto [lo_it, hi_it] = std::ranges::minmax_element(x);
  const double lo = *lo_it, hi = *hi_it;
  if (!(hi > lo)) return 0.0;
  std::vector<double> h(bins, 0.0);
  for (double v : x) {
    auto b = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins));
    ++h[std::min(b, bins - 1)];
  }
  return entropy_of(h);
}

/// Quantile q in [0,1] with linear interpolation between order statistics.
inline double quantile(std::span<const double> x, double q) {
  if (x.empty()) throw InputError("empty input");
  if (!(q >= 0 && q <= 1)) throw InputError("quantile must lie in [0,1]");
  std::vector<double> s(x.begin(), x.end());
  std::ranges::sort(s);
  const double pos = q * static_cast<double>(s.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(i);
  if (i + 1 >= s.size()) return s.back();
  return s[i] + frac * (s[i + 1] - s[i]);
}

}  // namespace glaucad::stats

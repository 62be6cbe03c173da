#pragma once

// Mother wavelets used as WNN activations, each with its derivative.
//
//   MexicanHat  (1 - x^2) e^{-x^2/2}
//   Morlet      cos(5x) e^{-x^2/2}
//   Gaussian    -x e^{-x^2/2}                (first derivative of a Gaussian)
//   Shannon     sinc(x/2) cos(3 pi x / 2)
//   Haar        1 on [0, 1/2), -1 on [1/2, 1), 0 elsewhere
//   Meyer       inverse Fourier integral of the Meyer spectrum (quadrature)
//   GGW         (1 - |x|^3) e^{-|x|^3/3}     (p = 3 member of the
//               (1 - |x|^p) e^{-|x|^p/p} family; p = 2 is the Mexican hat)

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "glaucad/error.hpp"

namespace glaucad {

enum class WaveletKind { MexicanHat, Morlet, Gaussian, Meyer, GGW, Shannon, Haar };

inline constexpr std::array<WaveletKind, 7> kAllWavelets{
    WaveletKind::MexicanHat, WaveletKind::Morlet, WaveletKind::Gaussian, WaveletKind::Meyer,
    WaveletKind::GGW,        WaveletKind::Shannon, WaveletKind::Haar};

inline std::string_view to_string(WaveletKind k) {
  switch (k) {
    case WaveletKind::MexicanHat: return "mexican_hat";
    case WaveletKind::Morlet: return "morlet";
    case WaveletKind::Gaussian: return "gaussian";
    case WaveletKind::Meyer: return "meyer";
    case WaveletKind::GGW: return "ggw";
    case WaveletKind::Shannon: return "shannon";
    case WaveletKind::Haar: return "haar";
  }
  return "?";
}

inline WaveletKind parse_wavelet(std::string_view s) {
  for (WaveletKind k : kAllWavelets)
    if (to_string(k) == s) return k;
  throw InputError("unknown wavelet '" + std::string(s) + "'");
}

struct WaveletValue {
  double value, derivative;
};

namespace detail {

inline double meyer_nu(double x) {
  if (x <= 0) return 0.0;
  if (x >= 1) return 1.0;
  return x * x * x * x * (35 - 84 * x + 70 * x * x - 20 * x * x * x);
}

/// Magnitude of the Meyer spectrum at w > 0.
inline double meyer_spectrum(double w) {
  constexpr double pi = std::numbers::pi;
  if (w < 2 * pi / 3 || w > 8 * pi / 3) return 0.0;
  if (w <= 4 * pi / 3) return std::sin(pi / 2 * meyer_nu(3 * w / (2 * pi) - 1));
  return std::cos(pi / 2 * meyer_nu(3 * w / (4 * pi) - 1));
}

// 8-point Gauss-Legendre nodes and weights on [-1, 1].
inline constexpr std::array<double, 8> kGlNodes{-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                                -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                                0.7966664774136267,  0.9602898564975363};
inline constexpr std::array<double, 8> kGlWeights{0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                                  0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                                  0.2223810344533745, 0.1012285362903763};

/// psi(t) = (1/pi) int |Psi(w)| cos(w (t - 1/2)) dw over the support, and its t-derivative.
inline WaveletValue meyer(double t) {
  constexpr double pi = std::numbers::pi;
  constexpr int panels = 48;
  const double s = t - 0.5;
  double v = 0.0, dv = 0.0;
  // Integrate each smooth piece separately.
  for (auto [lo, hi] : {std::array{2 * pi / 3, 4 * pi / 3}, std::array{4 * pi / 3, 8 * pi / 3}}) {
    const double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = lo + (p + 0.5) * h;
      for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
        const double w = mid + 0.5 * h * kGlNodes[i];
        const double f = meyer_spectrum(w) * kGlWeights[i] * 0.5 * h;
        v += f * std::cos(w * s);
        dv -= f * w * std::sin(w * s);
      }
    }
  }
  return {v / pi, dv / pi};
}

inline double sinc(double u) {
  const double x = std::numbers::pi * u;
  if (std::abs(x) < 1e-4) return 1 - x * x / 6 + x * x * x * x / 120;
  return std::sin(x) / x;
}

inline double sinc_derivative(double u) {
  constexpr double pi = std::numbers::pi;
  if (std::abs(pi * u) < 1e-4) return -pi * pi * u / 3 + pi * pi * pi * pi * u * u * u / 30;
  return (std::cos(pi * u) - sinc(u)) / u;
}

}  // namespace detail

inline WaveletValue mother_wavelet_eval(WaveletKind kind, double x) {
  constexpr double pi = std::numbers::pi;
  switch (kind) {
    case WaveletKind::MexicanHat: {
      const double e = std::exp(-x * x / 2);
      return {(1 - x * x) * e, (x * x * x - 3 * x) * e};
    }
    case WaveletKind::Morlet: {
      const double e = std::exp(-x * x / 2);
      return {std::cos(5 * x) * e, (-5 * std::sin(5 * x) - x * std::cos(5 * x)) * e};
    }
    case WaveletKind::Gaussian: {
      const double e = std::exp(-x * x / 2);
      return {-x * e, (x * x - 1) * e};
    }
    case WaveletKind::Shannon: {
      const double s = detail::sinc(x / 2), ds = 0.5 * detail::sinc_derivative(x / 2);
      const double c = std::cos(1.5 * pi * x), dc = -1.5 * pi * std::sin(1.5 * pi * x);
      return {s * c, ds * c + s * dc};
    }
    case WaveletKind::Haar:
      if (x >= 0 && x < 0.5) return {1.0, 0.0};
      if (x >= 0.5 && x < 1) return {-1.0, 0.0};
      return {0.0, 0.0};
    case WaveletKind::Meyer: return detail::meyer(x);
    case WaveletKind::GGW: {
      const double a = std::abs(x), a3 = a * a * a, e = std::exp(-a3 / 3);
      const double d = -a * a * e * (4 - a3);
      return {(1 - a3) * e, x < 0 ? -d : d};
    }
  }
  return {0.0, 0.0};
}

inline double mother_wavelet(WaveletKind kind, double x) { return mother_wavelet_eval(kind, x).value; }

}  // namespace glaucad

#pragma once

// Thin FFTW wrapper. Plans are built with FFTW_ESTIMATE (deterministic, no
// timing measurements); planner calls are serialized because FFTW's planner
// is not thread-safe, execution is not.

#include <fftw3.h>

#include <complex>
#include <memory>
#include <mutex>
#include <vector>

#include "glaucad/raster.hpp"

namespace glaucad {

namespace detail {

inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  fftw_complex* data;
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (!data) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
};

inline std::vector<std::complex<double>> run_dft(std::vector<std::complex<double>> values,
                                                 int rows, int cols, int sign) {
  const std::size_t n = values.size();
  FftwBuffer buf(n);
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = rows == 1 ? fftw_plan_dft_1d(cols, buf.data, buf.data, sign, FFTW_ESTIMATE)
                     : fftw_plan_dft_2d(rows, cols, buf.data, buf.data, sign, FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < n; ++i) {
    buf.data[i][0] = values[i].real();
    buf.data[i][1] = values[i].imag();
  }
  fftw_execute(plan);
  for (std::size_t i = 0; i < n; ++i) values[i] = {buf.data[i][0], buf.data[i][1]};
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  return values;
}

}  // namespace detail

/// Unnormalized forward DFT of a 1-D sequence.
inline std::vector<std::complex<double>> fft(std::vector<std::complex<double>> x) {
  if (x.empty()) return x;
  const int n = static_cast<int>(x.size());
  return detail::run_dft(std::move(x), 1, n, FFTW_FORWARD);
}

/// Unnormalized forward 2-D DFT.
inline ComplexImage fft2(const ComplexImage& img) {
  std::vector<std::complex<double>> v(img.pixels().begin(), img.pixels().end());
  v = detail::run_dft(std::move(v), static_cast<int>(img.height()), static_cast<int>(img.width()),
                      FFTW_FORWARD);
  return ComplexImage(img.width(), img.height(), std::move(v));
}

/// Normalized inverse 2-D DFT (ifft2(fft2(x)) == x).
inline ComplexImage ifft2(const ComplexImage& spec) {
  std::vector<std::complex<double>> v(spec.pixels().begin(), spec.pixels().end());
  v = detail::run_dft(std::move(v), static_cast<int>(spec.height()),
                      static_cast<int>(spec.width()), FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(v.size());
  for (auto& z : v) z *= scale;
  return ComplexImage(spec.width(), spec.height(), std::move(v));
}

}  // namespace glaucad

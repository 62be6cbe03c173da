#pragma once

// Flat grayscale morphology with arbitrary binary structuring elements.
// Pixels outside the image are ignored (min/max over in-bounds neighbors
// only), so opening <= image <= closing holds up to the border.

#include <algorithm>
#include <limits>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "glaucad/raster.hpp"

namespace glaucad {

/// (dr, dc) displacement from the element origin.
struct Offset {
  long dr = 0, dc = 0;
  auto operator<=>(const Offset&) const = default;
};

enum class SeShape { Square, Cross, Disc };

inline SeShape parse_se_shape(std::string_view s) {
  if (s == "square") return SeShape::Square;
  if (s == "cross") return SeShape::Cross;
  if (s == "disc") return SeShape::Disc;
  throw InputError("unknown structuring element shape '" + std::string(s) + "'");
}

inline std::string_view to_string(SeShape s) {
  switch (s) {
    case SeShape::Square: return "square";
    case SeShape::Cross: return "cross";
    case SeShape::Disc: return "disc";
  }
  return "?";
}

/// Binary mask with an origin. The mask is stored as its sorted set of
/// offsets; the bounding box gives the mask raster.
class StructuringElement {
 public:
  StructuringElement() = default;

  explicit StructuringElement(std::vector<Offset> offsets) : offsets_(std::move(offsets)) {
    std::ranges::sort(offsets_);
    offsets_.erase(std::unique(offsets_.begin(), offsets_.end()), offsets_.end());
    if (offsets_.empty()) throw InputError("structuring element mask is empty");
    if (!std::ranges::binary_search(offsets_, Offset{0, 0}))
      throw InputError("structuring element origin lies outside its mask");
  }

  /// Mask raster plus origin (row, col) inside it.
  StructuringElement(const GrayImage& mask, std::size_t origin_row, std::size_t origin_col) {
    std::vector<Offset> offs;
    for (std::size_t r = 0; r < mask.height(); ++r)
      for (std::size_t c = 0; c < mask.width(); ++c)
        if (mask(r, c))
          offs.push_back({static_cast<long>(r) - static_cast<long>(origin_row),
                          static_cast<long>(c) - static_cast<long>(origin_col)});
    *this = StructuringElement(std::move(offs));
  }

  static StructuringElement square(int radius = 1) { return from_predicate(radius, [](long, long) { return true; }); }
  static StructuringElement cross(int radius = 1) {
    return from_predicate(radius, [](long r, long c) { return r == 0 || c == 0; });
  }
  static StructuringElement disc(int radius = 1) {
    return from_predicate(radius, [radius](long r, long c) { return r * r + c * c <= radius * radius; });
  }
  static StructuringElement of_shape(SeShape s) {
    switch (s) {
      case SeShape::Cross: return cross();
      case SeShape::Disc: return disc();
      case SeShape::Square: break;
    }
    return square();
  }

  const std::vector<Offset>& offsets() const noexcept { return offsets_; }

  long min_dr() const { return std::ranges::min(offsets_, {}, &Offset::dr).dr; }
  long max_dr() const { return std::ranges::max(offsets_, {}, &Offset::dr).dr; }
  long min_dc() const { return std::ranges::min(offsets_, {}, &Offset::dc).dc; }
  long max_dc() const { return std::ranges::max(offsets_, {}, &Offset::dc).dc; }
  std::size_t height() const { return static_cast<std::size_t>(max_dr() - min_dr() + 1); }
  std::size_t width() const { return static_cast<std::size_t>(max_dc() - min_dc() + 1); }

  GrayImage mask() const {
    GrayImage m(width(), height());
    for (const Offset& o : offsets_)
      m(static_cast<std::size_t>(o.dr - min_dr()), static_cast<std::size_t>(o.dc - min_dc())) = 1;
    return m;
  }

  bool contains(const StructuringElement& other) const {
    return std::ranges::includes(offsets_, other.offsets_);
  }

  friend bool operator==(const StructuringElement&, const StructuringElement&) = default;

 private:
  template <typename Pred>
  static StructuringElement from_predicate(int radius, Pred keep) {
    if (radius < 0) throw InputError("structuring element radius must be >= 0");
    std::vector<Offset> offs;
    for (long r = -radius; r <= radius; ++r)
      for (long c = -radius; c <= radius; ++c)
        if (keep(r, c)) offs.push_back({r, c});
    return StructuringElement(std::move(offs));
  }

  std::vector<Offset> offsets_;
};

/// Minkowski sum a (+) b.
inline StructuringElement minkowski_sum(const StructuringElement& a, const StructuringElement& b) {
  std::set<Offset> sum;
  for (const Offset& p : a.offsets())
    for (const Offset& q : b.offsets()) sum.insert({p.dr + q.dr, p.dc + q.dc});
  return StructuringElement(std::vector<Offset>(sum.begin(), sum.end()));
}

/// se0 (+) se0 (+) ... (+) se0, t copies.
inline StructuringElement dilate_chain(const StructuringElement& se0, int t) {
  if (t < 1) throw InputError("dilate_chain: t must be >= 1");
  StructuringElement out = se0;
  for (int i = 1; i < t; ++i) out = minkowski_sum(out, se0);
  return out;
}

inline bool se_fits(const StructuringElement& se, std::size_t width, std::size_t height) {
  return se.width() <= width && se.height() <= height;
}

namespace detail {

inline void require_fit(const StructuringElement& se, const RealImage& img) {
  if (img.empty()) throw InputError("empty input");
  if (!se_fits(se, img.width(), img.height()))
    throw InputError("structuring element larger than image");
}

// sign = +1: f(x + b) (erosion); sign = -1: f(x - b) (dilation).
template <typename Pick>
RealImage flat_filter(const RealImage& f, const StructuringElement& se, long sign, double init, Pick pick) {
  const long h = static_cast<long>(f.height()), w = static_cast<long>(f.width());
  RealImage out(f.width(), f.height());
  for (long r = 0; r < h; ++r)
    for (long c = 0; c < w; ++c) {
      double acc = init;
      for (const Offset& o : se.offsets()) {
        const long rr = r + sign * o.dr, cc = c + sign * o.dc;
        if (rr < 0 || rr >= h || cc < 0 || cc >= w) continue;
        acc = pick(acc, f(static_cast<std::size_t>(rr), static_cast<std::size_t>(cc)));
      }
      out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = acc;
    }
  return out;
}

}  // namespace detail

inline RealImage erode(const RealImage& f, const StructuringElement& se) {
  detail::require_fit(se, f);
  return detail::flat_filter(f, se, +1, std::numeric_limits<double>::infinity(),
                             [](double a, double b) { return std::min(a, b); });
}

inline RealImage dilate(const RealImage& f, const StructuringElement& se) {
  detail::require_fit(se, f);
  return detail::flat_filter(f, se, -1, -std::numeric_limits<double>::infinity(),
                             [](double a, double b) { return std::max(a, b); });
}

inline RealImage opening(const RealImage& f, const StructuringElement& se) { return dilate(erode(f, se), se); }
inline RealImage closing(const RealImage& f, const StructuringElement& se) { return erode(dilate(f, se), se); }

/// f - (f o se), element-wise >= 0.
inline RealImage tophat_white(const RealImage& f, const StructuringElement& se) {
  RealImage out = opening(f, se);
  for (std::size_t i = 0; i < out.size(); ++i) out.pixels()[i] = f.pixels()[i] - out.pixels()[i];
  return out;
}

/// (f . se) - f, element-wise >= 0.
inline RealImage tophat_black(const RealImage& f, const StructuringElement& se) {
  RealImage out = closing(f, se);
  for (std::size_t i = 0; i < out.size(); ++i) out.pixels()[i] -= f.pixels()[i];
  return out;
}

}  // namespace glaucad

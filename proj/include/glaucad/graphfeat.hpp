#pragma once

// Graph-based texture features: symmetric local graph structures (LGS) and
// block-wise graph shortest path (GSP) statistics.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "glaucad/moments.hpp"
#include "glaucad/raster.hpp"

namespace glaucad {

// ----------------------------------------------------------------- LGS

/// One directed comparison: bit = 0 when I(from) > I(to), else 1.
/// Positions are (dr, dc) relative to the current pixel.
struct LgsEdge {
  std::array<int, 2> from, to;
};

/// P = 6 bits per pattern. Left/right pattern: left region walked from the
/// current pixel to the immediate left neighbour, up-left, then down-left
/// (bits 0..2), then the mirrored walk on the right (bits 3..5).
/// Top/bottom is the same walk rotated: top region bits 0..2, bottom 3..5.
inline constexpr int kLgsBits = 6;
inline constexpr std::array<LgsEdge, kLgsBits> kLgsLeftRight{{
    {{0, 0}, {0, -1}},
    {{0, -1}, {-1, -2}},
    {{-1, -2}, {1, -2}},
    {{0, 0}, {0, 1}},
    {{0, 1}, {-1, 2}},
    {{-1, 2}, {1, 2}},
}};
inline constexpr std::array<LgsEdge, kLgsBits> kLgsTopBottom{{
    {{0, 0}, {-1, 0}},
    {{-1, 0}, {-2, 1}},
    {{-2, 1}, {-2, -1}},
    {{0, 0}, {1, 0}},
    {{1, 0}, {2, 1}},
    {{2, 1}, {2, -1}},
}};
inline constexpr int kLgsMinSide = 5;
/// Largest possible NRP_Final, sqrt(2) (2^P - 1).
inline const double kLgsMaxValue = std::sqrt(2.0 * ((1 << kLgsBits) - 1) * ((1 << kLgsBits) - 1));

namespace detail {

inline double replicate_at(const RealImage& img, long r, long c) {
  r = std::clamp(r, 0L, static_cast<long>(img.height()) - 1);
  c = std::clamp(c, 0L, static_cast<long>(img.width()) - 1);
  return img(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
}

inline int lgs_pattern(const RealImage& img, long r, long c, const std::array<LgsEdge, kLgsBits>& edges) {
  int value = 0;
  for (int p = 0; p < kLgsBits; ++p) {
    const LgsEdge& e = edges[static_cast<std::size_t>(p)];
    const double a = replicate_at(img, r + e.from[0], c + e.from[1]);
    const double b = replicate_at(img, r + e.to[0], c + e.to[1]);
    if (!(a > b)) value |= 1 << p;
  }
  return value;
}

}  // namespace detail

/// NRP_Final = sqrt(NRP_LR^2 + NRP_TB^2) per pixel; replicate padding at the border.
inline RealImage lgs_transform(const RealImage& img) {
  if (img.width() < kLgsMinSide || img.height() < kLgsMinSide)
    throw InputError("lgs: image must be at least 5x5");
  RealImage out(img.width(), img.height());
  for (long r = 0; r < static_cast<long>(img.height()); ++r)
    for (long c = 0; c < static_cast<long>(img.width()); ++c) {
      const double lr = detail::lgs_pattern(img, r, c, kLgsLeftRight);
      const double tb = detail::lgs_pattern(img, r, c, kLgsTopBottom);
      out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = std::sqrt(lr * lr + tb * tb);
    }
  return out;
}

inline RealImage lgs_transform(const GrayImage& img) { return lgs_transform(to_real(img)); }

struct LgsFeatures {
  double mean = 0, variance = 0, skewness = 0, kurtosis = 0, energy = 0, entropy = 0;
};

/// Moments of the NRP raster; energy and entropy use values scaled by the
/// largest possible NRP so both are in [0,1] and [0,8] respectively.
inline LgsFeatures lgs_features(const RealImage& lgs) {
  if (lgs.empty()) throw InputError("empty input");
  const auto x = lgs.pixels();
  LgsFeatures f;
  f.mean = stats::mean(x);
  f.variance = stats::variance(x);
  f.skewness = stats::skewness(x);
  f.kurtosis = stats::kurtosis(x);
  std::vector<double> hist(256, 0.0);
  double energy = 0.0;
  for (double v : x) {
    const double u = std::clamp(v / kLgsMaxValue, 0.0, 1.0);
    energy += u * u;
    ++hist[std::min<std::size_t>(255, static_cast<std::size_t>(u * 256.0))];
  }
  f.energy = energy / static_cast<double>(x.size());
  f.entropy = stats::entropy_of(hist);
  return f;
}

// ---------------------------------------------------------- pixel graph

/// Undirected weighted graph over the pixels of a block; vertex id = r * width + c.
class PixelGraph {
 public:
  struct Edge {
    std::size_t to;
    double weight;
  };

  PixelGraph(const RealImage& block, int t_e) : width_(block.width()), height_(block.height()) {
    if (block.empty()) throw InputError("empty block");
    if (t_e < 1) throw InputError("gsp.t_e must be >= 1");
    intensity_.assign(block.pixels().begin(), block.pixels().end());
    adj_.resize(block.size());
    const long h = static_cast<long>(height_), w = static_cast<long>(width_), t = t_e;
    for (long r = 0; r < h; ++r)
      for (long c = 0; c < w; ++c)
        for (long dr = -t; dr <= t; ++dr)
          for (long dc = -t; dc <= t; ++dc) {
            if (std::max(std::abs(dr), std::abs(dc)) != t) continue;
            const long r2 = r + dr, c2 = c + dc;
            if (r2 < 0 || r2 >= h || c2 < 0 || c2 >= w) continue;
            const std::size_t u = id(r, c), v = id(r2, c2);
            adj_[u].push_back({v, edge_weight(intensity_[u], intensity_[v])});
          }
  }

  /// |a - b| + (a + b) / 2
  static double edge_weight(double a, double b) { return std::abs(a - b) + (a + b) / 2.0; }

  std::size_t vertex_count() const noexcept { return intensity_.size(); }
  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t id(long r, long c) const { return static_cast<std::size_t>(r) * width_ + static_cast<std::size_t>(c); }
  double intensity(std::size_t v) const { return intensity_[v]; }
  const std::vector<Edge>& neighbors(std::size_t v) const { return adj_[v]; }
  std::size_t degree(std::size_t v) const { return adj_[v].size(); }

  double weight(std::size_t u, std::size_t v) const {
    for (const Edge& e : adj_[u])
      if (e.to == v) return e.weight;
    return std::numeric_limits<double>::infinity();
  }

 private:
  std::size_t width_, height_;
  std::vector<double> intensity_;
  std::vector<std::vector<Edge>> adj_;
};

inline PixelGraph build_block_graph(const RealImage& block, int t_e = 1) { return PixelGraph(block, t_e); }

struct ShortestPath {
  std::vector<std::size_t> vertices;  ///< source first
  double cost = 0.0;
};

/// Dijkstra with a binary heap. Among equal-cost relaxations the smaller
/// predecessor id wins, so paths are reproducible.
inline ShortestPath shortest_path(const PixelGraph& g, std::size_t s, std::size_t d) {
  const std::size_t n = g.vertex_count();
  if (s >= n || d >= n) throw InputError("shortest_path: vertex out of range");
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> pred(n, kNone);
  std::vector<bool> done(n, false);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[s] = 0.0;
  heap.push({0.0, s});
  while (!heap.empty()) {
    const auto [du, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = true;
    if (u == d) break;
    for (const auto& e : g.neighbors(u)) {
      if (done[e.to]) continue;
      const double cand = du + e.weight;
      if (cand < dist[e.to] || (cand == dist[e.to] && u < pred[e.to])) {
        const bool improved = cand < dist[e.to];
        dist[e.to] = cand;
        pred[e.to] = u;
        if (improved) heap.push({cand, e.to});
      }
    }
  }
  if (!done[d]) throw NumericError("shortest_path: destination unreachable");
  ShortestPath out;
  out.cost = dist[d];
  for (std::size_t v = d; v != kNone; v = pred[v]) out.vertices.push_back(v);
  std::ranges::reverse(out.vertices);
  return out;
}

// ----------------------------------------------------------------- GSP

struct GspConfig {
  int grid = 4;  ///< blocks per side; grid * grid blocks
  int t_e = 1;

  void validate() const {
    if (grid < 1) throw InputError("gsp.grid must be >= 1");
    if (t_e != 1) throw InputError("gsp.t_e other than 1 is not supported");
  }
};

inline constexpr std::array<int, 4> kGspDirections{0, 45, 90, 135};
inline constexpr std::size_t kGspStatsPerDirection = 7;
inline constexpr std::size_t kGspFeatureCount = kGspDirections.size() * kGspStatsPerDirection;

/// Block starts along one axis: equal sizes, the last block absorbs the remainder.
inline std::vector<std::size_t> block_starts(std::size_t n, int blocks) {
  std::vector<std::size_t> s;
  const std::size_t size = n / static_cast<std::size_t>(blocks);
  for (int i = 0; i <= blocks; ++i) s.push_back(i == blocks ? n : size * static_cast<std::size_t>(i));
  return s;
}

/// Source and destination pixel (row, col) of the path at `direction` in an h x w block.
inline std::array<std::array<long, 2>, 2> gsp_endpoints(int direction, std::size_t h, std::size_t w) {
  const long H = static_cast<long>(h) - 1, W = static_cast<long>(w) - 1;
  switch (direction) {
    case 0: return {{{H / 2, 0}, {H / 2, W}}};
    case 45: return {{{H, 0}, {0, W}}};
    case 90: return {{{0, W / 2}, {H, W / 2}}};
    case 135: return {{{0, 0}, {H, W}}};
    default: throw InputError("gsp: unsupported direction");
  }
}

struct GspPaths {
  /// means[d][b]: intensity mean of the direction-d path in block b (row-major blocks).
  std::array<std::vector<double>, 4> means;
  /// paths[d][b]: the path as image (row, col) pairs.
  std::array<std::vector<std::vector<std::array<std::size_t, 2>>>, 4> paths;
};

inline GspPaths gsp_paths(const RealImage& img, const GspConfig& cfg = {}) {
  cfg.validate();
  if (img.empty()) throw InputError("empty input");
  if (img.width() < static_cast<std::size_t>(cfg.grid) || img.height() < static_cast<std::size_t>(cfg.grid))
    throw InputError("gsp: image smaller than the block grid");
  if (cfg.grid * cfg.grid < 2) throw InputError("gsp: image must split into at least 2 blocks");
  const auto rows = block_starts(img.height(), cfg.grid), cols = block_starts(img.width(), cfg.grid);
  GspPaths out;
  for (int br = 0; br < cfg.grid; ++br)
    for (int bc = 0; bc < cfg.grid; ++bc) {
      const std::size_t r0 = rows[static_cast<std::size_t>(br)], c0 = cols[static_cast<std::size_t>(bc)];
      const std::size_t bh = rows[static_cast<std::size_t>(br) + 1] - r0, bw = cols[static_cast<std::size_t>(bc) + 1] - c0;
      const RealImage block = crop(img, r0, c0, bh, bw);
      const PixelGraph g(block, cfg.t_e);
      for (std::size_t d = 0; d < kGspDirections.size(); ++d) {
        const auto [src, dst] = gsp_endpoints(kGspDirections[d], bh, bw);
        const ShortestPath p = shortest_path(g, g.id(src[0], src[1]), g.id(dst[0], dst[1]));
        double acc = 0.0;
        std::vector<std::array<std::size_t, 2>> coords;
        for (std::size_t v : p.vertices) {
          acc += g.intensity(v);
          coords.push_back({r0 + v / bw, c0 + v % bw});
        }
        out.means[d].push_back(acc / static_cast<double>(p.vertices.size()));
        out.paths[d].push_back(std::move(coords));
      }
    }
  return out;
}

/// Per direction (0, 45, 90, 135): kurtosis, skewness, SD, Q25, Q50, Q75, Q100
/// of the block path means.
inline std::array<double, kGspFeatureCount> gsp_features(const RealImage& img, const GspConfig& cfg = {}) {
  const GspPaths paths = gsp_paths(img, cfg);
  std::array<double, kGspFeatureCount> out{};
  for (std::size_t d = 0; d < kGspDirections.size(); ++d) {
    const auto& m = paths.means[d];
    double* f = out.data() + d * kGspStatsPerDirection;
    f[0] = stats::kurtosis(m);
    f[1] = stats::skewness(m);
    f[2] = stats::stddev(m);
    f[3] = stats::quantile(m, 0.25);
    f[4] = stats::quantile(m, 0.50);
    f[5] = stats::quantile(m, 0.75);
    f[6] = stats::quantile(m, 1.00);
  }
  return out;
}

inline std::array<double, kGspFeatureCount> gsp_features(const GrayImage& img, const GspConfig& cfg = {}) {
  return gsp_features(to_real(img), cfg);
}

}  // namespace glaucad

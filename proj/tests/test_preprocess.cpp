#include <gtest/gtest.h>

#include "glaucad/preprocess.hpp"
#include "glaucad/synthetic.hpp"
#include "test_util.hpp"

using namespace glaucad;

namespace {

CdfTable random_cdf(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  RealHistogram h(std::vector<double>(256));
  for (double& b : h.bins) b = u(rng) < 0.3 ? 0.0 : u(rng);
  h.bins[0] += 1e-3;
  return normalized_cdf(h);
}

}  // namespace

TEST(Blend, ToyAndEndpoints) {
  BasicHistogram<double> h(std::vector<double>{4, 0, 0, 0});
  EXPECT_EQ(blend_histogram(h, 0.5).bins, (std::vector<double>{2.5, 0.5, 0.5, 0.5}));
  EXPECT_EQ(blend_histogram(h, 1.0).bins, h.bins);
  EXPECT_EQ(blend_histogram(h, 0.0).bins, (std::vector<double>{1, 1, 1, 1}));
  EXPECT_THROW(blend_histogram(h, 1.1), InputError);
  EXPECT_THROW(blend_histogram(h, -0.1), InputError);
}

TEST(Qrtm, IdentityEndpointsAndValue) {
  std::mt19937_64 rng(1);
  const CdfTable cdf = random_cdf(rng);
  EXPECT_EQ(qrtm_transform(cdf, 0.0).values, cdf.values);
  CdfTable half{{0.5, 1.0}};
  EXPECT_DOUBLE_EQ(qrtm_transform(half, 1.0)[0], 0.75);
  for (double d : {-1.0, -0.3, 0.7, 1.0}) EXPECT_DOUBLE_EQ(qrtm_transform(half, d)[1], 1.0);
  EXPECT_THROW(qrtm_transform(half, 1.01), InputError);
}

TEST(Qrtm, PreservesMonotonicity) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ud(-1, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const CdfTable t = qrtm_transform(random_cdf(rng), ud(rng));
    for (std::size_t i = 1; i < t.levels(); ++i) ASSERT_LE(t[i - 1], t[i]);
    EXPECT_GE(t[0], 0.0);
    EXPECT_DOUBLE_EQ(t[255], 1.0);
  }
}

TEST(AdaptiveGamma, Examples) {
  CdfTable zero{std::vector<double>(256, 0.0)};
  GrayImage g(3, 1);
  g(0, 0) = 128;
  g(0, 1) = 0;
  g(0, 2) = 7;
  GrayImage out = adaptive_gamma(g, zero);
  EXPECT_EQ(out(0, 0), 128);
  EXPECT_EQ(out(0, 1), 0);
  CdfTable one{std::vector<double>(256, 1.0)};
  out = adaptive_gamma(g, one);
  EXPECT_EQ(out(0, 0), 255);
  EXPECT_EQ(out(0, 1), 0);
  EXPECT_EQ(out(0, 2), 255);
}

TEST(AdaptiveGamma, Monotone) {
  std::mt19937_64 rng(3);
  GrayImage ramp(256, 1);
  for (int i = 0; i < 256; ++i) ramp(0, i) = static_cast<std::uint8_t>(i);
  for (int trial = 0; trial < 50; ++trial) {
    const GrayImage out = adaptive_gamma(ramp, random_cdf(rng));
    for (int i = 1; i < 256; ++i) ASSERT_LE(out(0, i - 1), out(0, i));
  }
}

TEST(ColorRestore, Blend) {
  GrayImage a(1, 1, 200), b(1, 1, 100);
  EXPECT_EQ(color_restore(a, b, 0.5)(0, 0), 150);
  EXPECT_EQ(color_restore(a, b, 1.0)(0, 0), 200);
  EXPECT_EQ(color_restore(a, b, 0.0)(0, 0), 100);
  EXPECT_THROW(color_restore(a, GrayImage(2, 1), 0.5), InputError);
}

TEST(QuantileEqualize, Examples) {
  GrayImage two(20, 1);
  for (int i = 0; i < 20; ++i) two(0, i) = i < 10 ? 0 : 255;
  EXPECT_TRUE(std::ranges::equal(quantile_equalize(two, 2).pixels(), two.pixels()));
  GrayImage flat(5, 5, 77);
  EXPECT_TRUE(std::ranges::equal(quantile_equalize(flat, 4).pixels(), flat.pixels()));
  EXPECT_THROW(quantile_equalize(flat, 0), InputError);
}

TEST(QuantileEqualize, SingleSegmentIsRangeEqualization) {
  std::mt19937_64 rng(4);
  const GrayImage g = test::random_gray(16, 16, rng, 40, 180);
  const Histogram h = compute_histogram(g);
  const CdfTable cdf = normalized_cdf(h);
  int lo = 0, hi = 255;
  while (h.bins[lo] == 0) ++lo;
  while (h.bins[hi] == 0) --hi;
  const GrayImage out = quantile_equalize(g, 1);
  for (std::size_t i = 0; i < g.size(); ++i)
    EXPECT_EQ(out.pixels()[i], clamp_to_intensity(lo + (hi - lo) * cdf[g.pixels()[i]]));
}

TEST(QuantileEqualize, NeverCrossesSubRanges) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> tdist(1, 8), occupancy(1, 256), count(0, 50);
  for (int trial = 0; trial < 1000; ++trial) {
    const int t = tdist(rng);
    const int occupied = occupancy(rng);
    std::vector<std::uint8_t> pixels;
    for (int level = 0; level < 256; ++level)
      if (static_cast<int>(rng() % 256) < occupied)
        pixels.insert(pixels.end(), static_cast<std::size_t>(count(rng)), static_cast<std::uint8_t>(level));
    if (pixels.empty()) pixels.push_back(static_cast<std::uint8_t>(rng() % 256));
    const GrayImage g(pixels.size(), 1, pixels);
    const Histogram h = compute_histogram(g);

    // Independent segment oracle: cumulative counts against k * total / t.
    std::vector<int> b(static_cast<std::size_t>(t) + 1);
    int lo = 0, hi = 255;
    while (h.bins[lo] == 0) ++lo;
    while (h.bins[hi] == 0) --hi;
    b.front() = lo;
    b.back() = hi;
    for (int k = 1; k < t; ++k) {
      std::uint64_t cum = 0;
      for (int level = 0; level < 256; ++level) {
        cum += h.bins[level];
        if (cum * static_cast<std::uint64_t>(t) >= static_cast<std::uint64_t>(k) * pixels.size()) {
          b[k] = level;
          break;
        }
      }
    }
    ASSERT_EQ(quantile_boundaries(h, t), b);
    const GrayImage out = quantile_equalize(g, t);
    for (std::size_t i = 0; i < pixels.size(); ++i) {
      const int v = pixels[i];
      int k = 1;
      while (k < t && v > b[k]) ++k;
      ASSERT_GE(out.pixels()[i], b[k - 1]) << "trial " << trial;
      ASSERT_LE(out.pixels()[i], b[k]) << "trial " << trial;
    }
  }
}

TEST(Preprocess, ReducesToEqualization) {
  std::mt19937_64 rng(6);
  const GrayImage g = test::random_gray(20, 20, rng, 30, 200);
  PreprocessConfig cfg;
  cfg.alpha = 1.0;
  cfg.delta = 0.0;
  cfg.theta = 0.0;
  cfg.quantiles = 1;
  EXPECT_TRUE(std::ranges::equal(preprocess(g, cfg).pixels(), quantile_equalize(g, 1).pixels()));
}

TEST(Preprocess, ConstantStaysConstant) {
  const GrayImage flat(8, 8, 90);
  const GrayImage out = preprocess(flat, {});
  EXPECT_TRUE(std::ranges::all_of(out.pixels(), [&](auto v) { return v == out.pixels()[0]; }));
}

TEST(Preprocess, BrightensLowContrastPhantom) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const GrayImage g = synthetic::low_contrast(64, seed);
    EXPECT_GT(mean_intensity(preprocess(g, {})), mean_intensity(g));
  }
}

TEST(Preprocess, DeterministicAndValidated) {
  std::mt19937_64 rng(7);
  const GrayImage g = test::random_gray(16, 16, rng);
  EXPECT_TRUE(std::ranges::equal(preprocess(g, {}).pixels(), preprocess(g, {}).pixels()));
  PreprocessConfig bad;
  bad.theta = 2;
  EXPECT_THROW(preprocess(g, bad), InputError);
  bad = {};
  bad.quantiles = 0;
  EXPECT_THROW(preprocess(g, bad), InputError);
  EXPECT_THROW(preprocess(GrayImage{}, {}), InputError);
}

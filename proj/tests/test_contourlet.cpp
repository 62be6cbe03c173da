#include <gtest/gtest.h>

#include "glaucad/contourlet.hpp"
#include "test_util.hpp"

using namespace glaucad;

namespace {

RealImage noise(std::size_t w, std::size_t h, std::uint64_t seed, double sigma = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, sigma);
  RealImage x(w, h);
  for (double& v : x.pixels()) v = nd(rng);
  return x;
}

double energy(const RealImage& x) {
  double e = 0;
  for (double v : x.pixels()) e += v * v;
  return e;
}

}  // namespace

TEST(Contourlet, WindowsPartitionUnity) {
  for (auto [w, h] : {std::pair{32u, 32u}, {20u, 13u}}) {
    const auto win = detail::wedge_windows(w, h, 8);
    ASSERT_EQ(win.size(), 8u);
    for (std::size_t i = 0; i < w * h; ++i) {
      double s = 0;
      for (const auto& x : win) {
        EXPECT_GE(x.pixels()[i], 0.0);
        s += x.pixels()[i] * x.pixels()[i];
      }
      EXPECT_NEAR(s, 1.0, 1e-12);
    }
  }
}

TEST(Contourlet, PerfectReconstruction) {
  std::mt19937_64 rng(1);
  for (auto [w, h] : {std::pair{32u, 32u}, {24u, 40u}, {17u, 9u}}) {
    const RealImage x = test::random_real(w, h, rng, -5, 5);
    for (int levels : {1, 2, 3}) {
      const ContourletBands b = contourlet_forward(x, {levels, 8});
      EXPECT_EQ(b.directional.size(), static_cast<std::size_t>(levels));
      EXPECT_LT(test::max_abs_diff(contourlet_inverse(b), x), 1e-10);
    }
  }
  EXPECT_THROW(contourlet_forward(RealImage(8, 8), {0, 8}), InputError);
}

TEST(Contourlet, MedianAbs) {
  std::vector<double> v{-3, 1, 2, -0.5};
  EXPECT_DOUBLE_EQ(median_abs(v), 1.5);
  v = {-3, 1, 2};
  EXPECT_DOUBLE_EQ(median_abs(v), 2.0);
  EXPECT_DOUBLE_EQ(median_abs({}), 0.0);
}

TEST(Shrinkage, MatchesBruteForce) {
  std::mt19937_64 rng(2);
  for (int window : {1, 3, 7}) {
    const RealImage band = test::random_real(11, 9, rng, -4, 4);
    const RealImage g = shrinkage_gains(band, window, 0.6745);
    std::vector<double> a;
    for (double v : band.pixels()) a.push_back(std::abs(v));
    std::ranges::sort(a);
    const double med = a.size() % 2 ? a[a.size() / 2] : 0.5 * (a[a.size() / 2 - 1] + a[a.size() / 2]);
    const double nv = (med / 0.6745) * (med / 0.6745);
    for (long r = 0; r < 9; ++r)
      for (long c = 0; c < 11; ++c) {
        double s = 0;
        int n = 0;
        for (long rr = r - window / 2; rr <= r + window / 2; ++rr)
          for (long cc = c - window / 2; cc <= c + window / 2; ++cc)
            if (rr >= 0 && rr < 9 && cc >= 0 && cc < 11) {
              s += band(rr, cc) * band(rr, cc);
              ++n;
            }
        const double local = s / n;
        const double expect = local > 0 ? std::max(local - nv, 0.0) / local : 1.0;
        EXPECT_NEAR(g(r, c), expect, 1e-12);
        EXPECT_GE(g(r, c), 0.0);
        EXPECT_LE(g(r, c), 1.0);
      }
  }
}

TEST(Shrinkage, ZeroMedianMeansNoShrinkage) {
  RealImage band(9, 9, 0.0);
  band(4, 4) = 10.0;
  band(1, 7) = -3.0;
  const RealImage g = shrinkage_gains(band, 7, 0.6745);
  for (double v : g.pixels()) EXPECT_DOUBLE_EQ(v, 1.0);
  RealImage copy = band;
  shrink_band(copy, {});
  EXPECT_TRUE(std::ranges::equal(copy.pixels(), band.pixels()));
}

TEST(Denoise, SuppressesPureNoise) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const RealImage x = noise(64, 64, seed);
    EXPECT_LT(energy(denoise_real(x)), 0.1 * energy(x)) << seed;
  }
}

TEST(Denoise, InfiniteBetaAndDisabledAreIdentity) {
  std::mt19937_64 rng(3);
  ComplexImage hs(32, 32);
  std::normal_distribution<double> nd;
  for (auto& v : hs.pixels()) v = {nd(rng), nd(rng)};
  DenoiseConfig cfg;
  cfg.beta = std::numeric_limits<double>::infinity();
  const ComplexImage out = denoise_highpass(hs, cfg);
  for (std::size_t i = 0; i < hs.size(); ++i) EXPECT_NEAR(std::abs(out.pixels()[i] - hs.pixels()[i]), 0.0, 1e-10);
  cfg = {};
  cfg.enabled = false;
  EXPECT_TRUE(std::ranges::equal(denoise_highpass(hs, cfg).pixels(), hs.pixels()));
}

TEST(Denoise, ContractsInCoefficientDomain) {
  const RealImage x = noise(32, 32, 9, 2.0);
  ContourletBands b = contourlet_forward(x);
  for (auto& level : b.directional)
    for (RealImage& band : level) {
      const RealImage before = band;
      shrink_band(band, {});
      for (std::size_t i = 0; i < band.size(); ++i) EXPECT_LE(std::abs(band.pixels()[i]), std::abs(before.pixels()[i]));
    }
}

TEST(Denoise, Validation) {
  DenoiseConfig cfg;
  cfg.window = 0;
  EXPECT_THROW(denoise_real(RealImage(8, 8), cfg), InputError);
  cfg = {};
  cfg.beta = 0;
  EXPECT_THROW(denoise_real(RealImage(8, 8), cfg), InputError);
}

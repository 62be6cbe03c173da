#include <gtest/gtest.h>

#include <cmath>

#include "glaucad/statfeat.hpp"
#include "test_util.hpp"

using namespace glaucad;

namespace {

const std::vector<double> kSample{1, 2, 2, 3, 7, 11, -4, 0.5};

RealImage glcm_image() {
  RealImage g(9, 7);
  for (std::size_t r = 0; r < 7; ++r)
    for (std::size_t c = 0; c < 9; ++c) g(r, c) = static_cast<double>((r * 7 + c * 3) % 10) + 0.1 * static_cast<double>(r);
  return g;
}

std::vector<double> hos_signal() {
  std::vector<double> s;
  for (int n = 0; n < 128; ++n)
    s.push_back(std::sin(0.3 * n) + 0.5 * std::cos(0.71 * n + 0.2) + 0.1 * ((n * 37) % 11));
  return s;
}

std::size_t principal_index(std::size_t f1, std::size_t f2, std::size_t half) {
  std::size_t k = 0;
  for (std::size_t a = 0; a <= half; ++a)
    for (std::size_t b = 0; b <= a && a + b <= half; ++b) {
      if (a == f1 && b == f2) return k;
      ++k;
    }
  return k;
}

}  // namespace

TEST(Moments, MatchReference) {
  EXPECT_NEAR(stats::mean(kSample), 2.8125, 1e-15);
  EXPECT_NEAR(stats::variance(kSample), 17.62109375, 1e-12);
  EXPECT_NEAR(stats::skewness(kSample), 0.48453229813073606, 1e-12);
  EXPECT_NEAR(stats::kurtosis(kSample), 2.8161403630161717, 1e-12);
  EXPECT_DOUBLE_EQ(stats::quantile(kSample, 0.25), 0.875);
  EXPECT_DOUBLE_EQ(stats::quantile(kSample, 0.5), 2.0);
  EXPECT_DOUBLE_EQ(stats::quantile(kSample, 0.75), 4.0);
  EXPECT_DOUBLE_EQ(stats::quantile(kSample, 1.0), 11.0);
  EXPECT_THROW(stats::quantile(kSample, 1.5), InputError);
  EXPECT_THROW(stats::mean(std::vector<double>{}), InputError);
}

TEST(Moments, DegenerateVarianceGivesZero) {
  const std::vector<double> c(50, 7.25);
  EXPECT_EQ(stats::skewness(c), 0.0);
  EXPECT_EQ(stats::kurtosis(c), 0.0);
  EXPECT_EQ(stats::histogram_entropy(c), 0.0);
}

TEST(Moments, HistogramEntropy) {
  EXPECT_NEAR(stats::histogram_entropy(std::vector<double>{0, 1, 1, 2, 3, 3, 3, 10}), 2.1556390622295662, 1e-12);
  EXPECT_NEAR(stats::entropy_of(std::vector<double>{1, 1, 1, 1}), 2.0, 1e-15);
  EXPECT_EQ(stats::entropy_of(std::vector<double>{0, 0}), 0.0);
}

TEST(FirstOrder, SmoothnessAndConsistency) {
  std::mt19937_64 rng(3);
  const RealImage img = test::random_real(12, 9, rng, -5, 5);
  const auto s = first_order_stats(img);
  EXPECT_NEAR(s.sd * s.sd, s.variance, 1e-12);
  EXPECT_NEAR(s.smoothness, s.variance / (1 + s.variance), 1e-15);
  EXPECT_NEAR(s.rms * s.rms, s.variance + s.mean * s.mean, 1e-10);
  const auto flat = first_order_stats(RealImage(5, 5, 4.0));
  EXPECT_EQ(flat.smoothness, 0.0);
  EXPECT_EQ(flat.kurtosis, 0.0);
}

TEST(Glcm, MatchesReference) {
  const auto f = glcm_features(glcm_image());
  EXPECT_NEAR(f.idm, 0.31749420113390703, 1e-12);
  EXPECT_NEAR(f.contrast, 11.623181216931217, 1e-12);
  EXPECT_NEAR(f.energy, 0.023861702964686392, 1e-12);
  EXPECT_NEAR(f.homogeneity, 0.41906415343915343, 1e-12);
}

TEST(Glcm, MatrixIsSymmetricDistribution) {
  std::mt19937_64 rng(8);
  const auto p = glcm_matrix(test::random_real(10, 10, rng), GlcmConfig{});
  double total = 0;
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      total += p[i * 8 + j];
      EXPECT_NEAR(p[i * 8 + j], p[j * 8 + i], 1e-15);
    }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Glcm, ConstantImage) {
  const auto f = glcm_features(RealImage(6, 6, 3.0));
  EXPECT_DOUBLE_EQ(f.idm, 1.0);
  EXPECT_DOUBLE_EQ(f.contrast, 0.0);
  EXPECT_DOUBLE_EQ(f.energy, 1.0);
  EXPECT_DOUBLE_EQ(f.homogeneity, 1.0);
  GlcmConfig bad;
  bad.levels = 1;
  EXPECT_THROW(glcm_features(RealImage(6, 6, 3.0), bad), InputError);
}

TEST(Hoc, LinesPartitionRaster) {
  for (int angle : kHocAngles) {
    const auto lines = directional_lines(13, 9, angle);
    std::vector<int> hits(13 * 9, 0);
    for (const auto& l : lines)
      for (std::size_t i : l) ++hits[i];
    for (int h : hits) EXPECT_EQ(h, 1) << angle;
  }
}

TEST(Hoc, AxisAnglesMatchBruteForce) {
  std::mt19937_64 rng(4);
  const RealImage img = test::random_real(11, 10, rng, -3, 9);
  const double m = stats::mean(img.pixels());
  for (int tau = 0; tau <= 4; ++tau) {
    double rows = 0, cols = 0;
    std::size_t nr = 0, nc = 0;
    for (std::size_t r = 0; r < 10; ++r)
      for (std::size_t c = 0; c + tau < 11; ++c, ++nr) {
        const double b = img(r, c + tau) - m;
        rows += (img(r, c) - m) * b * b;
      }
    for (std::size_t c = 0; c < 11; ++c)
      for (std::size_t r = 0; r + tau < 10; ++r, ++nc) {
        const double b = img(r + tau, c) - m;
        cols += (img(r, c) - m) * b * b;
      }
    EXPECT_NEAR(line_cumulants(img, 180, 4)[tau], rows / nr, 1e-9);
    EXPECT_NEAR(line_cumulants(img, 90, 4)[tau], cols / nc, 1e-9);
  }
}

TEST(Hoc, SymmetricDataHasNoThirdOrder) {
  const RealImage flat(20, 20, 5.0);
  for (double v : hoc_features(flat)) EXPECT_EQ(v, 0.0);
  std::mt19937_64 rng(5);
  const RealImage small = test::random_real(6, 7, rng);
  const auto h = hoc_features(small);
  EXPECT_NEAR(h[4], stats::mean(line_cumulants(small, 180, 5)), 1e-12);
}

TEST(Hos, BispectrumMatchesReference) {
  const auto s = hos_signal();
  const auto b = bispectrum(s, 64);
  ASSERT_EQ(b.size(), 289u);
  const auto at = [&](std::size_t f1, std::size_t f2) { return b[principal_index(f1, f2, 32)]; };
  EXPECT_NEAR(at(5, 3).real(), -132.19729631002164, 1e-8);
  EXPECT_NEAR(at(5, 3).imag(), 227.60889037325427, 1e-8);
  EXPECT_NEAR(at(20, 9).real(), -1.4670070140751674, 1e-9);
  EXPECT_NEAR(at(20, 9).imag(), -1.1165756441140098, 1e-9);
  EXPECT_NEAR(at(16, 16).real(), -0.07957626325847895, 1e-9);
  EXPECT_NEAR(at(16, 16).imag(), -0.21102902202673507, 1e-9);
}

TEST(Hos, FeaturesMatchReference) {
  const auto f = hos_features_1d(hos_signal());
  EXPECT_NEAR(f.mean, 39.68115304726273, 1e-9);
  EXPECT_NEAR(f.ent_dg1, 3.7232192507694504, 1e-9);
  EXPECT_NEAR(f.ent_dg2, 0.5508769283409659, 1e-9);
  EXPECT_NEAR(f.ent_dg3, 0.13021124226014083, 1e-9);
  EXPECT_GT(f.entropy, 0.0);
  EXPECT_LE(f.entropy, std::log2(36.0) + 1e-12);
}

TEST(Hos, NaiveTripleProduct) {
  std::vector<double> s{3, -1, 4, 1, -5, 9, 2, -6};
  const auto b = bispectrum(s, 8);
  double m = 0;
  for (double v : s) m += v / 8;
  std::vector<std::complex<double>> x(8);
  for (int k = 0; k < 8; ++k)
    for (int n = 0; n < 8; ++n) x[k] += (s[n] - m) * std::polar(1.0, -2 * std::numbers::pi * k * n / 8);
  std::size_t i = 0;
  for (std::size_t f1 = 0; f1 <= 4; ++f1)
    for (std::size_t f2 = 0; f2 <= f1 && f1 + f2 <= 4; ++f2, ++i)
      EXPECT_LT(std::abs(b[i] - x[f1] * x[f2] * std::conj(x[f1 + f2])), 1e-9);
  EXPECT_EQ(i, b.size());
}

TEST(Hos, ConstantSignal) {
  const auto f = hos_features_1d(std::vector<double>(100, 2.0));
  EXPECT_EQ(f.mean, 0.0);
  EXPECT_EQ(f.entropy, 0.0);
  EXPECT_EQ(f.ent_dg1, 0.0);
}

TEST(StatFeatures, CountAndConstantInput) {
  EXPECT_EQ(kStatFeatureCount, 21u);
  const auto f = statistical_features(GrayImage(64, 64, 90));
  for (double v : f) EXPECT_TRUE(std::isfinite(v));
  for (std::size_t i : {1, 2, 3, 4, 5, 6, 8}) EXPECT_EQ(f[i], 0.0) << i;
  for (std::size_t i : {7, 9, 10}) EXPECT_EQ(f[i], 1.0) << i;
  for (std::size_t i = 11; i < 21; ++i) EXPECT_EQ(f[i], 0.0) << i;
}

TEST(StatFeatures, MatchesBandAverage) {
  std::mt19937_64 rng(11);
  const GrayImage img = test::random_gray(48, 40, rng);
  const auto c = dwt2_bior68(to_real(img), 2);
  const auto f = statistical_features(img);
  const auto a = band_statistics(c.levels[1].ll), b = band_statistics(c.levels[1].lh);
  const auto d = band_statistics(c.levels[1].hl), e = band_statistics(c.levels[1].hh);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(f[i], (a[i] + b[i] + d[i] + e[i]) / 4, 1e-9);
}

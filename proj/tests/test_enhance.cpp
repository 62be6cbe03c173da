#include <gtest/gtest.h>

#include "glaucad/enhance.hpp"
#include "glaucad/synthetic.hpp"
#include "test_util.hpp"

using namespace glaucad;

namespace {

RealImage lowpass_of(const GrayImage& g) { return dtcwt_forward(to_real(g), 3).lowpass; }

double l1(const RealImage& a, const RealImage& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a.pixels()[i] - b.pixels()[i]);
  return s;
}

}  // namespace

TEST(SCurve, MidpointAsymptoteDegenerate) {
  const SCurveParams p{10, 100, 50, -5};
  EXPECT_DOUBLE_EQ(scurve_value(50, p), 60.0);
  EXPECT_NEAR(scurve_value(1e6, p), 110.0, 1e-9);
  EXPECT_NEAR(scurve_value(-1e6, p), 10.0, 1e-9);
  const RealImage flat(20, 20, 33.0);
  for (double v : scurve_transform(flat, 15).pixels()) EXPECT_DOUBLE_EQ(v, 33.0);
  EXPECT_THROW(scurve_transform(flat, SCurveParams{0, 1, 0, 0}), InputError);
}

TEST(SCurve, LocalIncreasing) {
  RealImage ramp(9, 1);
  for (int c = 0; c < 9; ++c) ramp(0, c) = c * 10.0;
  const RealImage out = scurve_transform(ramp, 15);
  for (int c = 1; c < 9; ++c) EXPECT_GT(out(0, c), out(0, c - 1));
}

TEST(EdgeContent, Examples) {
  EXPECT_DOUBLE_EQ(edge_content(RealImage(5, 5, 9.0)), 0.0);
  RealImage step(4, 4, 0.0);
  for (int r = 0; r < 4; ++r) step(r, 2) = step(r, 3) = 255.0;
  EXPECT_DOUBLE_EQ(edge_content(step), (0 + 127.5 + 127.5 + 0) / 4.0);
}

TEST(TopHat, IsolatedPixels) {
  RealImage bright(7, 7, 0.0);
  bright(3, 3) = 80.0;
  const auto se = StructuringElement::square();
  EXPECT_EQ(test::max_abs_diff(tophat_white(bright, se), bright), 0.0);
  for (double v : tophat_black(bright, se).pixels()) EXPECT_EQ(v, 0.0);
  RealImage dark(7, 7, 200.0);
  dark(2, 4) = 50.0;
  const RealImage b = tophat_black(dark, se);
  EXPECT_EQ(b(2, 4), 150.0);
  EXPECT_EQ(b(0, 0), 0.0);
  for (double v : tophat_white(dark, se).pixels()) EXPECT_EQ(v, 0.0);
}

TEST(Dse, ConstantRunsToCap) {
  EnhanceConfig cfg;
  const DseSchedule s = construct_dse(RealImage(32, 32, 5.0), cfg);
  EXPECT_EQ(s.t_final, cfg.t_cap);
  EXPECT_EQ(s.elements.size(), static_cast<std::size_t>(cfg.t_cap));
  const DseSchedule small = construct_dse(RealImage(16, 16, 5.0), cfg);
  EXPECT_EQ(small.t_final, 7);
}

TEST(Dse, TinyToleranceStopsAtOne) {
  EnhanceConfig cfg;
  cfg.diff_max = 1e-9;
  EXPECT_EQ(construct_dse(lowpass_of(synthetic::disc(128, 30)), cfg).t_final, 1);
}

TEST(Dse, ImageDependent) {
  EnhanceConfig cfg;
  cfg.diff_max = 1.5;
  const int big = construct_dse(lowpass_of(synthetic::disc(128, 30)), cfg).t_final;
  const int small = construct_dse(lowpass_of(synthetic::disc(128, 10)), cfg).t_final;
  EXPECT_NE(big, small);
  EXPECT_GT(big, 1);
}

TEST(Dse, ElementsGrow) {
  EnhanceConfig cfg;
  cfg.diff_max = 2.0;
  const DseSchedule s = construct_dse(lowpass_of(synthetic::disc(128, 30)), cfg);
  ASSERT_GT(s.elements.size(), 1u);
  for (std::size_t i = 1; i < s.elements.size(); ++i) EXPECT_TRUE(s.elements[i].contains(s.elements[i - 1]));
  EXPECT_EQ(s.elements[1], StructuringElement::square(2));
}

TEST(EnhanceLowpass, IdentityAndConstant) {
  std::mt19937_64 rng(1);
  const RealImage ls = test::random_real(16, 16, rng);
  DseSchedule s{{StructuringElement::square(), StructuringElement::square(2)}, 2};
  EXPECT_EQ(test::max_abs_diff(enhance_lowpass(ls, s, 0.0), ls), 0.0);
  const RealImage flat(16, 16, 12.0);
  EXPECT_EQ(test::max_abs_diff(enhance_lowpass(flat, s, 1.0), flat), 0.0);
  EXPECT_THROW(enhance_lowpass(ls, DseSchedule{}, 1.0), InputError);
}

TEST(EnhanceLowpass, MatchesFormula) {
  std::mt19937_64 rng(2);
  const RealImage ls = test::random_real(12, 12, rng);
  const auto a = StructuringElement::square(), b = StructuringElement::square(2), c = StructuringElement::square(3);
  const DseSchedule s{{a, b, c}, 3};
  const RealImage out = enhance_lowpass(ls, s, 0.7);
  const RealImage w1 = tophat_white(ls, a), w2 = tophat_white(ls, b), w3 = tophat_white(ls, c);
  const RealImage k1 = tophat_black(ls, a), k2 = tophat_black(ls, b), k3 = tophat_black(ls, c);
  for (std::size_t i = 0; i < ls.size(); ++i) {
    auto p = [i](const RealImage& x) { return x.pixels()[i]; };
    const double w = std::max({p(w1), p(w2), p(w3)}) + std::max(p(w2) - p(w1), p(w3) - p(w2));
    const double k = std::max({p(k1), p(k2), p(k3)}) + std::max(p(k2) - p(k1), p(k3) - p(k2));
    EXPECT_NEAR(out.pixels()[i], ls.pixels()[i] + 0.7 * (w - k), 1e-12);
  }
}

TEST(EnhanceLowpass, SpotContrastAndMonotoneInK) {
  const RealImage spot = synthetic::spot(24, 3, 50.0, 90.0);
  const DseSchedule s{{StructuringElement::square(), StructuringElement::square(2)}, 2};
  const RealImage out = enhance_lowpass(spot, s, 1.0);
  EXPECT_GT(out(12, 12) - out(0, 0), spot(12, 12) - spot(0, 0));
  std::mt19937_64 rng(3);
  const RealImage ls = test::random_real(16, 16, rng);
  double prev = -1;
  for (double k : {0.0, 0.5, 1.0}) {
    const double d = l1(enhance_lowpass(ls, s, k), ls);
    EXPECT_GE(d, prev);
    prev = d;
  }
}

TEST(EnhanceImage, IdentityConfig) {
  EnhanceConfig cfg;
  cfg.k = 0;
  cfg.denoise.beta = std::numeric_limits<double>::infinity();
  const GrayImage g = synthetic::ridge(64, 3);
  const GrayImage out = enhance_image(g, cfg).image;
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_LE(std::abs(int(out.pixels()[i]) - int(g.pixels()[i])), 1);
}

TEST(EnhanceImage, ConstantStaysConstant) {
  const GrayImage flat(64, 64, 120);
  const EnhanceResult r = enhance_image(flat, {});
  for (auto v : r.image.pixels()) EXPECT_EQ(v, 120);
  ASSERT_EQ(r.t_final.size(), 1u);
}

TEST(EnhanceImage, RidgeEdgeContentIncreases) {
  const GrayImage g = synthetic::ridge(128, 1);
  EXPECT_GT(edge_content(to_real(enhance_image(g, {}).image)), edge_content(to_real(g)));
}

TEST(EnhanceImage, Validation) {
  EnhanceConfig cfg;
  cfg.diff_max = 0;
  EXPECT_THROW(enhance_image(GrayImage(64, 64), cfg), InputError);
  cfg = {};
  cfg.k = -1;
  EXPECT_THROW(enhance_image(GrayImage(64, 64), cfg), InputError);
  EXPECT_THROW(enhance_image(GrayImage(), {}), InputError);
}

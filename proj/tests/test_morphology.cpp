#include <gtest/gtest.h>

#include <set>

#include "glaucad/morphology.hpp"
#include "test_util.hpp"

using namespace glaucad;

namespace {

// Definition-level oracle on the mask raster: erosion takes the minimum of
// f(x + b) over in-image positions of the mask, dilation the maximum of f(x - b).
RealImage brute(const RealImage& f, const StructuringElement& se, bool erode_op) {
  const GrayImage m = se.mask();
  const long r0 = se.min_dr(), c0 = se.min_dc();
  RealImage out(f.width(), f.height());
  for (long r = 0; r < static_cast<long>(f.height()); ++r)
    for (long c = 0; c < static_cast<long>(f.width()); ++c) {
      std::vector<double> vals;
      for (long mr = 0; mr < static_cast<long>(m.height()); ++mr)
        for (long mc = 0; mc < static_cast<long>(m.width()); ++mc) {
          if (!m(mr, mc)) continue;
          const long dr = mr + r0, dc = mc + c0;
          const long rr = erode_op ? r + dr : r - dr, cc = erode_op ? c + dc : c - dc;
          if (rr >= 0 && rr < static_cast<long>(f.height()) && cc >= 0 && cc < static_cast<long>(f.width()))
            vals.push_back(f(rr, cc));
        }
      out(r, c) = erode_op ? *std::ranges::min_element(vals) : *std::ranges::max_element(vals);
    }
  return out;
}

RealImage brute_white(const RealImage& f, const StructuringElement& se) {
  const RealImage o = brute(brute(f, se, true), se, false);
  RealImage out(f.width(), f.height());
  for (std::size_t i = 0; i < f.size(); ++i) out.pixels()[i] = f.pixels()[i] - o.pixels()[i];
  return out;
}

RealImage brute_black(const RealImage& f, const StructuringElement& se) {
  const RealImage c = brute(brute(f, se, false), se, true);
  RealImage out(f.width(), f.height());
  for (std::size_t i = 0; i < f.size(); ++i) out.pixels()[i] = c.pixels()[i] - f.pixels()[i];
  return out;
}

std::set<std::pair<long, long>> chain_oracle(const StructuringElement& se0, int t) {
  std::set<std::pair<long, long>> acc{{0, 0}};
  for (int i = 0; i < t; ++i) {
    std::set<std::pair<long, long>> next;
    for (auto [r, c] : acc)
      for (const Offset& o : se0.offsets()) next.insert({r + o.dr, c + o.dc});
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

TEST(StructuringElement, Shapes) {
  EXPECT_EQ(StructuringElement::square().offsets().size(), 9u);
  EXPECT_EQ(StructuringElement::cross().offsets().size(), 5u);
  EXPECT_EQ(StructuringElement::disc(2).offsets().size(), 13u);
  EXPECT_EQ(StructuringElement::square(2).width(), 5u);
  EXPECT_THROW(StructuringElement({{1, 0}}), InputError);
  EXPECT_THROW(StructuringElement(std::vector<Offset>{}), InputError);
  GrayImage mask(3, 1, 1);
  const StructuringElement line(mask, 0, 0);
  EXPECT_EQ(line.min_dc(), 0);
  EXPECT_EQ(line.max_dc(), 2);
  EXPECT_EQ(parse_se_shape("cross"), SeShape::Cross);
  EXPECT_THROW(parse_se_shape("hexagon"), InputError);
}

TEST(StructuringElement, DilateChainMatchesOracle) {
  const StructuringElement asym({{0, 0}, {0, 1}, {1, -1}});
  for (const StructuringElement& se0 :
       {StructuringElement::square(), StructuringElement::cross(), StructuringElement::disc(1), asym})
    for (int t = 1; t <= 4; ++t) {
      const auto expect = chain_oracle(se0, t);
      const StructuringElement got = dilate_chain(se0, t);
      std::set<std::pair<long, long>> have;
      for (const Offset& o : got.offsets()) have.insert({o.dr, o.dc});
      EXPECT_EQ(have, expect) << t;
      if (t > 1) {
        EXPECT_TRUE(got.contains(dilate_chain(se0, t - 1)));
      }
    }
  EXPECT_EQ(dilate_chain(StructuringElement::square(), 3), StructuringElement::square(3));
  EXPECT_THROW(dilate_chain(StructuringElement::square(), 0), InputError);
}

TEST(Morphology, MatchesBruteForce) {
  std::mt19937_64 rng(1);
  const StructuringElement asym({{0, 0}, {0, 1}, {1, -1}, {-2, 0}});
  for (int trial = 0; trial < 20; ++trial) {
    const RealImage f = to_real(test::random_gray(16, 16, rng));
    for (const StructuringElement& se :
         {StructuringElement::square(), dilate_chain(StructuringElement::cross(), 2), asym}) {
      EXPECT_EQ(test::max_abs_diff(erode(f, se), brute(f, se, true)), 0.0);
      EXPECT_EQ(test::max_abs_diff(dilate(f, se), brute(f, se, false)), 0.0);
      EXPECT_EQ(test::max_abs_diff(tophat_white(f, se), brute_white(f, se)), 0.0);
      EXPECT_EQ(test::max_abs_diff(tophat_black(f, se), brute_black(f, se)), 0.0);
    }
  }
}

TEST(Morphology, OrderingAndIdempotence) {
  std::mt19937_64 rng(2);
  const RealImage f = to_real(test::random_gray(20, 14, rng));
  const StructuringElement se = StructuringElement::disc(2);
  const RealImage o = opening(f, se), c = closing(f, se);
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_LE(o.pixels()[i], f.pixels()[i]);
    EXPECT_GE(c.pixels()[i], f.pixels()[i]);
  }
  EXPECT_EQ(test::max_abs_diff(opening(o, se), o), 0.0);
  EXPECT_EQ(test::max_abs_diff(closing(c, se), c), 0.0);
  for (double v : tophat_white(f, se).pixels()) EXPECT_GE(v, 0.0);
  for (double v : tophat_black(f, se).pixels()) EXPECT_GE(v, 0.0);
}

TEST(Morphology, ConstantAndOversized) {
  const RealImage flat(6, 6, 42.0);
  for (double v : tophat_white(flat, StructuringElement::square()).pixels()) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(erode(flat, StructuringElement::square(3)), InputError);
  EXPECT_TRUE(se_fits(StructuringElement::square(2), 5, 5));
  EXPECT_FALSE(se_fits(StructuringElement::square(3), 6, 6));
}

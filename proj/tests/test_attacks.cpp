#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "textmark/attacks.hpp"
#include "textmark/errors.hpp"
#include "textmark/metrics.hpp"

namespace textmark {
namespace {

using testing::random_image;

TEST(Attacks, IdentityParameters) {
  const auto img = random_image(64, 48, 1);
  EXPECT_EQ(attack_noise(img, 0.0, 5), img);
  EXPECT_EQ(attack_resize(img, 1.0), img);
  EXPECT_EQ(attack_rotate(img, 0.0), img);
  EXPECT_EQ(attack_crop_central(img, 0.0), img);
  EXPECT_EQ(attack_splice(img, random_image(64, 48, 2), 0.0, 3), img);
}

TEST(Attacks, CropKeepsCentralArea) {
  const RgbImage img(1024, 1024);
  const auto out = attack_crop_central(img, 10.0);
  const double area = double(out.width()) * out.height();
  EXPECT_NEAR(area, 943718.0, 0.002 * 943718.0);
  EXPECT_EQ(out.width(), out.height());

  const auto src = random_image(100, 80, 4);
  const auto c = attack_crop_central(src, 36.0);  // side factor 0.8
  ASSERT_EQ(c.dims(), (Dims{80, 64}));
  EXPECT_EQ(c.pixel(0, 0)[0], src.pixel(10, 8)[0]);
  EXPECT_EQ(c.pixel(79, 63)[2], src.pixel(89, 71)[2]);
}

TEST(Attacks, ResizeDimensions) {
  const RgbImage img(200, 100);
  EXPECT_EQ(attack_resize(img, 0.5).dims(), (Dims{100, 50}));
  EXPECT_EQ(attack_resize(img, 1.7).dims(), (Dims{340, 170}));
}

TEST(Attacks, SpliceAreaWithinOnePercent) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    for (double pct : {10.0, 25.0}) {
      const auto mask = splice_mask({256, 192}, pct, seed);
      const double covered = 100.0 * std::accumulate(mask.begin(), mask.end(), 0.0) / mask.size();
      EXPECT_NEAR(covered, pct, 1.0) << "seed " << seed;
    }
  }
}

TEST(Attacks, SpliceTakesOriginalPixelsOnMask) {
  const auto wm = random_image(96, 64, 5), orig = random_image(96, 64, 6);
  const auto mask = splice_mask(wm.dims(), 25.0, 9);
  const auto out = attack_splice(wm, orig, 25.0, 9);
  for (std::size_t i = 0; i < mask.size(); ++i)
    for (int c = 0; c < 3; ++c)
      ASSERT_EQ(out.data()[3 * i + c], (mask[i] ? orig : wm).data()[3 * i + c]);
  EXPECT_THROW(attack_splice(wm, random_image(95, 64, 6), 25.0, 9), DimensionError);
}

TEST(Attacks, NoiseStatistics) {
  RgbImage grey(256, 256);
  for (auto& v : grey.data()) v = 128;
  const auto noisy = attack_noise(grey, 10.0, 7);
  double s = 0, s2 = 0;
  for (auto v : noisy.data()) s += v - 128.0, s2 += (v - 128.0) * (v - 128.0);
  const double n = noisy.data().size();
  EXPECT_NEAR(s / n, 0.0, 0.1);
  EXPECT_NEAR(std::sqrt(s2 / n - (s / n) * (s / n)), 10.0, 0.15);
}

TEST(Attacks, JpegQualityOrdersDistortion) {
  const auto img = random_image(64, 64, 8);
  EXPECT_GT(psnr(img, attack_jpeg(img, 90)), psnr(img, attack_jpeg(img, 20)));
  EXPECT_EQ(attack_jpeg(img, 50).dims(), img.dims());
}

TEST(Attacks, Deterministic) {
  const auto img = random_image(64, 64, 9), orig = random_image(64, 64, 10);
  for (const char* text : {"jpeg:70", "resize:0.7", "rotate:5", "crop:20", "noise:20@3", "splice:10@4"}) {
    const auto spec = AttackSpec::parse(text);
    EXPECT_EQ(apply_attack(spec, img, &orig), apply_attack(spec, img, &orig)) << text;
  }
  EXPECT_NE(attack_noise(img, 5.0, 1), attack_noise(img, 5.0, 2));
}

TEST(Attacks, ParameterRanges) {
  const auto img = random_image(16, 16, 11);
  EXPECT_THROW(attack_jpeg(img, 0), ParamError);
  EXPECT_THROW(attack_jpeg(img, 101), ParamError);
  EXPECT_THROW(attack_resize(img, 0.0), ParamError);
  EXPECT_THROW(attack_resize(img, 4.5), ParamError);
  EXPECT_THROW(attack_rotate(img, 46.0), ParamError);
  EXPECT_THROW(attack_crop_central(img, 91.0), ParamError);
  EXPECT_THROW(attack_noise(img, -1.0, 0), ParamError);
  EXPECT_THROW(splice_mask(img.dims(), 51.0, 0), ParamError);
  EXPECT_THROW(apply_attack(AttackSpec::parse("splice:10"), img), ParamError);
}

TEST(AttackSpec, ParseAndLabel) {
  const auto a = AttackSpec::parse("noise:20@7");
  EXPECT_EQ(a.kind, AttackKind::Noise);
  EXPECT_DOUBLE_EQ(a.param, 20.0);
  EXPECT_EQ(a.seed, 7u);
  EXPECT_EQ(a.label(), "noise:20");
  EXPECT_EQ(AttackSpec::parse("resize:0.7").label(), "resize:0.7");
  EXPECT_EQ(AttackSpec::parse("rotate:-5").param, -5.0);
  for (const char* bad : {"jpeg", "blur:3", "jpeg:abc", "jpeg:70x", "jpeg:70.5", "noise:1@x"})
    EXPECT_THROW(AttackSpec::parse(bad), ParamError) << bad;
}

}  // namespace
}  // namespace textmark

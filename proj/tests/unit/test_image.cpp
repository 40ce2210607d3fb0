#include <gtest/gtest.h>

#include <random>

#include "lumistack/image.hpp"

namespace lumistack {
namespace {

TEST(Raster, RejectsEmptyDimensions) {
  EXPECT_THROW(RgbImage(0, 4), InvalidArgument);
  EXPECT_THROW(PlaneImage(3, -1), InvalidArgument);
  EXPECT_THROW(PlaneImage(2, 2, std::vector<double>(3)), InvalidArgument);
}

TEST(Hsv, PureRed) {
  const Hsv hsv = rgb_to_hsv(Rgb8{255, 0, 0});
  EXPECT_EQ(hsv.h, 0.0);
  EXPECT_EQ(hsv.s, 1.0);
  EXPECT_EQ(hsv.v, 1.0);
}

TEST(Hsv, AchromaticHasZeroHueAndSaturation) {
  for (int g = 0; g < 256; ++g) {
    const auto level = static_cast<std::uint8_t>(g);
    const Hsv hsv = rgb_to_hsv(Rgb8{level, level, level});
    EXPECT_EQ(hsv.h, 0.0);
    EXPECT_EQ(hsv.s, 0.0);
    EXPECT_EQ(hsv.v, g / 255.0);
  }
}

TEST(Hsv, ValueIsMaxOver255) {
  EXPECT_NEAR(rgb_to_hsv(Rgb8{128, 64, 32}).v, 0.50196, 1e-5);
  EXPECT_EQ(rgb_to_hsv(Rgb8{128, 64, 32}).v, 128.0 / 255.0);
}

TEST(Hsv, InverseExamples) {
  EXPECT_EQ(hsv_to_rgb(Hsv{0.0, 0.0, 0.5}), (Rgb8{128, 128, 128}));
  EXPECT_EQ(hsv_to_rgb(Hsv{120.0, 1.0, 1.0}), (Rgb8{0, 255, 0}));
  EXPECT_EQ(hsv_to_rgb(Hsv{240.0, 1.0, 1.0}), (Rgb8{0, 0, 255}));
}

TEST(Hsv, HueStaysInRange) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> level(0, 255);
  for (int i = 0; i < 20000; ++i) {
    const Rgb8 px{static_cast<std::uint8_t>(level(rng)), static_cast<std::uint8_t>(level(rng)),
                  static_cast<std::uint8_t>(level(rng))};
    const Hsv hsv = rgb_to_hsv(px);
    ASSERT_GE(hsv.h, 0.0);
    ASSERT_LT(hsv.h, 360.0);
    ASSERT_GE(hsv.s, 0.0);
    ASSERT_LE(hsv.s, 1.0);
  }
}

// The whole cube is cheap enough to sweep, which subsumes any subsample.
TEST(Hsv, RoundTripOverFullCube) {
  int worst = 0;
  for (int r = 0; r < 256; ++r) {
    for (int g = 0; g < 256; ++g) {
      for (int b = 0; b < 256; ++b) {
        const Rgb8 px{static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g), static_cast<std::uint8_t>(b)};
        const Rgb8 back = hsv_to_rgb(rgb_to_hsv(px));
        for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(back[k] - px[k]));
      }
    }
  }
  EXPECT_LE(worst, 1);
}

TEST(Resize, IdentityIsBitExact) {
  std::mt19937 rng(11);
  RgbImage img(7, 5);
  for (auto& px : img) px = {static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng())};
  EXPECT_EQ(resize_nearest(img, 7, 5), img);
}

TEST(Resize, CheckerboardBlocks) {
  PlaneImage board(2, 2, std::vector<double>{0.0, 1.0, 1.0, 0.0});
  const PlaneImage big = resize_nearest(board, 4, 4);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) EXPECT_EQ(big(x, y), board(x / 2, y / 2)) << x << "," << y;
  }
}

TEST(Resize, TargetDimensions) {
  const RgbImage img(300, 211);
  const RgbImage out = resize_nearest(img, 128, 128);
  EXPECT_EQ(out.width(), 128);
  EXPECT_EQ(out.height(), 128);
  EXPECT_THROW(resize_nearest(img, 0, 128), InvalidArgument);
  EXPECT_THROW(resize_nearest(img, 128, 0), InvalidArgument);
}

TEST(Resize, DownsampleCopiesFloorScaledSource) {
  PlaneImage ramp(10, 1);
  for (int x = 0; x < 10; ++x) ramp(x, 0) = x;
  const PlaneImage out = resize_nearest(ramp, 3, 1);
  EXPECT_EQ(out(0, 0), 0.0);
  EXPECT_EQ(out(1, 0), 3.0);  // floor(1 * 10 / 3)
  EXPECT_EQ(out(2, 0), 6.0);
}

TEST(Normalize, ConstantPlaneMapsToZero) {
  const PlaneImage flat(4, 4, 0.7);
  for (double v : normalize_minmax(flat)) EXPECT_EQ(v, 0.0);
  PlaneImage two(2, 1, std::vector<double>{-3.0, 5.0});
  const auto n = normalize_minmax(two);
  EXPECT_EQ(n[0], 0.0);
  EXPECT_EQ(n[1], 1.0);
}

}  // namespace
}  // namespace lumistack

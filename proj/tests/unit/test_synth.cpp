#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lumistack/intrinsic.hpp"
#include "lumistack/odgray.hpp"
#include "lumistack/synth.hpp"

namespace lumistack {
namespace {

PlanckianScene two_patch_scene() {
  PlanckianScene s;
  s.width = 4;
  s.height = 2;
  s.surfaces = {Surface{{0.8, 0.5, 0.2}}, Surface{{0.1, 0.4, 0.9}}};
  s.labels = {0, 0, 1, 1, 0, 0, 1, 1};
  return s;
}

TEST(Scene, ValidateRejectsBadFields) {
  PlanckianScene s = two_patch_scene();
  EXPECT_NO_THROW(s.validate());
  s.labels[3] = 7;
  EXPECT_THROW(s.validate(), InvalidArgument);
  s = two_patch_scene();
  s.temperature = -1.0;
  EXPECT_THROW(s.validate(), InvalidArgument);
  s = two_patch_scene();
  s.shading = {1.0, 1.0};
  EXPECT_THROW(s.validate(), InvalidArgument);
  s = two_patch_scene();
  s.surfaces[0].reflectance[1] = 0.0;
  EXPECT_THROW(s.validate(), InvalidArgument);
}

TEST(Planckian, SingleSurfaceIsUniform) {
  PlanckianScene s;
  s.width = 5;
  s.height = 3;
  const LinearRgbImage img = render_planckian_linear(s);
  for (const auto& px : img) EXPECT_EQ(px, img[0]);
  for (double v : img[0]) EXPECT_GT(v, 0.0);
}

TEST(Planckian, WienRadianceByHand) {
  PlanckianScene s;
  const LinearRgbImage img = render_planckian_linear(s);
  const double lambda = 610.0;
  EXPECT_NEAR(img[0][0] / (std::pow(lambda, -5.0) * std::exp(-1.4388e7 / (6500.0 * lambda))), 1.0, 1e-12);
}

TEST(Planckian, ShadingCancelsInChromaticity) {
  PlanckianScene s = two_patch_scene();
  const LogChroma a = log_chromaticity(render_planckian_linear(s));
  s.shading.assign(s.pixel_count(), 2.0);
  const LogChroma b = log_chromaticity(render_planckian_linear(s));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (int k = 0; k < 3; ++k) ASSERT_NEAR(a[i][k], b[i][k], 1e-12);
  }
}

TEST(Planckian, TemperatureShiftsAlongIlluminantDirection) {
  PlanckianScene s = two_patch_scene();
  const double t0 = 6500.0, t1 = 2500.0;
  s.temperature = t0;
  const LogChroma a = log_chromaticity(render_planckian_linear(s));
  s.temperature = t1;
  const LogChroma b = log_chromaticity(render_planckian_linear(s));
  const Vec3 e = illuminant_direction(s.sensors);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (int k = 0; k < 3; ++k) ASSERT_NEAR(b[i][k] - a[i][k], e[k] * (1.0 / t1 - 1.0 / t0), 1e-12);
  }
}

TEST(Planckian, InvariantAngleIsOrthogonalToIlluminant) {
  const SensorModel sensors;
  const double deg = invariant_angle_degrees(sensors);
  EXPECT_GT(deg, 0.0);
  EXPECT_LE(deg, 180.0);
  const Vec2 e = project_chi(illuminant_direction(sensors));
  const double w = deg * std::numbers::pi / 180.0;
  EXPECT_NEAR(e[0] * std::cos(w) + e[1] * std::sin(w), 0.0, 1e-9);
  EXPECT_NEAR(deg, 162.575, 1e-3);
}

TEST(Planckian, QuantizeHitsFullScale) {
  PlanckianScene s = two_patch_scene();
  const RgbImage img = render_planckian(s);
  int hi = 0;
  for (const auto& px : img) hi = std::max({hi, int(px[0]), int(px[1]), int(px[2])});
  EXPECT_EQ(hi, 255);
}

TEST(Skin, ZeroDensitiesReduceToUnitSurface) {
  PlanckianScene s;
  s.width = 3;
  s.height = 2;
  SkinModel m;
  m.melanin.assign(6, 0.0);
  m.hemoglobin.assign(6, 0.0);
  const LinearRgbImage skin = render_skin_linear(m, s);
  const LinearRgbImage plain = render_planckian_linear(s);
  for (std::size_t i = 0; i < skin.size(); ++i) EXPECT_EQ(skin[i], plain[i]);
}

TEST(Skin, MoreMelaninDarkensEveryChannel) {
  PlanckianScene s;
  s.width = 2;
  s.height = 1;
  SkinModel m;
  m.melanin = {0.2, 0.5};
  m.hemoglobin = {0.3, 0.3};
  const LinearRgbImage img = render_skin_linear(m, s);
  for (int k = 0; k < 3; ++k) EXPECT_LT(img[1][k], img[0][k]);
  m.melanin = {-0.1, 0.0};
  EXPECT_THROW(m.validate(2), InvalidArgument);
}

TEST(Skin, OpticalDensitiesArePlanar) {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 5; ++rep) {
    RandomSceneOptions opts;
    opts.inverse_temperature_spread = 0.0;
    opts.shading = false;
    const PlanckianScene scene = random_planckian_scene(rng, opts);
    const SkinModel model = random_skin_model(rng, scene.width, scene.height);
    const LinearRgbImage img = scale_to_unit_max(render_skin_linear(model, scene));
    for (const auto& px : img) {
      for (double v : px) ASSERT_GT(v, 0.0);
    }
    const OdCloud od = to_optical_density(img);
    const PcaResult pca = pca3(od.pixels());
    EXPECT_LE(pca.explained_variance_ratio[2], 1e-9);
  }
}

TEST(Random, DeterministicForSeed) {
  std::mt19937_64 a(10), b(10);
  const PlanckianScene sa = random_planckian_scene(a, RandomSceneOptions{});
  const PlanckianScene sb = random_planckian_scene(b, RandomSceneOptions{});
  EXPECT_EQ(render_planckian(sa), render_planckian(sb));
  const auto field = random_smooth_field(a, 16, 16, 0.3, 0.9);
  for (double v : field) {
    EXPECT_GE(v, 0.3);
    EXPECT_LE(v, 0.9);
  }
}

TEST(Phantom, LesionDiskIsDarker) {
  const LesionPhantom ph = lesion_phantom(64, 64, 0.25, 1.0);
  const LinearRgbImage img = render_skin_linear(ph.skin, ph.scene);
  const std::size_t centre = 32 * 64 + 32;
  ASSERT_TRUE(ph.lesion_mask[centre]);
  ASSERT_FALSE(ph.lesion_mask[0]);
  for (int k = 0; k < 3; ++k) EXPECT_LT(img[centre][k], img[0][k]);
}

}  // namespace
}  // namespace lumistack

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "lumistack/image.hpp"

namespace lumistack {

/// Narrow-band (delta) camera sensors.
struct SensorModel {
  Vec3 wavelengths_nm{610.0, 550.0, 450.0};  // R, G, B
  Vec3 sensitivities{1.0, 1.0, 1.0};
  double k1 = 1.0;
  double k2 = 1.4388e7;  // second radiation constant, nm K
};

struct Surface {
  Vec3 reflectance{1.0, 1.0, 1.0};  // S(lambda_k), each in (0, 1]
};

/// Lambertian surfaces lit by a Planckian radiator under Wien's
/// approximation: R_k = sigma L k1 lambda_k^-5 exp(-k2 / (T lambda_k)) S_k q_k.
struct PlanckianScene {
  int width = 1;
  int height = 1;
  std::vector<Surface> surfaces{Surface{}};
  /// Per-pixel index into `surfaces`; empty means every pixel uses surface 0.
  std::vector<std::uint16_t> labels;
  double intensity = 1.0;      // L
  double temperature = 6500.0;  // T, kelvin
  /// Per-pixel Lambertian shading; empty means sigma = 1.
  std::vector<double> shading;
  /// Per-pixel offset added to 1/T (mixed illumination); empty means none.
  std::vector<double> inverse_temperature_offset;
  SensorModel sensors;

  /// Throws InvalidArgument when any documented constraint is violated.
  void validate() const;
  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * static_cast<std::size_t>(height); }
};

/// Melanin/hemoglobin skin reflectance:
/// S_k = exp(-rho_m alpha_m,k l_m,k - rho_h alpha_h,k l_h,k).
struct SkinModel {
  std::vector<double> melanin;     // rho_m per pixel
  std::vector<double> hemoglobin;  // rho_h per pixel
  Vec3 melanin_absorption{0.4, 0.6, 1.0};
  Vec3 hemoglobin_absorption{0.2, 1.0, 0.6};
  Vec3 melanin_path{1.0, 1.0, 1.0};
  Vec3 hemoglobin_path{1.0, 1.0, 1.0};

  void validate(std::size_t pixel_count) const;
};

/// Illuminant direction in log-chromaticity space, e_k - mean(e) with
/// e_k = -k2 / lambda_k. Temperature changes move rho along this vector.
Vec3 illuminant_direction(const SensorModel& sensors);

/// Projection angle in (0, 180] degrees whose direction in the
/// chi plane is orthogonal to the illuminant direction.
double invariant_angle_degrees(const SensorModel& sensors);

LinearRgbImage render_planckian_linear(const PlanckianScene& scene);
RgbImage render_planckian(const PlanckianScene& scene);

/// Skin reflectance replaces the scene's surfaces; lighting, shading and
/// sensors come from `scene`.
LinearRgbImage render_skin_linear(const SkinModel& model, const PlanckianScene& scene);
RgbImage render_skin(const SkinModel& model, const PlanckianScene& scene);

/// Scales so the global maximum component becomes 255, then rounds.
RgbImage quantize_to_8bit(const LinearRgbImage& img);

/// Scales so the global maximum component becomes 1.
LinearRgbImage scale_to_unit_max(const LinearRgbImage& img);

struct RandomSceneOptions {
  int width = 64;
  int height = 64;
  int min_surfaces = 2;
  int max_surfaces = 5;
  bool shading = true;
  /// Half-range of the smooth per-pixel 1/T offset; 0 disables it.
  double inverse_temperature_spread = 6e-5;
  double temperature = 6500.0;
};

/// Voronoi patches of random surfaces, smooth random shading and a smooth
/// illumination-temperature gradient. Deterministic for a given engine state.
PlanckianScene random_planckian_scene(std::mt19937_64& rng, const RandomSceneOptions& opts);

/// Random non-negative density fields (smooth blobs) for a width x height grid.
SkinModel random_skin_model(std::mt19937_64& rng, int width, int height);

/// Random positive smooth field, values in [lo, hi].
std::vector<double> random_smooth_field(std::mt19937_64& rng, int width, int height, double lo,
                                        double hi);

struct LesionPhantom {
  SkinModel skin;
  PlanckianScene scene;
  /// True inside the lesion disk.
  std::vector<std::uint8_t> lesion_mask;
};

/// Pigmented disk on healthy skin with radial multiplicative light falloff
/// (sigma = 1 at the centre, `edge_shading` at the corners).
LesionPhantom lesion_phantom(int width, int height, double radius_fraction = 0.25,
                             double edge_shading = 0.45);

}  // namespace lumistack

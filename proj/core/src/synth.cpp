#include "lumistack/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lumistack/intrinsic.hpp"

namespace lumistack {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

// log(k1 lambda^-5 q) and the e_k = -k2 / lambda coefficient, per channel.
struct SpectralTerms {
  Vec3 log_scale{};
  Vec3 e{};
};

SpectralTerms spectral_terms(const SensorModel& s) {
  SpectralTerms t;
  for (int k = 0; k < 3; ++k) {
    const double lambda = s.wavelengths_nm[k];
    t.log_scale[k] = std::log(s.k1) - 5.0 * std::log(lambda) + std::log(s.sensitivities[k]);
    t.e[k] = -s.k2 / lambda;
  }
  return t;
}

// Evaluates the image-formation model for every pixel given a per-pixel
// reflectance callback.
template <typename ReflectanceFn>
LinearRgbImage render(const PlanckianScene& scene, ReflectanceFn&& reflectance) {
  const SpectralTerms terms = spectral_terms(scene.sensors);
  LinearRgbImage out(scene.width, scene.height);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double sigma = scene.shading.empty() ? 1.0 : scene.shading[i];
    double inv_t = 1.0 / scene.temperature;
    if (!scene.inverse_temperature_offset.empty()) inv_t += scene.inverse_temperature_offset[i];
    const Vec3 s = reflectance(i);
    for (int k = 0; k < 3; ++k) {
      const double wien = std::exp(terms.log_scale[k] + terms.e[k] * inv_t);
      out[i][k] = sigma * scene.intensity * wien * s[k];
    }
  }
  return out;
}

double max_component(const LinearRgbImage& img) {
  double peak = 0.0;
  for (const auto& px : img) peak = std::max({peak, px[0], px[1], px[2]});
  return peak;
}

}  // namespace

void PlanckianScene::validate() const {
  require(width >= 1 && height >= 1, "scene dimensions must be positive");
  require(!surfaces.empty(), "scene needs at least one surface");
  for (const auto& s : surfaces) {
    for (double r : s.reflectance) require(r > 0.0 && r <= 1.0, "reflectance must lie in (0, 1]");
  }
  const std::size_t n = pixel_count();
  require(labels.empty() || labels.size() == n, "label map size must match the scene");
  for (auto l : labels) require(l < surfaces.size(), "label refers to a missing surface");
  require(std::isfinite(intensity) && intensity > 0.0, "light intensity must be positive");
  require(std::isfinite(temperature) && temperature > 0.0, "temperature must be positive");
  require(shading.empty() || shading.size() == n, "shading field size must match the scene");
  for (double s : shading) require(std::isfinite(s) && s > 0.0, "shading must be positive");
  require(inverse_temperature_offset.empty() || inverse_temperature_offset.size() == n,
          "temperature offset field size must match the scene");
  for (double d : inverse_temperature_offset) {
    require(std::isfinite(d) && 1.0 / temperature + d > 0.0, "effective temperature must be positive");
  }
  for (int k = 0; k < 3; ++k) {
    require(sensors.wavelengths_nm[k] > 0.0, "sensor wavelengths must be positive");
    require(sensors.sensitivities[k] > 0.0, "sensor sensitivities must be positive");
  }
  require(sensors.k1 > 0.0 && sensors.k2 > 0.0, "radiation constants must be positive");
}

void SkinModel::validate(std::size_t pixel_count) const {
  require(melanin.size() == pixel_count, "melanin field size must match the scene");
  require(hemoglobin.size() == pixel_count, "hemoglobin field size must match the scene");
  for (double v : melanin) require(std::isfinite(v) && v >= 0.0, "melanin density must be >= 0");
  for (double v : hemoglobin) require(std::isfinite(v) && v >= 0.0, "hemoglobin density must be >= 0");
  for (int k = 0; k < 3; ++k) {
    require(melanin_absorption[k] >= 0.0 && hemoglobin_absorption[k] >= 0.0,
            "absorption cross-sections must be >= 0");
    require(melanin_path[k] >= 0.0 && hemoglobin_path[k] >= 0.0, "path lengths must be >= 0");
  }
}

Vec3 illuminant_direction(const SensorModel& sensors) {
  const Vec3 e = spectral_terms(sensors).e;
  const double mean = (e[0] + e[1] + e[2]) / 3.0;
  return {e[0] - mean, e[1] - mean, e[2] - mean};
}

double invariant_angle_degrees(const SensorModel& sensors) {
  const Vec2 chi = project_chi(illuminant_direction(sensors));
  // (cos w, sin w) orthogonal to chi  <=>  (cos w, sin w) parallel to (-chi_2, chi_1).
  double deg = std::atan2(chi[0], -chi[1]) * 180.0 / std::numbers::pi;
  while (deg <= 0.0) deg += 180.0;
  while (deg > 180.0) deg -= 180.0;
  return deg;
}

LinearRgbImage render_planckian_linear(const PlanckianScene& scene) {
  scene.validate();
  return render(scene, [&](std::size_t i) {
    const std::size_t label = scene.labels.empty() ? 0 : scene.labels[i];
    return scene.surfaces[label].reflectance;
  });
}

RgbImage render_planckian(const PlanckianScene& scene) {
  return quantize_to_8bit(render_planckian_linear(scene));
}

LinearRgbImage render_skin_linear(const SkinModel& model, const PlanckianScene& scene) {
  scene.validate();
  model.validate(scene.pixel_count());
  Vec3 sigma_m{};
  Vec3 sigma_h{};
  for (int k = 0; k < 3; ++k) {
    sigma_m[k] = model.melanin_absorption[k] * model.melanin_path[k];
    sigma_h[k] = model.hemoglobin_absorption[k] * model.hemoglobin_path[k];
  }
  return render(scene, [&](std::size_t i) {
    Vec3 s{};
    for (int k = 0; k < 3; ++k) {
      s[k] = std::exp(-model.melanin[i] * sigma_m[k] - model.hemoglobin[i] * sigma_h[k]);
    }
    return s;
  });
}

RgbImage render_skin(const SkinModel& model, const PlanckianScene& scene) {
  return quantize_to_8bit(render_skin_linear(model, scene));
}

RgbImage quantize_to_8bit(const LinearRgbImage& img) {
  const double peak = max_component(img);
  const double scale = peak > 0.0 ? kMaxLevel / peak : 0.0;
  return map_pixels(img, [scale](const Vec3& px) {
    Rgb8 out{};
    for (int k = 0; k < 3; ++k) {
      out[k] = static_cast<std::uint8_t>(std::lround(std::clamp(px[k] * scale, 0.0, 255.0)));
    }
    return out;
  });
}

LinearRgbImage scale_to_unit_max(const LinearRgbImage& img) {
  const double peak = max_component(img);
  require(peak > 0.0, "cannot rescale an all-zero image");
  return map_pixels(img, [peak](const Vec3& px) {
    return Vec3{std::min(px[0] / peak, 1.0), std::min(px[1] / peak, 1.0), std::min(px[2] / peak, 1.0)};
  });
}

std::vector<double> random_smooth_field(std::mt19937_64& rng, int width, int height, double lo,
                                        double hi) {
  require(width >= 1 && height >= 1, "field dimensions must be positive");
  require(hi >= lo, "field range is inverted");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int bumps = 3 + static_cast<int>(unit(rng) * 4.0);
  struct Bump {
    double cx, cy, radius, weight;
  };
  std::vector<Bump> set;
  for (int b = 0; b < bumps; ++b) {
    set.push_back({unit(rng), unit(rng), 0.15 + 0.5 * unit(rng), unit(rng) * 2.0 - 1.0});
  }
  const double gx = unit(rng) * 2.0 - 1.0;
  const double gy = unit(rng) * 2.0 - 1.0;

  std::vector<double> field(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y) {
    const double v = (y + 0.5) / height;
    for (int x = 0; x < width; ++x) {
      const double u = (x + 0.5) / width;
      double acc = gx * u + gy * v;
      for (const auto& b : set) {
        const double d2 = (u - b.cx) * (u - b.cx) + (v - b.cy) * (v - b.cy);
        acc += b.weight * std::exp(-d2 / (2.0 * b.radius * b.radius));
      }
      field[static_cast<std::size_t>(y) * width + x] = acc;
    }
  }
  const auto [mn, mx] = std::minmax_element(field.begin(), field.end());
  const double a = *mn;
  const double range = *mx - *mn;
  for (double& f : field) {
    f = range > 0.0 ? std::clamp(lo + (hi - lo) * (f - a) / range, lo, hi) : 0.5 * (lo + hi);
  }
  return field;
}

PlanckianScene random_planckian_scene(std::mt19937_64& rng, const RandomSceneOptions& opts) {
  require(opts.min_surfaces >= 1 && opts.max_surfaces >= opts.min_surfaces,
          "surface count range is invalid");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> surface_count(opts.min_surfaces, opts.max_surfaces);

  PlanckianScene scene;
  scene.width = opts.width;
  scene.height = opts.height;
  scene.temperature = opts.temperature;
  scene.intensity = 0.5 + unit(rng);
  scene.surfaces.clear();
  const int surfaces = surface_count(rng);
  for (int s = 0; s < surfaces; ++s) {
    scene.surfaces.push_back({Vec3{0.05 + 0.95 * unit(rng), 0.05 + 0.95 * unit(rng), 0.05 + 0.95 * unit(rng)}});
  }

  std::vector<std::array<double, 2>> seeds;
  for (int s = 0; s < surfaces; ++s) seeds.push_back({unit(rng), unit(rng)});
  scene.labels.resize(scene.pixel_count());
  for (int y = 0; y < scene.height; ++y) {
    for (int x = 0; x < scene.width; ++x) {
      const double u = (x + 0.5) / scene.width;
      const double v = (y + 0.5) / scene.height;
      std::size_t best = 0;
      double best_d = 1e300;
      for (std::size_t s = 0; s < seeds.size(); ++s) {
        const double d = (u - seeds[s][0]) * (u - seeds[s][0]) + (v - seeds[s][1]) * (v - seeds[s][1]);
        if (d < best_d) {
          best_d = d;
          best = s;
        }
      }
      scene.labels[static_cast<std::size_t>(y) * scene.width + x] = static_cast<std::uint16_t>(best);
    }
  }

  if (opts.shading) scene.shading = random_smooth_field(rng, scene.width, scene.height, 0.3, 1.0);
  if (opts.inverse_temperature_spread > 0.0) {
    scene.inverse_temperature_offset = random_smooth_field(
        rng, scene.width, scene.height, -opts.inverse_temperature_spread, opts.inverse_temperature_spread);
  }
  scene.validate();
  return scene;
}

SkinModel random_skin_model(std::mt19937_64& rng, int width, int height) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SkinModel model;
  model.melanin = random_smooth_field(rng, width, height, 0.0, 0.5 + 2.0 * unit(rng));
  model.hemoglobin = random_smooth_field(rng, width, height, 0.0, 0.3 + 1.5 * unit(rng));
  for (int k = 0; k < 3; ++k) {
    model.melanin_absorption[k] = 0.2 + unit(rng);
    model.hemoglobin_absorption[k] = 0.2 + unit(rng);
    model.melanin_path[k] = 0.5 + unit(rng);
    model.hemoglobin_path[k] = 0.5 + unit(rng);
  }
  return model;
}

LesionPhantom lesion_phantom(int width, int height, double radius_fraction, double edge_shading) {
  require(radius_fraction > 0.0 && radius_fraction < 1.0, "lesion radius fraction must be in (0, 1)");
  require(edge_shading > 0.0 && edge_shading <= 1.0, "edge shading must be in (0, 1]");
  LesionPhantom ph;
  ph.scene.width = width;
  ph.scene.height = height;
  ph.scene.validate();
  const std::size_t n = ph.scene.pixel_count();
  ph.skin.melanin.assign(n, 0.15);
  ph.skin.hemoglobin.assign(n, 0.35);
  ph.scene.shading.assign(n, 1.0);
  ph.lesion_mask.assign(n, 0);

  const double cx = 0.5 * width;
  const double cy = 0.5 * height;
  const double radius = radius_fraction * std::min(width, height);
  const double corner = std::hypot(cx, cy);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * width + x;
      const double r = std::hypot(x + 0.5 - cx, y + 0.5 - cy);
      if (r <= radius) {
        ph.lesion_mask[i] = 1;
        ph.skin.melanin[i] = 1.6;
        ph.skin.hemoglobin[i] = 1.5;
      }
      const double t = std::min(r / corner, 1.0);
      ph.scene.shading[i] = 1.0 - (1.0 - edge_shading) * t * t;
    }
  }
  return ph;
}

}  // namespace lumistack

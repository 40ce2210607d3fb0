#include "lumistack/colorbands.hpp"

#include <algorithm>

namespace lumistack {

double r_prime(const Rgb8& px) noexcept {
  const double r = clamp_black(px[0]);
  const double g = clamp_black(px[1]);
  const double b = clamp_black(px[2]);
  return r / (r + g + b);
}

double v_star(const Rgb8& px) noexcept {
  const int hi = std::max({px[0], px[1], px[2]});
  return 1.0 - static_cast<double>(hi) / kMaxLevel;
}

PlaneImage r_prime(const RgbImage& img) {
  return map_pixels(img, [](const Rgb8& px) { return r_prime(px); });
}

PlaneImage v_star(const RgbImage& img) {
  return map_pixels(img, [](const Rgb8& px) { return v_star(px); });
}

BandSet color_bands(const RgbImage& img) { return {r_prime(img), v_star(img)}; }

}  // namespace lumistack

#include "lumistack/image.hpp"

#include <algorithm>
#include <cmath>

namespace lumistack {

namespace {

std::uint8_t to_level(double unit) {
  const double scaled = std::clamp(unit, 0.0, 1.0) * kMaxLevel;
  return static_cast<std::uint8_t>(std::lround(scaled));
}

}  // namespace

Hsv rgb_to_hsv(const Rgb8& rgb) noexcept {
  const int r = rgb[0];
  const int g = rgb[1];
  const int b = rgb[2];
  const int hi = std::max({r, g, b});
  const int lo = std::min({r, g, b});

  Hsv out;
  out.v = static_cast<double>(hi) / kMaxLevel;
  if (hi == 0 || hi == lo) return out;  // achromatic: H = S = 0

  const double delta = hi - lo;
  out.s = delta / hi;
  double h;
  if (hi == r) {
    h = 60.0 * (g - b) / delta;
  } else if (hi == g) {
    h = 60.0 * ((b - r) / delta + 2.0);
  } else {
    h = 60.0 * ((r - g) / delta + 4.0);
  }
  if (h < 0.0) h += 360.0;
  if (h >= 360.0) h -= 360.0;
  out.h = h;
  return out;
}

Rgb8 hsv_to_rgb(const Hsv& hsv) noexcept {
  const double v = hsv.v;
  if (hsv.s <= 0.0) {
    const auto g = to_level(v);
    return {g, g, g};
  }
  double hh = std::fmod(hsv.h, 360.0);
  if (hh < 0.0) hh += 360.0;
  hh /= 60.0;
  const int sector = static_cast<int>(std::floor(hh)) % 6;
  const double f = hh - std::floor(hh);
  const double p = v * (1.0 - hsv.s);
  const double q = v * (1.0 - hsv.s * f);
  const double t = v * (1.0 - hsv.s * (1.0 - f));

  double r = v, g = v, b = v;
  switch (sector) {
    case 0: r = v; g = t; b = p; break;
    case 1: r = q; g = v; b = p; break;
    case 2: r = p; g = v; b = t; break;
    case 3: r = p; g = q; b = v; break;
    case 4: r = t; g = p; b = v; break;
    default: r = v; g = p; b = q; break;
  }
  return {to_level(r), to_level(g), to_level(b)};
}

HsvImage rgb_to_hsv(const RgbImage& img) {
  return map_pixels(img, [](const Rgb8& px) { return rgb_to_hsv(px); });
}

RgbImage hsv_to_rgb(const HsvImage& img) {
  return map_pixels(img, [](const Hsv& px) { return hsv_to_rgb(px); });
}

PlaneImage normalize_minmax(const PlaneImage& plane) {
  const auto [lo_it, hi_it] = std::minmax_element(plane.begin(), plane.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  if (!(range > 0.0)) return PlaneImage(plane.width(), plane.height(), 0.0);
  return map_pixels(plane, [&](double v) { return std::clamp((v - lo) / range, 0.0, 1.0); });
}

PlaneImage channel_plane(const RgbImage& img, int k) {
  if (k < 0 || k > 2) throw InvalidArgument("channel index must be 0, 1 or 2");
  return map_pixels(img, [k](const Rgb8& px) { return static_cast<double>(px[k]) / kMaxLevel; });
}

PlaneImage value_plane(const HsvImage& img) {
  return map_pixels(img, [](const Hsv& px) { return px.v; });
}

}  // namespace lumistack

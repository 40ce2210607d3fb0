#pragma once

#include <array>
#include <cstdint>

#include "lumistack/raster.hpp"

namespace lumistack {

/// Largest 8-bit intensity (2^8 - 1).
inline constexpr int kMaxLevel = 255;

using Rgb8 = std::array<std::uint8_t, 3>;
using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;

struct Hsv {
  double h = 0.0;  // degrees, [0, 360)
  double s = 0.0;  // [0, 1]
  double v = 0.0;  // [0, 1]
  friend bool operator==(const Hsv&, const Hsv&) = default;
};

/// 8-bit, 3-channel image as stored on disk.
using RgbImage = Raster<Rgb8>;
/// Unquantized positive radiances (R, G, B); the floating-point pathway.
using LinearRgbImage = Raster<Vec3>;
/// Single real-valued channel.
using PlaneImage = Raster<double>;
using GrayImage = Raster<std::uint8_t>;
using HsvImage = Raster<Hsv>;

/// Zero intensities are raised to 1 before any ratio or logarithm.
constexpr std::uint8_t clamp_black(std::uint8_t v) noexcept { return v == 0 ? 1 : v; }

Hsv rgb_to_hsv(const Rgb8& rgb) noexcept;
Rgb8 hsv_to_rgb(const Hsv& hsv) noexcept;

HsvImage rgb_to_hsv(const RgbImage& img);
RgbImage hsv_to_rgb(const HsvImage& img);

/// Nearest-neighbour resampling: output (x, y) copies source
/// (floor(x * src_w / w), floor(y * src_h / h)).
template <typename T>
Raster<T> resize_nearest(const Raster<T>& src, int width, int height) {
  if (width < 1 || height < 1) {
    throw InvalidArgument("resize target must be at least 1x1");
  }
  Raster<T> out(width, height);
  const auto sw = static_cast<long long>(src.width());
  const auto sh = static_cast<long long>(src.height());
  for (int y = 0; y < height; ++y) {
    const int sy = static_cast<int>(y * sh / height);
    for (int x = 0; x < width; ++x) {
      const int sx = static_cast<int>(x * sw / width);
      out(x, y) = src(sx, sy);
    }
  }
  return out;
}

/// Per-plane min-max rescale to [0, 1]; a constant plane maps to all zeros.
PlaneImage normalize_minmax(const PlaneImage& plane);

/// Channel `k` of an RGB image divided by 255.
PlaneImage channel_plane(const RgbImage& img, int k);

/// Extracts the V channel of an HSV image.
PlaneImage value_plane(const HsvImage& img);

}  // namespace lumistack

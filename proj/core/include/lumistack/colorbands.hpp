#pragma once

#include "lumistack/image.hpp"

namespace lumistack {

struct BandSet {
  PlaneImage r_prime;
  PlaneImage v_star;
};

/// Normalized red: R / (R + G + B), after raising zero channels to 1.
/// Always strictly inside (0, 1).
double r_prime(const Rgb8& px) noexcept;

/// Complement of the HSV value channel, 1 - max(R, G, B) / 255, computed
/// without a full HSV conversion.
double v_star(const Rgb8& px) noexcept;

PlaneImage r_prime(const RgbImage& img);
PlaneImage v_star(const RgbImage& img);
BandSet color_bands(const RgbImage& img);

}  // namespace lumistack

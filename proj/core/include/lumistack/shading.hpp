#pragma once

#include <array>
#include <cstdint>

#include "lumistack/image.hpp"

namespace lumistack {

inline constexpr int kHistogramBins = 256;

/// Source bin -> matched value in [0, 1]; non-decreasing.
struct HistogramMap {
  std::array<double, kHistogramBins> lookup{};
};

struct MatchResult {
  PlaneImage plane;
  HistogramMap map;
};

/// Bin of a [0, 1] value: round(v * 255), clamped.
int quantize_bin(double unit) noexcept;

std::array<std::uint64_t, kHistogramBins> histogram256(const PlaneImage& plane);

/// Remaps `src` so its histogram follows `ref`: source bin b goes to the
/// smallest reference bin r with CDF_ref(r) >= CDF_src(b). Both planes are
/// expected in [0, 1] and may differ in size.
MatchResult histogram_match(const PlaneImage& src, const PlaneImage& ref);

/// HSV image whose V channel has been min-max normalized and histogram
/// matched to the (normalized) intrinsic image. H and S are untouched.
HsvImage shading_attenuate_hsv(const RgbImage& img, const PlaneImage& intrinsic);

RgbImage shading_attenuate(const RgbImage& img, const PlaneImage& intrinsic);

/// Computes the intrinsic image first; propagates DegenerateImageError.
RgbImage shading_attenuate(const RgbImage& img);

}  // namespace lumistack

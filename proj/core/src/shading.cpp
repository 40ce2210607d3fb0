#include "lumistack/shading.hpp"

#include <algorithm>
#include <cmath>

#include "lumistack/intrinsic.hpp"

namespace lumistack {

namespace {

using Cdf = std::array<std::uint64_t, kHistogramBins>;

Cdf cumulative(const std::array<std::uint64_t, kHistogramBins>& hist) {
  Cdf cdf{};
  std::uint64_t acc = 0;
  for (int b = 0; b < kHistogramBins; ++b) {
    acc += hist[b];
    cdf[b] = acc;
  }
  return cdf;
}

}  // namespace

int quantize_bin(double unit) noexcept {
  const double scaled = std::clamp(unit, 0.0, 1.0) * (kHistogramBins - 1);
  return static_cast<int>(std::lround(scaled));
}

std::array<std::uint64_t, kHistogramBins> histogram256(const PlaneImage& plane) {
  std::array<std::uint64_t, kHistogramBins> hist{};
  for (double v : plane) ++hist[quantize_bin(v)];
  return hist;
}

MatchResult histogram_match(const PlaneImage& src, const PlaneImage& ref) {
  const Cdf src_cdf = cumulative(histogram256(src));
  const Cdf ref_cdf = cumulative(histogram256(ref));
  const std::uint64_t n_src = src_cdf.back();
  const std::uint64_t n_ref = ref_cdf.back();

  // CDF_ref(r) >= CDF_src(b) compared exactly as ref_cdf[r] * n_src >= src_cdf[b] * n_ref.
  HistogramMap map;
  int r = 0;
  for (int b = 0; b < kHistogramBins; ++b) {
    const std::uint64_t need = src_cdf[b] * n_ref;
    while (r < kHistogramBins - 1 && ref_cdf[r] * n_src < need) ++r;
    map.lookup[b] = static_cast<double>(r) / (kHistogramBins - 1);
  }

  PlaneImage out = map_pixels(src, [&](double v) { return map.lookup[quantize_bin(v)]; });
  return {std::move(out), map};
}

HsvImage shading_attenuate_hsv(const RgbImage& img, const PlaneImage& intrinsic) {
  if (!img.same_shape(intrinsic)) {
    throw InvalidArgument("intrinsic image must match the RGB image dimensions");
  }
  HsvImage hsv = rgb_to_hsv(img);
  const PlaneImage value = normalize_minmax(value_plane(hsv));
  const PlaneImage matched = histogram_match(value, normalize_minmax(intrinsic)).plane;
  for (std::size_t i = 0; i < hsv.size(); ++i) hsv[i].v = matched[i];
  return hsv;
}

RgbImage shading_attenuate(const RgbImage& img, const PlaneImage& intrinsic) {
  return hsv_to_rgb(shading_attenuate_hsv(img, intrinsic));
}

RgbImage shading_attenuate(const RgbImage& img) {
  return shading_attenuate(img, intrinsic_image(img));
}

}  // namespace lumistack

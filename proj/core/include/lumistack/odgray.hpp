#pragma once

#include <array>
#include <span>

#include "lumistack/image.hpp"

namespace lumistack {

/// Per-pixel optical densities (-log R_1, -log R_2, -log R_3) with channels
/// scaled to (0, 1]; every entry is finite and non-negative.
using OdCloud = Raster<Vec3>;

struct PcaResult {
  Vec3 mean{};
  /// Orthonormal principal axes, sorted by descending eigenvalue.
  std::array<Vec3, 3> components{};
  /// Covariance eigenvalues (1/(N-1) normalization), descending.
  std::array<double, 3> eigenvalues{};
  std::array<double, 3> explained_variance_ratio{};
  /// Set when the cloud has zero total variance; components are then the
  /// identity axes and every ratio is zero.
  bool degenerate = false;
};

/// 8-bit pathway: OD_k = -log(max(R_k, 1) / 255), in [0, log 255].
OdCloud to_optical_density(const RgbImage& img);

/// Floating-point pathway for radiances already scaled into (0, 1].
OdCloud to_optical_density(const LinearRgbImage& img);

/// Principal component analysis of N >= 2 three-dimensional rows. Each
/// component is oriented so its dot product with (1, 1, 1) is non-negative;
/// when that dot product is zero, its largest-magnitude entry is positive.
PcaResult pca3(std::span<const Vec3> rows);

/// Projection of each row (after centring) onto a PCA component.
double project_onto(const PcaResult& pca, const Vec3& row, int component) noexcept;

/// Grayscale image from the first principal component of the optical
/// density cloud, min-max normalized; denser (darker) pixels map brighter.
/// A constant image yields a uniform 0.5 plane.
PlaneImage od_grayscale(const RgbImage& img);

}  // namespace lumistack

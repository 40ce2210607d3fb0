#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "lumistack/image.hpp"

namespace lumistack {

/// Per-pixel log-chromaticity rho = log(R_k / geometric_mean(R)). Every
/// vector is orthogonal to (1, 1, 1).
using LogChroma = Raster<Vec3>;

/// Per-pixel 2-D coordinates chi = U * rho in the plane orthogonal to
/// (1, 1, 1).
using ChiPlane = Raster<Vec2>;

/// Rows of U: an orthonormal basis of the plane orthogonal to (1, 1, 1), so
/// that U * U^T = I and U^T * U = I - u * u^T.
inline const std::array<Vec3, 2> kPlaneBasis = {
    Vec3{1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0},
    Vec3{1.0 / std::sqrt(6.0), 1.0 / std::sqrt(6.0), -2.0 / std::sqrt(6.0)},
};

inline constexpr int kFirstAngle = 1;
inline constexpr int kLastAngle = 180;
inline constexpr double kLowerPercentile = 5.0;
inline constexpr double kUpperPercentile = 95.0;

struct EntropyScan {
  std::vector<int> angles;        // degrees, kFirstAngle..kLastAngle
  std::vector<double> entropies;  // +inf where the histogram is degenerate
  int best_angle = 0;
  double min_entropy = 0.0;
};

/// Log-chromaticity of a single positive triple.
Vec3 log_chromaticity(const Vec3& rgb) noexcept;

/// 8-bit pathway; zero channels are raised to 1 first.
LogChroma log_chromaticity(const RgbImage& img);

/// Floating-point pathway; every component must be finite and positive.
LogChroma log_chromaticity(const LinearRgbImage& img);

Vec2 project_chi(const Vec3& rho) noexcept;
ChiPlane project_chi(const LogChroma& lc);

/// chi_1 cos(w) + chi_2 sin(w) for every pixel; the raw log-domain
/// grayscale image.
PlaneImage project_at_angle(const ChiPlane& chi, double degrees);

/// Shannon entropy (natural log) of the histogram of `samples` restricted
/// to [5th, 95th] percentile (inclusive, linear interpolation), with bin
/// width 3.5 * std * N^(-1/3) over the kept samples and bins anchored at
/// the smallest kept value. Returns +inf if fewer than two distinct values
/// survive the trim. Reorders `samples`.
double trimmed_histogram_entropy(std::span<double> samples);

double entropy_for_angle(const ChiPlane& chi, int degrees);

/// Evaluates every integer angle in [1, 180]; the smallest angle wins ties.
/// Throws DegenerateImageError when every angle is degenerate.
EntropyScan min_entropy_angle(const ChiPlane& chi);

/// exp(I - max(I)) of the projection at `degrees`, min-max normalized.
PlaneImage intrinsic_from_chi(const ChiPlane& chi, double degrees);

struct IntrinsicResult {
  PlaneImage image;
  EntropyScan scan;
};

IntrinsicResult compute_intrinsic(const ChiPlane& chi);

/// Illumination-invariant grayscale image in [0, 1].
PlaneImage intrinsic_image(const RgbImage& img);
PlaneImage intrinsic_image(const LinearRgbImage& img);

}  // namespace lumistack

#include "lumistack/intrinsic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace lumistack {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double radians(double degrees) { return degrees * std::numbers::pi / 180.0; }

// Linear-interpolation percentile of the unsorted `v`; partially reorders it.
double percentile(std::span<double> v, double q) {
  const double pos = q / 100.0 * static_cast<double>(v.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(i);
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(i), v.end());
  const double a = v[i];
  if (frac == 0.0 || i + 1 >= v.size()) return a;
  const double b = *std::min_element(v.begin() + static_cast<std::ptrdiff_t>(i) + 1, v.end());
  return a + frac * (b - a);
}

void project_into(const ChiPlane& chi, double degrees, std::vector<double>& out) {
  const double c = std::cos(radians(degrees));
  const double s = std::sin(radians(degrees));
  out.resize(chi.size());
  for (std::size_t i = 0; i < chi.size(); ++i) out[i] = chi[i][0] * c + chi[i][1] * s;
}

void check_angle(int degrees) {
  if (degrees < kFirstAngle || degrees > kLastAngle) {
    throw InvalidArgument("projection angle must be in [1, 180], got " + std::to_string(degrees));
  }
}

}  // namespace

Vec3 log_chromaticity(const Vec3& rgb) noexcept {
  const Vec3 logs = {std::log(rgb[0]), std::log(rgb[1]), std::log(rgb[2])};
  const double log_mean = (logs[0] + logs[1] + logs[2]) / 3.0;
  return {logs[0] - log_mean, logs[1] - log_mean, logs[2] - log_mean};
}

LogChroma log_chromaticity(const RgbImage& img) {
  // Only 255 distinct clamped levels exist; tabulate their logarithms.
  std::array<double, 256> log_level{};
  for (int v = 0; v < 256; ++v) log_level[v] = std::log(static_cast<double>(clamp_black(v)));
  return map_pixels(img, [&](const Rgb8& px) {
    const Vec3 logs = {log_level[px[0]], log_level[px[1]], log_level[px[2]]};
    const double log_mean = (logs[0] + logs[1] + logs[2]) / 3.0;
    return Vec3{logs[0] - log_mean, logs[1] - log_mean, logs[2] - log_mean};
  });
}

LogChroma log_chromaticity(const LinearRgbImage& img) {
  for (const auto& px : img) {
    for (double c : px) {
      if (!(c > 0.0) || !std::isfinite(c)) {
        throw InvalidArgument("linear RGB components must be finite and positive");
      }
    }
  }
  return map_pixels(img, [](const Vec3& px) { return log_chromaticity(px); });
}

Vec2 project_chi(const Vec3& rho) noexcept {
  Vec2 out{};
  for (int r = 0; r < 2; ++r) {
    out[r] = kPlaneBasis[r][0] * rho[0] + kPlaneBasis[r][1] * rho[1] + kPlaneBasis[r][2] * rho[2];
  }
  return out;
}

ChiPlane project_chi(const LogChroma& lc) {
  return map_pixels(lc, [](const Vec3& rho) { return project_chi(rho); });
}

PlaneImage project_at_angle(const ChiPlane& chi, double degrees) {
  std::vector<double> values;
  project_into(chi, degrees, values);
  return PlaneImage(chi.width(), chi.height(), std::move(values));
}

double trimmed_histogram_entropy(std::span<double> samples) {
  if (samples.size() < 2) return kInf;
  const double lo = percentile(samples, kLowerPercentile);
  const double hi = percentile(samples, kUpperPercentile);
  if (!(hi > lo)) return kInf;

  std::size_t n = 0;
  double sum = 0.0;
  double kept_min = kInf;
  double kept_max = -kInf;
  for (double v : samples) {
    if (v < lo || v > hi) continue;
    ++n;
    sum += v;
    kept_min = std::min(kept_min, v);
    kept_max = std::max(kept_max, v);
  }
  if (n < 2 || !(kept_max > kept_min)) return kInf;

  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double v : samples) {
    if (v < lo || v > hi) continue;
    ss += (v - mean) * (v - mean);
  }
  const double stddev = std::sqrt(ss / static_cast<double>(n));
  const double width = 3.5 * stddev / std::cbrt(static_cast<double>(n));
  if (!(width > 0.0)) return kInf;

  const auto bins = static_cast<std::size_t>(std::floor((kept_max - kept_min) / width)) + 1;
  std::vector<std::size_t> counts(bins, 0);
  for (double v : samples) {
    if (v < lo || v > hi) continue;
    const auto b = static_cast<std::size_t>(std::floor((v - kept_min) / width));
    ++counts[std::min(b, bins - 1)];
  }

  double entropy = 0.0;
  const double total = static_cast<double>(n);
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    entropy -= p * std::log(p);
  }
  return entropy;
}

double entropy_for_angle(const ChiPlane& chi, int degrees) {
  check_angle(degrees);
  std::vector<double> values;
  project_into(chi, degrees, values);
  return trimmed_histogram_entropy(values);
}

EntropyScan min_entropy_angle(const ChiPlane& chi) {
  EntropyScan scan;
  scan.angles.reserve(kLastAngle);
  scan.entropies.reserve(kLastAngle);
  scan.min_entropy = kInf;

  std::vector<double> values;
  for (int deg = kFirstAngle; deg <= kLastAngle; ++deg) {
    project_into(chi, deg, values);
    const double eta = trimmed_histogram_entropy(values);
    scan.angles.push_back(deg);
    scan.entropies.push_back(eta);
    if (eta < scan.min_entropy) {
      scan.min_entropy = eta;
      scan.best_angle = deg;
    }
  }
  if (scan.best_angle == 0) throw DegenerateImageError();
  return scan;
}

PlaneImage intrinsic_from_chi(const ChiPlane& chi, double degrees) {
  PlaneImage projected = project_at_angle(chi, degrees);
  const double peak = *std::max_element(projected.begin(), projected.end());
  for (double& v : projected) v = std::exp(v - peak);
  return normalize_minmax(projected);
}

IntrinsicResult compute_intrinsic(const ChiPlane& chi) {
  EntropyScan scan = min_entropy_angle(chi);
  PlaneImage image = intrinsic_from_chi(chi, scan.best_angle);
  return {std::move(image), std::move(scan)};
}

PlaneImage intrinsic_image(const RgbImage& img) {
  return compute_intrinsic(project_chi(log_chromaticity(img))).image;
}

PlaneImage intrinsic_image(const LinearRgbImage& img) {
  return compute_intrinsic(project_chi(log_chromaticity(img))).image;
}

}  // namespace lumistack

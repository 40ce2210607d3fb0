#include "lumistack/odgray.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace lumistack {

namespace {

void orient(Vec3& axis) {
  const double dot = axis[0] + axis[1] + axis[2];
  bool flip = dot < 0.0;
  if (dot == 0.0) {
    std::size_t big = 0;
    for (std::size_t k = 1; k < 3; ++k) {
      if (std::abs(axis[k]) > std::abs(axis[big])) big = k;
    }
    flip = axis[big] < 0.0;
  }
  if (flip) {
    for (double& c : axis) c = -c;
  }
}

}  // namespace

OdCloud to_optical_density(const RgbImage& img) {
  std::array<double, 256> density{};
  for (int v = 0; v < 256; ++v) {
    density[v] = -std::log(static_cast<double>(clamp_black(v)) / kMaxLevel);
  }
  return map_pixels(img, [&](const Rgb8& px) {
    return Vec3{density[px[0]], density[px[1]], density[px[2]]};
  });
}

OdCloud to_optical_density(const LinearRgbImage& img) {
  return map_pixels(img, [](const Vec3& px) {
    Vec3 od{};
    for (int k = 0; k < 3; ++k) {
      if (!(px[k] > 0.0) || !(px[k] <= 1.0)) {
        throw InvalidArgument("optical density needs radiances in (0, 1]");
      }
      od[k] = -std::log(px[k]);
    }
    return od;
  });
}

PcaResult pca3(std::span<const Vec3> rows) {
  if (rows.size() < 2) throw InvalidArgument("PCA needs at least two samples");

  PcaResult out;
  const double n = static_cast<double>(rows.size());
  for (const Vec3& r : rows) {
    for (int k = 0; k < 3; ++k) out.mean[k] += r[k];
  }
  for (double& m : out.mean) m /= n;

  const bool constant = std::all_of(rows.begin(), rows.end(),
                                    [&](const Vec3& r) { return r == rows.front(); });

  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  if (!constant) {
    for (const Vec3& r : rows) {
      const Eigen::Vector3d d(r[0] - out.mean[0], r[1] - out.mean[1], r[2] - out.mean[2]);
      cov.noalias() += d * d.transpose();
    }
    cov /= (n - 1.0);
  }

  if (constant || !(cov.trace() > 0.0)) {
    out.degenerate = true;
    out.components = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    return out;
  }

  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
  // Eigen sorts ascending; report descending.
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    const int src = 2 - i;
    out.eigenvalues[i] = solver.eigenvalues()(src);
    for (int k = 0; k < 3; ++k) out.components[i][k] = solver.eigenvectors()(k, src);
    orient(out.components[i]);
    total += std::max(out.eigenvalues[i], 0.0);
  }
  for (int i = 0; i < 3; ++i) {
    out.explained_variance_ratio[i] = std::max(out.eigenvalues[i], 0.0) / total;
  }
  return out;
}

double project_onto(const PcaResult& pca, const Vec3& row, int component) noexcept {
  const Vec3& axis = pca.components[component];
  double acc = 0.0;
  for (int k = 0; k < 3; ++k) acc += (row[k] - pca.mean[k]) * axis[k];
  return acc;
}

PlaneImage od_grayscale(const RgbImage& img) {
  const OdCloud cloud = to_optical_density(img);
  if (cloud.size() < 2) return PlaneImage(img.width(), img.height(), 0.5);
  const PcaResult pca = pca3(cloud.pixels());
  if (pca.degenerate) return PlaneImage(img.width(), img.height(), 0.5);

  PlaneImage projected = map_pixels(cloud, [&](const Vec3& od) { return project_onto(pca, od, 0); });
  const auto [lo, hi] = std::minmax_element(projected.begin(), projected.end());
  if (!(*hi > *lo)) return PlaneImage(img.width(), img.height(), 0.5);
  return normalize_minmax(projected);
}

}  // namespace lumistack

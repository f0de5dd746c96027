// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0
//
// Portable reference kernels. Every SIMD variant is tested against these.

#include "artic/kernels.hpp"

namespace artic::kernels::scalar {

void squared_distances(const SoaView& points, const Point3& query, double* out) {
  const double qx = query.x(), qy = query.y(), qz = query.z();
  for (std::size_t i = 0; i < points.size; ++i) {
    const double dx = points.x[i] - qx;
    const double dy = points.y[i] - qy;
    const double dz = points.z[i] - qz;
    out[i] = (dx * dx + dy * dy) + dz * dz;
  }
}

PairMoments pair_moments(std::span<const Point3> a, std::span<const Point3> b) {
  PairMoments m;
  const std::size_t n = a.size();
  if (n == 0 || b.size() != n) return m;
  Eigen::Vector3d sa = Eigen::Vector3d::Zero(), sb = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    sa += a[i];
    sb += b[i];
  }
  m.centroid_a = sa / static_cast<double>(n);
  m.centroid_b = sb / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector3d da = a[i] - m.centroid_a;
    const Eigen::Vector3d db = b[i] - m.centroid_b;
    m.cross.noalias() += da * db.transpose();
  }
  return m;
}

void transform_points(const Eigen::Matrix3d& r, const Eigen::Vector3d& t,
                      std::span<const Point3> in, std::span<Point3> out) {
  for (std::size_t i = 0; i < in.size(); ++i) {
    const double x = in[i].x(), y = in[i].y(), z = in[i].z();
    out[i] = Point3(((r(0, 0) * x + r(0, 1) * y) + r(0, 2) * z) + t.x(),
                    ((r(1, 0) * x + r(1, 1) * y) + r(1, 2) * z) + t.y(),
                    ((r(2, 0) * x + r(2, 1) * y) + r(2, 2) * z) + t.z());
  }
}

}  // namespace artic::kernels::scalar

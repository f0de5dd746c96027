// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0
//
// Core 3D types and closed-form rigid alignment.

#ifndef ARTIC_GEOMETRY_HPP_
#define ARTIC_GEOMETRY_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace artic {

/// A point in metres. Components are expected to be finite.
using Point3 = Eigen::Vector3d;

/// Ordered list of points. Iteration order is insertion order and every
/// algorithm in the library preserves it unless documented otherwise.
struct PointCloud {
  std::vector<Point3> points;

  PointCloud() = default;
  explicit PointCloud(std::vector<Point3> pts) : points(std::move(pts)) {}

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
  const Point3& operator[](std::size_t i) const { return points[i]; }
  Point3& operator[](std::size_t i) { return points[i]; }
  auto begin() const { return points.begin(); }
  auto end() const { return points.end(); }
  std::span<const Point3> view() const { return points; }

  /// True when every coordinate is finite.
  bool all_finite() const;

  friend bool operator==(const PointCloud&, const PointCloud&) = default;
};

/// Returns q or -q, whichever satisfies w > 0, or w == 0 with the first
/// nonzero of (x, y, z) positive. q and -q are the same rotation; the
/// canonical representative keeps motion keys from splitting on sign.
Eigen::Quaterniond canonical_quaternion(const Eigen::Quaterniond& q);

/// Element of SE(3): unit quaternion (w, x, y, z) plus translation.
/// Instances built through the public constructors are always normalized
/// and in canonical sign.
class RigidTransform {
 public:
  RigidTransform();
  RigidTransform(const Eigen::Quaterniond& rotation, const Eigen::Vector3d& translation);
  RigidTransform(const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation);

  static RigidTransform identity() { return {}; }
  static RigidTransform from_translation(const Eigen::Vector3d& t);
  /// Rotation by `angle` radians about the line through `pivot` along `axis`.
  static RigidTransform about_axis(const Point3& pivot, const Eigen::Vector3d& axis, double angle);

  const Eigen::Quaterniond& rotation() const noexcept { return rotation_; }
  const Eigen::Vector3d& translation() const noexcept { return translation_; }
  Eigen::Matrix3d rotation_matrix() const { return rotation_.toRotationMatrix(); }
  Eigen::Matrix4d matrix() const;

  /// Rotation angle in [0, pi].
  double angle() const;

  Point3 apply(const Point3& p) const { return rotation_ * p + translation_; }
  RigidTransform inverse() const;
  /// (this * other)(p) == this(other(p)).
  RigidTransform operator*(const RigidTransform& other) const;

 private:
  Eigen::Quaterniond rotation_;
  Eigen::Vector3d translation_;
};

struct Aabb {
  Point3 min;
  Point3 max;

  /// Throws EmptyCloud for an empty input.
  static Aabb of(std::span<const Point3> points);
  double diagonal() const { return (max - min).norm(); }
  bool contains(const Point3& p) const;
};

/// Least-squares rigid transform T minimising sum |T*source_i - target_i|^2
/// for paired points (Kabsch, no scale). The result is always a proper
/// rotation: when the SVD solution is a reflection the singular vector of
/// the smallest singular value is flipped.
///
/// Throws DegenerateCorrespondences for fewer than 3 pairs, mismatched
/// sizes, or a cross-covariance of rank < 2 (collinear or coincident).
RigidTransform fit_rigid(std::span<const Point3> source, std::span<const Point3> target);

/// Canonical unit quaternion of an orthonormal matrix with det +1.
/// Throws NotARotation when orthonormality or the determinant is off by
/// more than 1e-6.
Eigen::Quaterniond rotation_to_quaternion(const Eigen::Matrix3d& rotation);

PointCloud transform_apply(const PointCloud& cloud, const RigidTransform& transform);

/// Length of the axis-aligned bounding-box diagonal. Used as the cheap
/// stand-in for an object's diameter. Throws EmptyCloud.
double aabb_diagonal(const PointCloud& cloud);

}  // namespace artic

#endif  // ARTIC_GEOMETRY_HPP_

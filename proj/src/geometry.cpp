// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0

#include "artic/geometry.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "artic/error.hpp"
#include "artic/kernels.hpp"

namespace artic {
namespace {

constexpr std::string_view kModule = "geometry";

}  // namespace

bool PointCloud::all_finite() const {
  for (const auto& p : points) {
    if (!p.allFinite()) return false;
  }
  return true;
}

Eigen::Quaterniond canonical_quaternion(const Eigen::Quaterniond& q) {
  const double comps[4] = {q.w(), q.x(), q.y(), q.z()};
  for (double c : comps) {
    if (c > 0.0) return q;
    if (c < 0.0) return Eigen::Quaterniond(-q.w(), -q.x(), -q.y(), -q.z());
  }
  return q;
}

RigidTransform::RigidTransform()
    : rotation_(Eigen::Quaterniond::Identity()), translation_(Eigen::Vector3d::Zero()) {}

RigidTransform::RigidTransform(const Eigen::Quaterniond& rotation,
                               const Eigen::Vector3d& translation)
    : rotation_(canonical_quaternion(rotation.normalized())), translation_(translation) {}

RigidTransform::RigidTransform(const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation)
    : rotation_(rotation_to_quaternion(rotation)), translation_(translation) {}

RigidTransform RigidTransform::from_translation(const Eigen::Vector3d& t) {
  return RigidTransform(Eigen::Quaterniond::Identity(), t);
}

RigidTransform RigidTransform::about_axis(const Point3& pivot, const Eigen::Vector3d& axis,
                                          double angle) {
  const Eigen::Quaterniond q(Eigen::AngleAxisd(angle, axis.normalized()));
  return RigidTransform(q, pivot - q * pivot);
}

Eigen::Matrix4d RigidTransform::matrix() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = rotation_matrix();
  m.topRightCorner<3, 1>() = translation_;
  return m;
}

double RigidTransform::angle() const {
  const double v = rotation_.vec().norm();
  return 2.0 * std::atan2(v, std::abs(rotation_.w()));
}

RigidTransform RigidTransform::inverse() const {
  const Eigen::Quaterniond inv = rotation_.conjugate();
  return RigidTransform(inv, -(inv * translation_));
}

RigidTransform RigidTransform::operator*(const RigidTransform& other) const {
  return RigidTransform(rotation_ * other.rotation_, rotation_ * other.translation_ + translation_);
}

Aabb Aabb::of(std::span<const Point3> points) {
  if (points.empty()) throw Error(ErrorCode::kEmptyCloud, kModule, "bounding box of an empty cloud");
  Aabb box{points.front(), points.front()};
  for (const auto& p : points) {
    box.min = box.min.cwiseMin(p);
    box.max = box.max.cwiseMax(p);
  }
  return box;
}

bool Aabb::contains(const Point3& p) const {
  return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
}

RigidTransform fit_rigid(std::span<const Point3> source, std::span<const Point3> target) {
  if (source.size() != target.size()) {
    throw Error(ErrorCode::kDegenerateCorrespondences, kModule,
                "source and target sizes differ (" + std::to_string(source.size()) + " vs " +
                    std::to_string(target.size()) + ")");
  }
  if (source.size() < 3) {
    throw Error(ErrorCode::kDegenerateCorrespondences, kModule,
                "need at least 3 pairs, got " + std::to_string(source.size()));
  }

  const kernels::PairMoments m = kernels::pair_moments(source, target);
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m.cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector3d sv = svd.singularValues();
  // Rank < 2 leaves a rotation about the point line undetermined.
  if (!(sv(0) > 0.0) || sv(1) <= 1e-12 * sv(0)) {
    throw Error(ErrorCode::kDegenerateCorrespondences, kModule,
                "cross-covariance has rank < 2 (collinear or coincident points)");
  }

  const Eigen::Matrix3d& u = svd.matrixU();
  Eigen::Matrix3d v = svd.matrixV();
  if ((v * u.transpose()).determinant() < 0.0) v.col(2) = -v.col(2);
  const Eigen::Matrix3d rotation = v * u.transpose();
  const Eigen::Vector3d translation = m.centroid_b - rotation * m.centroid_a;
  return RigidTransform(Eigen::Quaterniond(rotation), translation);
}

Eigen::Quaterniond rotation_to_quaternion(const Eigen::Matrix3d& rotation) {
  if (!rotation.allFinite()) {
    throw Error(ErrorCode::kNotARotation, kModule, "matrix has non-finite entries");
  }
  const double ortho_err = (rotation.transpose() * rotation - Eigen::Matrix3d::Identity())
                               .cwiseAbs()
                               .maxCoeff();
  const double det = rotation.determinant();
  if (ortho_err > 1e-6 || std::abs(det - 1.0) > 1e-6) {
    throw Error(ErrorCode::kNotARotation, kModule,
                "orthonormality error " + std::to_string(ortho_err) + ", det " +
                    std::to_string(det));
  }
  // Eigen uses Shepperd's branch on the largest diagonal term, which stays
  // well conditioned near 180 degrees.
  return canonical_quaternion(Eigen::Quaterniond(rotation).normalized());
}

PointCloud transform_apply(const PointCloud& cloud, const RigidTransform& transform) {
  PointCloud out;
  out.points.resize(cloud.size());
  kernels::transform_points(transform.rotation_matrix(), transform.translation(), cloud.points,
                            out.points);
  return out;
}

double aabb_diagonal(const PointCloud& cloud) { return Aabb::of(cloud.points).diagonal(); }

}  // namespace artic

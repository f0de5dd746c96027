// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0
//
// Ground-truth scenes: sampled primitive surfaces moved by closed-form
// per-frame transforms, plus a z-buffer depth renderer.

#ifndef ARTIC_SYNTHETIC_HPP_
#define ARTIC_SYNTHETIC_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "artic/geometry.hpp"
#include "artic/preprocess.hpp"

namespace artic {

enum class ShapeKind { kBox, kCylinder, kPanel };
enum class MotionKind { kStatic, kRigid, kRevolute, kPrismatic };

std::string_view to_string(ShapeKind kind);
std::string_view to_string(MotionKind kind);
std::optional<ShapeKind> parse_shape_kind(std::string_view text);
std::optional<MotionKind> parse_motion_kind(std::string_view text);

/// Box: full extents (x, y, z). Cylinder: (radius, unused, height) along the
/// local z axis. Panel: a slab of extents (x, y) and thickness z, sampled on
/// its two large faces. Shapes are centred on the local origin.
struct PartSpec {
  ShapeKind shape = ShapeKind::kBox;
  Eigen::Vector3d dims = Eigen::Vector3d::Constant(0.1);
  std::size_t samples = 500;
  RigidTransform pose;
};

/// kRigid:     T(f) = Trans(f * velocity) * Rot(point, axis, f * rate)
/// kRevolute:  T(f) = Rot(point, axis, f * rate)        rate in rad/frame
/// kPrismatic: T(f) = Trans(f * rate * axis)             rate in m/frame
struct MotionSpec {
  MotionKind kind = MotionKind::kStatic;
  Point3 point = Point3::Zero();
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
  double rate = 0.0;
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();

  RigidTransform at(int frame) const;
};

struct SceneSpec {
  std::vector<PartSpec> parts;
  /// One per part.
  std::vector<MotionSpec> motions;
  int frame_count = 2;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;

  /// Throws InvalidSpec.
  void validate() const;
};

struct SyntheticSequence {
  std::vector<PointCloud> frames;
  /// truth[f][p]: pose of part p at frame f relative to frame 0.
  std::vector<std::vector<RigidTransform>> truth;
  /// Part id of every point; identical ordering in all frames.
  std::vector<int> part_of_point;
  /// Noise-free frame-0 samples per part.
  std::vector<PointCloud> part_samples;
};

/// Stratified surface samples of one part in its posed frame-0 placement.
PointCloud sample_part(const PartSpec& part, std::uint64_t seed, std::size_t part_index);

SyntheticSequence generate_sequence(const SceneSpec& spec);

/// Projects `frame` with a z-buffer into a width x height depth image. Points
/// falling outside the image are dropped. Throws PointBehindCamera when a
/// point has z <= 0.
DepthFrame render_depth(const PointCloud& frame, const CameraIntrinsics& intrinsics, int width,
                        int height);

/// Built-in scenes: "static", "tumble", "hinge", "slider". The seed also
/// perturbs sizes, axes and rates. Objects sit about 1 m in front of a camera
/// looking along +z.
SceneSpec preset_scene(std::string_view name, std::uint64_t seed, int frame_count,
                       double noise_sigma, std::size_t points_per_frame = 2000);
std::vector<std::string> preset_names();

/// Intrinsics of a 640x480 camera with a 60 degree horizontal field of view.
CameraIntrinsics default_intrinsics();

}  // namespace artic

#endif  // ARTIC_SYNTHETIC_HPP_

// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0
//
// Masked depth frame -> denoised, downsampled, smoothed object cloud.

#ifndef ARTIC_PREPROCESS_HPP_
#define ARTIC_PREPROCESS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "artic/geometry.hpp"

namespace artic {

struct CameraIntrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
};

/// Row-major depth (metres, 0 = invalid) and object mask of equal size.
struct DepthFrame {
  int width = 0;
  int height = 0;
  std::vector<double> depth;
  std::vector<std::uint8_t> mask;
  CameraIntrinsics intrinsics;
  int frame_index = 0;

  double depth_at(int u, int v) const { return depth[static_cast<std::size_t>(v) * width + u]; }
  bool masked(int u, int v) const { return mask[static_cast<std::size_t>(v) * width + u] != 0; }
  /// Throws InvalidArgument when sizes, depths or intrinsics are unusable.
  void validate() const;
};

struct PreprocessParams {
  /// Standard-deviation multiplier of the outlier filter.
  double std_ratio = 0.5;
  /// Neighbour count of the outlier filter as a fraction of the cloud size.
  double neighbor_fraction = 0.1;
  /// Upper bound on that neighbour count; 0 disables the cap.
  std::size_t max_neighbors = 200;
  /// Downsampling voxel edge; unset = object diagonal / 20.
  std::optional<double> voxel_size;
  /// Smoothing radius; unset = 5 x voxel edge.
  std::optional<double> smoothing_radius;

  void validate() const;
};

struct PreprocessResult {
  PointCloud cloud;
  /// Parameters actually used, after AUTO resolution.
  double voxel_size = 0.0;
  double smoothing_radius = 0.0;
  std::size_t raw_points = 0;
  std::size_t inlier_points = 0;
};

/// Pinhole back-projection of every masked pixel with positive depth, in
/// row-major pixel order.
PointCloud backproject(const DepthFrame& frame);

/// Neighbour count used by the outlier filter for a cloud of `n` points.
std::size_t outlier_neighbor_count(std::size_t n, double neighbor_fraction,
                                   std::size_t max_neighbors);

/// Keeps points whose mean distance to their k nearest neighbours is at most
/// mean + std_ratio * stddev of that statistic. Input order is preserved.
/// Throws EmptyCloud, TooFewPoints when the cloud has no more than k points.
PointCloud remove_statistical_outliers(const PointCloud& cloud, double std_ratio,
                                       double neighbor_fraction,
                                       std::size_t max_neighbors = 200);

/// Centroid per occupied cube of edge `voxel_size`, grid anchored at the
/// cloud's bounding-box minimum; output sorted by (ix, iy, iz).
PointCloud voxel_downsample(const PointCloud& cloud, double voxel_size);

/// Replaces each point by the centroid of all points within `radius`
/// (itself included).
PointCloud mean_smooth(const PointCloud& cloud, double radius);

/// Outlier removal, downsampling and smoothing of an already back-projected
/// object cloud. Throws FrameSkipped for an empty input.
PreprocessResult preprocess_cloud(const PointCloud& cloud, const PreprocessParams& params);

/// Full per-frame pipeline. Throws FrameSkipped when the mask selects no
/// valid depth.
PreprocessResult preprocess_frame(const DepthFrame& frame, const PreprocessParams& params);

}  // namespace artic

#endif  // ARTIC_PREPROCESS_HPP_

// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0

#include "artic/preprocess.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "artic/error.hpp"
#include "artic/nn_index.hpp"
#include "artic/parallel.hpp"

namespace artic {
namespace {

constexpr std::string_view kModule = "preprocess";

using Cell = std::array<std::int64_t, 3>;

Cell cell_of(const Point3& p, const Point3& origin, double edge) {
  return {static_cast<std::int64_t>(std::floor((p.x() - origin.x()) / edge)),
          static_cast<std::int64_t>(std::floor((p.y() - origin.y()) / edge)),
          static_cast<std::int64_t>(std::floor((p.z() - origin.z()) / edge))};
}

}  // namespace

void DepthFrame::validate() const {
  const auto n = static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0);
  if (width <= 0 || height <= 0 || depth.size() != n || mask.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, kModule,
                "frame " + std::to_string(frame_index) + ": depth/mask size mismatch");
  }
  if (!(intrinsics.fx > 0.0) || !(intrinsics.fy > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, kModule, "focal lengths must be positive");
  }
  for (double d : depth) {
    if (!std::isfinite(d) || d < 0.0) {
      throw Error(ErrorCode::kInvalidArgument, kModule,
                  "frame " + std::to_string(frame_index) + ": depth must be finite and >= 0");
    }
  }
}

void PreprocessParams::validate() const {
  if (!(std_ratio > 0.0)) throw Error(ErrorCode::kInvalidArgument, kModule, "s must be > 0");
  if (!(neighbor_fraction > 0.0 && neighbor_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, kModule, "neighbor fraction must be in (0, 1]");
  }
  if (voxel_size && !(*voxel_size > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, kModule, "voxel size must be > 0");
  }
  if (smoothing_radius && !(*smoothing_radius > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, kModule, "smoothing radius must be > 0");
  }
}

PointCloud backproject(const DepthFrame& frame) {
  frame.validate();
  const CameraIntrinsics& k = frame.intrinsics;
  PointCloud out;
  for (int v = 0; v < frame.height; ++v) {
    for (int u = 0; u < frame.width; ++u) {
      const double z = frame.depth_at(u, v);
      if (!frame.masked(u, v) || z <= 0.0) continue;
      out.points.emplace_back((u - k.cx) * z / k.fx, (v - k.cy) * z / k.fy, z);
    }
  }
  return out;
}

std::size_t outlier_neighbor_count(std::size_t n, double neighbor_fraction,
                                   std::size_t max_neighbors) {
  auto k = static_cast<std::size_t>(std::floor(neighbor_fraction * static_cast<double>(n)));
  k = std::max<std::size_t>(k, 1);
  if (max_neighbors > 0) k = std::min(k, max_neighbors);
  return k;
}

PointCloud remove_statistical_outliers(const PointCloud& cloud, double std_ratio,
                                       double neighbor_fraction, std::size_t max_neighbors) {
  if (cloud.empty()) throw Error(ErrorCode::kEmptyCloud, kModule, "outlier removal on empty cloud");
  const std::size_t k = outlier_neighbor_count(cloud.size(), neighbor_fraction, max_neighbors);
  if (cloud.size() <= k) {
    throw Error(ErrorCode::kTooFewPoints, kModule,
                std::to_string(cloud.size()) + " points, neighbour count " + std::to_string(k));
  }

  const NnIndex index(cloud);
  std::vector<double> mean_dist(cloud.size());
  parallel_for(cloud.size(), [&](std::size_t i) {
    const auto nbrs = index.knn(cloud[i], k, i);
    double sum = 0.0;
    for (const auto& n : nbrs) sum += n.distance;
    mean_dist[i] = sum / static_cast<double>(nbrs.size());
  });

  const double n = static_cast<double>(cloud.size());
  const double mu = std::accumulate(mean_dist.begin(), mean_dist.end(), 0.0) / n;
  double var = 0.0;
  for (double d : mean_dist) var += (d - mu) * (d - mu);
  const double sigma = std::sqrt(var / n);
  // The slack absorbs the rounding of mu when all statistics are equal.
  const double threshold = mu + std_ratio * sigma + 1e-12 * mu;

  PointCloud out;
  out.points.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (mean_dist[i] <= threshold) out.points.push_back(cloud[i]);
  }
  return out;
}

PointCloud voxel_downsample(const PointCloud& cloud, double voxel_size) {
  if (!(voxel_size > 0.0)) throw Error(ErrorCode::kInvalidArgument, kModule, "voxel size must be > 0");
  if (cloud.empty()) return {};
  const Point3 origin = Aabb::of(cloud.points).min;

  std::vector<std::pair<Cell, std::size_t>> keyed(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) keyed[i] = {cell_of(cloud[i], origin, voxel_size), i};
  std::sort(keyed.begin(), keyed.end());

  PointCloud out;
  for (std::size_t i = 0; i < keyed.size();) {
    std::size_t j = i;
    Eigen::Vector3d sum = Eigen::Vector3d::Zero();
    for (; j < keyed.size() && keyed[j].first == keyed[i].first; ++j) sum += cloud[keyed[j].second];
    out.points.push_back(sum / static_cast<double>(j - i));
    i = j;
  }
  return out;
}

PointCloud mean_smooth(const PointCloud& cloud, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::kInvalidArgument, kModule, "smoothing radius must be > 0");
  if (cloud.empty()) return {};
  const NnIndex index(cloud);
  PointCloud out;
  out.points.resize(cloud.size());
  parallel_for(cloud.size(), [&](std::size_t i) {
    const auto nbrs = index.radius(cloud[i], radius);
    Eigen::Vector3d sum = Eigen::Vector3d::Zero();
    for (std::size_t j : nbrs) sum += cloud[j];
    out.points[i] = nbrs.empty() ? cloud[i] : Point3(sum / static_cast<double>(nbrs.size()));
  });
  return out;
}

PreprocessResult preprocess_cloud(const PointCloud& cloud, const PreprocessParams& params) {
  params.validate();
  if (cloud.empty()) throw Error(ErrorCode::kFrameSkipped, kModule, "no object points");
  PreprocessResult r;
  r.raw_points = cloud.size();
  const PointCloud inliers = remove_statistical_outliers(cloud, params.std_ratio,
                                                         params.neighbor_fraction,
                                                         params.max_neighbors);
  r.inlier_points = inliers.size();
  r.voxel_size = params.voxel_size.value_or(aabb_diagonal(inliers) / 20.0);
  if (!(r.voxel_size > 0.0)) {
    throw Error(ErrorCode::kTooFewPoints, kModule, "object cloud has zero extent");
  }
  r.smoothing_radius = params.smoothing_radius.value_or(5.0 * r.voxel_size);
  r.cloud = mean_smooth(voxel_downsample(inliers, r.voxel_size), r.smoothing_radius);
  return r;
}

PreprocessResult preprocess_frame(const DepthFrame& frame, const PreprocessParams& params) {
  const PointCloud raw = backproject(frame);
  if (raw.empty()) {
    throw Error(ErrorCode::kFrameSkipped, kModule,
                "frame " + std::to_string(frame.frame_index) + ": empty object mask");
  }
  return preprocess_cloud(raw, params);
}

}  // namespace artic

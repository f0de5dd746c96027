// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0

#include "artic/icp.hpp"

#include <cmath>
#include <string>

#include "artic/error.hpp"

namespace artic {
namespace {

constexpr std::string_view kModule = "registration";

struct Matches {
  std::vector<Point3> source;
  std::vector<Point3> target;
  double sum_d2 = 0.0;

  std::size_t size() const { return source.size(); }
  double rmse() const { return source.empty() ? 0.0 : std::sqrt(sum_d2 / source.size()); }
};

Matches correspond(const PointCloud& moved, const PointCloud& target, const NnIndex& index,
                   double max_distance) {
  Matches m;
  m.source.reserve(moved.size());
  m.target.reserve(moved.size());
  for (const Point3& p : moved) {
    if (auto hit = index.nearest(p, max_distance)) {
      m.source.push_back(p);
      m.target.push_back(target[hit->index]);
      m.sum_d2 += hit->distance * hit->distance;
    }
  }
  return m;
}

void validate(const PointCloud& source, const PointCloud& target, const IcpParams& params) {
  if (params.max_iterations < 1) {
    throw Error(ErrorCode::kInvalidArgument, kModule, "max_iterations must be >= 1");
  }
  if (!params.max_correspondence_distance || !(*params.max_correspondence_distance > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, kModule,
                "max_correspondence_distance must be set and positive");
  }
  if (!(params.convergence_eps > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, kModule, "convergence_eps must be positive");
  }
  if (target.empty()) throw Error(ErrorCode::kEmptyCloud, kModule, "empty target cloud");
  if (source.size() < params.min_pair_count || source.empty()) {
    throw Error(ErrorCode::kNoCorrespondences, kModule,
                "source has " + std::to_string(source.size()) + " points, need " +
                    std::to_string(params.min_pair_count));
  }
}

}  // namespace

RegistrationResult icp(const PointCloud& source, const PointCloud& target,
                       const RigidTransform& init, const IcpParams& params) {
  validate(source, target, params);
  const NnIndex index(target);
  return icp(source, target, index, init, params);
}

RegistrationResult icp(const PointCloud& source, const PointCloud& target,
                       const NnIndex& target_index, const RigidTransform& init,
                       const IcpParams& params) {
  validate(source, target, params);
  const double max_distance = *params.max_correspondence_distance;
  const std::size_t min_pairs = std::max<std::size_t>(params.min_pair_count, 3);

  RegistrationResult result;
  RigidTransform pose = init;
  PointCloud moved = transform_apply(source, pose);
  Matches matches = correspond(moved, target, target_index, max_distance);
  if (matches.size() < min_pairs) {
    throw Error(ErrorCode::kNoCorrespondences, kModule,
                std::to_string(matches.size()) + " correspondences within " +
                    std::to_string(max_distance) + " m, need " + std::to_string(min_pairs));
  }

  std::optional<double> previous;
  for (int iter = 0; iter < params.max_iterations; ++iter) {
    const double rmse = matches.rmse();
    result.rmse_trace.push_back(rmse);
    result.iterations = iter + 1;
    if (rmse < params.convergence_eps ||
        (previous && std::abs(*previous - rmse) < params.convergence_eps)) {
      result.converged = true;
      break;
    }
    previous = rmse;

    const RigidTransform step = fit_rigid(matches.source, matches.target);
    pose = step * pose;
    moved = transform_apply(source, pose);
    matches = correspond(moved, target, target_index, max_distance);
    if (matches.size() < min_pairs) break;
  }

  result.transform = pose;
  result.matched_pairs = matches.size();
  result.fitness = static_cast<double>(matches.size()) / static_cast<double>(source.size());
  result.rmse = matches.rmse();
  return result;
}

}  // namespace artic

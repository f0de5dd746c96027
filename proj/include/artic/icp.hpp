// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0
//
// Point-to-point iterative closest point.

#ifndef ARTIC_ICP_HPP_
#define ARTIC_ICP_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "artic/geometry.hpp"
#include "artic/nn_index.hpp"

namespace artic {

struct IcpParams {
  int max_iterations = 50;
  /// Stop once the RMSE changes by less than this between iterations, or
  /// the RMSE itself drops below it (metres).
  double convergence_eps = 1e-6;
  /// Correspondences farther than this are rejected. Unset means "derive
  /// from context": the classifier uses half its voxel edge. icp() itself
  /// requires a value.
  std::optional<double> max_correspondence_distance;
  std::size_t min_pair_count = 3;
};

struct RegistrationResult {
  /// Maps source onto target.
  RigidTransform transform;
  /// Fraction of source points with a correspondence at the final pose.
  double fitness = 0.0;
  /// RMSE over the final correspondences.
  double rmse = 0.0;
  bool converged = false;
  std::size_t matched_pairs = 0;
  int iterations = 0;
  /// RMSE at the start of every iteration, in order.
  std::vector<double> rmse_trace;
};

/// Aligns `source` to `target` starting from `init`. Throws
/// NoCorrespondences when fewer than min_pair_count source points find a
/// partner on the first iteration, DegenerateCorrespondences from the
/// inner fit, and InvalidArgument for unusable parameters.
RegistrationResult icp(const PointCloud& source, const PointCloud& target,
                       const RigidTransform& init, const IcpParams& params);

/// Same, reusing a prebuilt index over `target`.
RegistrationResult icp(const PointCloud& source, const PointCloud& target,
                       const NnIndex& target_index, const RigidTransform& init,
                       const IcpParams& params);

}  // namespace artic

#endif  // ARTIC_ICP_HPP_

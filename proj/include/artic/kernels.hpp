// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0
//
// Data-parallel inner loops. Each kernel has a portable scalar reference in
// artic::kernels::scalar and, on x86-64, an AVX2 variant in
// artic::kernels::avx2. The free functions in artic::kernels dispatch to the
// best variant supported by the running CPU.
//
// squared_distances is bit-identical across variants (same operation order,
// no fused multiply-add), so nearest-neighbour tie-breaking never depends on
// the selected instruction set. The reductions in pair_moments may differ in
// the last bits because lanes are summed in a different order.
//
// Set ARTIC_SIMD=scalar in the environment to force the reference path.

#ifndef ARTIC_KERNELS_HPP_
#define ARTIC_KERNELS_HPP_

#include <cstddef>
#include <span>
#include <string_view>

#include "artic/geometry.hpp"

namespace artic::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view to_string(Isa isa);

/// Instruction set used by the dispatching entry points.
Isa active_isa();
/// Best instruction set the CPU and the build support.
Isa best_available_isa();
/// Overrides dispatch (tests and benchmarks). Requesting an unavailable ISA
/// falls back to scalar.
void set_active_isa(Isa isa);

/// Structure-of-arrays view of a point block.
struct SoaView {
  const double* x;
  const double* y;
  const double* z;
  std::size_t size;
};

/// Centroids and centred cross-covariance sum_i (a_i - ca)(b_i - cb)^T.
struct PairMoments {
  Eigen::Vector3d centroid_a = Eigen::Vector3d::Zero();
  Eigen::Vector3d centroid_b = Eigen::Vector3d::Zero();
  Eigen::Matrix3d cross = Eigen::Matrix3d::Zero();
};

/// out[i] = |p_i - query|^2 evaluated as (dx*dx + dy*dy) + dz*dz.
void squared_distances(const SoaView& points, const Point3& query, double* out);
PairMoments pair_moments(std::span<const Point3> a, std::span<const Point3> b);
/// out[i] = rotation * in[i] + translation. `in` and `out` may alias.
void transform_points(const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation,
                      std::span<const Point3> in, std::span<Point3> out);

namespace scalar {
void squared_distances(const SoaView& points, const Point3& query, double* out);
PairMoments pair_moments(std::span<const Point3> a, std::span<const Point3> b);
void transform_points(const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation,
                      std::span<const Point3> in, std::span<Point3> out);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void squared_distances(const SoaView& points, const Point3& query, double* out);
PairMoments pair_moments(std::span<const Point3> a, std::span<const Point3> b);
void transform_points(const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation,
                      std::span<const Point3> in, std::span<Point3> out);
}  // namespace avx2
#endif

}  // namespace artic::kernels

#endif  // ARTIC_KERNELS_HPP_

// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0
//
// In-frame motion classification by local region-to-region registration,
// and the temporal filter that turns per-pair decisions into an object
// verdict.
//
// For a pair of object clouds (a, b) the merged bounding box is cut into
// cubes of edge x. Every cube holding points of `a` is registered to the
// nearby points of `b` with ICP from the identity. Each accepted local
// transform is floor-quantised into an integer MotionKey; regions sharing a
// key share a motion. One key is either no motion or a rigid motion, two or
// more keys mean the object moved in several independent pieces.

#ifndef ARTIC_CLASSIFIER_HPP_
#define ARTIC_CLASSIFIER_HPP_

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "artic/geometry.hpp"
#include "artic/icp.hpp"

namespace artic {

enum class PairLabel { kNoMotion, kRigidMotion, kArticulatedMotion, kUnreliable };
enum class ObjectClass { kArticulated, kRigid, kNondeterministic };

/// "NM", "RM", "AM", "UNRELIABLE".
std::string_view to_string(PairLabel label);
/// "Articulated", "Rigid", "Nondeterministic".
std::string_view to_string(ObjectClass label);
std::optional<PairLabel> parse_pair_label(std::string_view text);

struct ClassifierParams {
  /// Region edge x in metres; unset = merged-cloud diagonal / 5.
  std::optional<double> voxel_size;
  double quaternion_bin = 0.1;
  double translation_bin = 0.1;
  /// Frame gap k between the two clouds of a pair.
  int frame_skip = 5;
  /// Advance between consecutive pairs; 0 means "same as frame_skip".
  int pair_stride = 0;
  /// Minimum fraction of eligible regions that must register.
  double alpha = 0.5;
  /// Registrations with ICP fitness below this are dropped.
  double confidence_min = 0.3;
  /// Mode-filter window (odd).
  int window = 5;
  /// Local motions that move every point of their region by less than
  /// still_displacement (m) count as no motion; 0 disables the noise floor.
  double still_displacement = 0.01;

  int effective_stride() const { return pair_stride > 0 ? pair_stride : frame_skip; }
  /// Throws InvalidArgument.
  void validate() const;
};

using CellIndex = std::array<std::int64_t, 3>;

struct VoxelRegion {
  CellIndex cell{};
  PointCloud points_a;
  PointCloud points_b;
};

struct VoxelGrid {
  Point3 origin = Point3::Zero();
  double edge = 0.0;
  /// Occupied cells in lexicographic order.
  std::vector<VoxelRegion> regions;
};

/// Cuts the merged bounding box of both clouds into cubes of edge `edge`
/// (unset = merged diagonal / 5) anchored at its minimum corner. Throws
/// EmptyCloud if either cloud is empty.
VoxelGrid voxel_partition(const PointCloud& cloud_a, const PointCloud& cloud_b,
                          std::optional<double> edge);

struct RegionRegistration {
  CellIndex cell{};
  RigidTransform transform;
  double fitness = 0.0;
  double rmse = 0.0;
  std::size_t matched_pairs = 0;
  Point3 centroid_a = Point3::Zero();
  /// Largest distance a point of the region's `a` side moves under `transform`.
  double displacement = 0.0;
};

struct RegionRegistrations {
  std::vector<RegionRegistration> kept;  // in region order
  std::size_t total_eligible = 0;        // regions with points of `a`
  std::size_t skipped = 0;               // eligible but not kept
  std::size_t skipped_occluded = 0;      // empty `b` side or too few `a` points
  std::size_t skipped_no_match = 0;      // ICP found no correspondences or degenerated
  std::size_t skipped_low_fitness = 0;
};

/// Registers every eligible region of `grid`. The ICP target of a region is
/// the part of `cloud_b` inside the region's cube grown by the
/// correspondence distance, so points that crossed a cube face keep their
/// partners. Regions whose own `b` side is empty are skipped as occluded.
RegionRegistrations register_regions(const VoxelGrid& grid, const PointCloud& cloud_b,
                                     const ClassifierParams& params, const IcpParams& icp_params);

/// Integer floor bins of the canonical quaternion (w, x, y, z) and of the
/// translation.
struct MotionKey {
  std::array<std::int64_t, 4> q{};
  std::array<std::int64_t, 3> t{};

  friend auto operator<=>(const MotionKey&, const MotionKey&) = default;
};

MotionKey quantize_transform(const RigidTransform& transform, double quaternion_bin,
                             double translation_bin);

/// True when the registration is inside the no-motion noise floor.
bool is_still(const RegionRegistration& reg, const ClassifierParams& params);

/// Key of a local motion: the quantised transform, or the quantised identity
/// for motions inside the noise floor.
MotionKey motion_key(const RegionRegistration& reg, const ClassifierParams& params);

/// The key that denotes "no motion".
MotionKey still_key(const ClassifierParams& params);

using MotionKeyTable = std::map<MotionKey, std::vector<CellIndex>>;

MotionKeyTable build_key_table(std::span<const RegionRegistration> kept,
                               const ClassifierParams& params);

struct FrameDecision {
  PairLabel label = PairLabel::kUnreliable;
  std::size_t key_count = 0;
  MotionKeyTable keys;
  /// Frame indices of the pair (set by classify_sequence).
  int first = 0;
  int second = 0;
  std::size_t kept = 0;
  std::size_t skipped = 0;
  std::size_t eligible = 0;
  double voxel_size = 0.0;
  double correspondence_distance = 0.0;
  RegionRegistrations registrations;
};

/// Partition, register, quantise and decide for one pair.
FrameDecision classify_pair(const PointCloud& cloud_a, const PointCloud& cloud_b,
                            const ClassifierParams& params, const IcpParams& icp_params);

/// Centred sliding-window majority over the reliable labels (UNRELIABLE
/// entries are dropped first). Windows are `window` long and slide inward at
/// the ends; ties go AM > RM > NM. Throws EmptyAfterExclusion.
std::vector<PairLabel> mode_filter(std::span<const PairLabel> labels, int window);

/// Articulated if any AM, else Rigid if any RM, else Nondeterministic.
ObjectClass verdict_of(std::span<const PairLabel> filtered);

struct IndexedCloud {
  int index = 0;
  PointCloud cloud;
};

struct ClassProbabilities {
  double articulated = 0.0;
  double rigid = 0.0;
  double no_motion = 0.0;
};

struct SequenceVerdict {
  ObjectClass label = ObjectClass::kNondeterministic;
  std::vector<FrameDecision> decisions;
  std::vector<PairLabel> filtered;
  /// Label frequencies over reliable, unfiltered pairs.
  ClassProbabilities probabilities;
  /// Set when every pair was UNRELIABLE.
  bool no_reliable_pairs = false;
};

/// Pairs list positions (j, j + frame_skip) for j = 0, stride, 2*stride, ...
/// Throws InsufficientFrames when no pair fits.
std::vector<std::pair<std::size_t, std::size_t>> sequence_pairs(std::size_t frame_count,
                                                                const ClassifierParams& params);

SequenceVerdict classify_sequence(std::span<const IndexedCloud> frames,
                                  const ClassifierParams& params, const IcpParams& icp_params);

}  // namespace artic

#endif  // ARTIC_CLASSIFIER_HPP_

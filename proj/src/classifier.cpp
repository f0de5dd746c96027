// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0

#include "artic/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "artic/error.hpp"
#include "artic/parallel.hpp"

namespace artic {
namespace {

constexpr std::string_view kModule = "classifier";

CellIndex cell_of(const Point3& p, const Point3& origin, double edge) {
  return {static_cast<std::int64_t>(std::floor((p.x() - origin.x()) / edge)),
          static_cast<std::int64_t>(std::floor((p.y() - origin.y()) / edge)),
          static_cast<std::int64_t>(std::floor((p.z() - origin.z()) / edge))};
}

std::int64_t floor_bin(double value, double width) {
  return static_cast<std::int64_t>(std::floor(value / width));
}

int precedence(PairLabel label) {
  switch (label) {
    case PairLabel::kArticulatedMotion: return 3;
    case PairLabel::kRigidMotion: return 2;
    case PairLabel::kNoMotion: return 1;
    case PairLabel::kUnreliable: return 0;
  }
  return 0;
}

// Indices of `cloud` inside the box [lo, hi], ascending.
std::vector<std::size_t> points_in_box(const std::map<CellIndex, std::vector<std::size_t>>& buckets,
                                       const PointCloud& cloud, const CellIndex& centre,
                                       std::int64_t rings, const Point3& lo, const Point3& hi) {
  std::vector<std::size_t> out;
  for (std::int64_t dx = -rings; dx <= rings; ++dx) {
    for (std::int64_t dy = -rings; dy <= rings; ++dy) {
      for (std::int64_t dz = -rings; dz <= rings; ++dz) {
        const auto it = buckets.find({centre[0] + dx, centre[1] + dy, centre[2] + dz});
        if (it == buckets.end()) continue;
        for (std::size_t i : it->second) {
          const Point3& p = cloud[i];
          if ((p.array() >= lo.array()).all() && (p.array() <= hi.array()).all()) out.push_back(i);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string_view to_string(PairLabel label) {
  switch (label) {
    case PairLabel::kNoMotion: return "NM";
    case PairLabel::kRigidMotion: return "RM";
    case PairLabel::kArticulatedMotion: return "AM";
    case PairLabel::kUnreliable: return "UNRELIABLE";
  }
  return "UNRELIABLE";
}

std::string_view to_string(ObjectClass label) {
  switch (label) {
    case ObjectClass::kArticulated: return "Articulated";
    case ObjectClass::kRigid: return "Rigid";
    case ObjectClass::kNondeterministic: return "Nondeterministic";
  }
  return "Nondeterministic";
}

std::optional<PairLabel> parse_pair_label(std::string_view text) {
  for (PairLabel l : {PairLabel::kNoMotion, PairLabel::kRigidMotion, PairLabel::kArticulatedMotion,
                      PairLabel::kUnreliable}) {
    if (to_string(l) == text) return l;
  }
  return std::nullopt;
}

void ClassifierParams::validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, kModule, what);
  };
  if (voxel_size && !(*voxel_size > 0.0)) fail("voxel size x must be > 0");
  if (!(quaternion_bin > 0.0)) fail("quaternion bin must be > 0");
  if (!(translation_bin > 0.0)) fail("translation bin must be > 0");
  if (frame_skip < 1) fail("frame skip k must be >= 1");
  if (pair_stride < 0) fail("pair stride must be >= 0");
  if (!(alpha > 0.0 && alpha <= 1.0)) fail("alpha must be in (0, 1]");
  if (!(confidence_min >= 0.0 && confidence_min <= 1.0)) fail("confidence must be in [0, 1]");
  if (window < 1 || window % 2 == 0) fail("window must be odd and >= 1");
  if (!(still_displacement >= 0.0)) fail("still displacement must be >= 0");
}

VoxelGrid voxel_partition(const PointCloud& cloud_a, const PointCloud& cloud_b,
                          std::optional<double> edge) {
  if (cloud_a.empty() || cloud_b.empty()) {
    throw Error(ErrorCode::kEmptyCloud, kModule, "voxel partition needs two non-empty clouds");
  }
  if (edge && !(*edge > 0.0)) throw Error(ErrorCode::kInvalidArgument, kModule, "voxel size x must be > 0");

  Aabb box = Aabb::of(cloud_a.points);
  const Aabb box_b = Aabb::of(cloud_b.points);
  box.min = box.min.cwiseMin(box_b.min);
  box.max = box.max.cwiseMax(box_b.max);

  VoxelGrid grid;
  grid.origin = box.min;
  grid.edge = edge.value_or(box.diagonal() / 5.0);
  if (!(grid.edge > 0.0)) grid.edge = 1.0;  // all points coincide: a single cell

  std::map<CellIndex, VoxelRegion> cells;
  for (const Point3& p : cloud_a) {
    const CellIndex c = cell_of(p, grid.origin, grid.edge);
    auto& region = cells[c];
    region.cell = c;
    region.points_a.points.push_back(p);
  }
  for (const Point3& p : cloud_b) {
    const CellIndex c = cell_of(p, grid.origin, grid.edge);
    auto& region = cells[c];
    region.cell = c;
    region.points_b.points.push_back(p);
  }
  grid.regions.reserve(cells.size());
  for (auto& [cell, region] : cells) grid.regions.push_back(std::move(region));
  return grid;
}

RegionRegistrations register_regions(const VoxelGrid& grid, const PointCloud& cloud_b,
                                     const ClassifierParams& params, const IcpParams& icp_params) {
  params.validate();
  IcpParams icp_cfg = icp_params;
  if (!icp_cfg.max_correspondence_distance) icp_cfg.max_correspondence_distance = grid.edge / 2.0;
  const double margin = *icp_cfg.max_correspondence_distance;
  const auto rings = static_cast<std::int64_t>(std::ceil(margin / grid.edge));

  std::map<CellIndex, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < cloud_b.size(); ++i) {
    buckets[cell_of(cloud_b[i], grid.origin, grid.edge)].push_back(i);
  }

  enum class Outcome { kIneligible, kKept, kOccluded, kNoMatch, kLowFitness };
  struct Slot {
    Outcome outcome = Outcome::kIneligible;
    RegionRegistration reg;
  };
  std::vector<Slot> slots(grid.regions.size());

  parallel_for(grid.regions.size(), [&](std::size_t r) {
    const VoxelRegion& region = grid.regions[r];
    Slot& slot = slots[r];
    if (region.points_a.empty()) return;
    if (region.points_b.empty() || region.points_a.size() < icp_cfg.min_pair_count) {
      slot.outcome = Outcome::kOccluded;
      return;
    }
    const Point3 corner =
        grid.origin + grid.edge * Point3(static_cast<double>(region.cell[0]),
                                         static_cast<double>(region.cell[1]),
                                         static_cast<double>(region.cell[2]));
    const auto idx = points_in_box(buckets, cloud_b, region.cell, rings,
                                   corner - Point3::Constant(margin),
                                   corner + Point3::Constant(grid.edge + margin));
    PointCloud target;
    target.points.reserve(idx.size());
    for (std::size_t i : idx) target.points.push_back(cloud_b[i]);

    try {
      const RegistrationResult res = icp(region.points_a, target, RigidTransform::identity(), icp_cfg);
      if (res.fitness < params.confidence_min) {
        slot.outcome = Outcome::kLowFitness;
        return;
      }
      Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
      double displacement = 0.0;
      for (const Point3& p : region.points_a) {
        centroid += p;
        displacement = std::max(displacement, (res.transform.apply(p) - p).norm());
      }
      slot.reg = RegionRegistration{region.cell, res.transform, res.fitness, res.rmse,
                                    res.matched_pairs,
                                    centroid / static_cast<double>(region.points_a.size()),
                                    displacement};
      slot.outcome = Outcome::kKept;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoCorrespondences &&
          e.code() != ErrorCode::kDegenerateCorrespondences) {
        throw;
      }
      slot.outcome = Outcome::kNoMatch;
    }
  });

  RegionRegistrations out;
  for (const Slot& slot : slots) {
    switch (slot.outcome) {
      case Outcome::kIneligible: continue;
      case Outcome::kKept: out.kept.push_back(slot.reg); break;
      case Outcome::kOccluded: ++out.skipped_occluded; break;
      case Outcome::kNoMatch: ++out.skipped_no_match; break;
      case Outcome::kLowFitness: ++out.skipped_low_fitness; break;
    }
    ++out.total_eligible;
  }
  out.skipped = out.total_eligible - out.kept.size();
  return out;
}

MotionKey quantize_transform(const RigidTransform& transform, double quaternion_bin,
                             double translation_bin) {
  const Eigen::Quaterniond q = canonical_quaternion(transform.rotation());
  const Eigen::Vector3d& t = transform.translation();
  MotionKey key;
  key.q = {floor_bin(q.w(), quaternion_bin), floor_bin(q.x(), quaternion_bin),
           floor_bin(q.y(), quaternion_bin), floor_bin(q.z(), quaternion_bin)};
  key.t = {floor_bin(t.x(), translation_bin), floor_bin(t.y(), translation_bin),
           floor_bin(t.z(), translation_bin)};
  return key;
}

bool is_still(const RegionRegistration& reg, const ClassifierParams& params) {
  return reg.displacement < params.still_displacement;
}

MotionKey still_key(const ClassifierParams& params) {
  return quantize_transform(RigidTransform::identity(), params.quaternion_bin,
                            params.translation_bin);
}

MotionKey motion_key(const RegionRegistration& reg, const ClassifierParams& params) {
  if (is_still(reg, params)) return still_key(params);
  return quantize_transform(reg.transform, params.quaternion_bin, params.translation_bin);
}

MotionKeyTable build_key_table(std::span<const RegionRegistration> kept,
                               const ClassifierParams& params) {
  MotionKeyTable table;
  for (const auto& reg : kept) table[motion_key(reg, params)].push_back(reg.cell);
  return table;
}

FrameDecision classify_pair(const PointCloud& cloud_a, const PointCloud& cloud_b,
                            const ClassifierParams& params, const IcpParams& icp_params) {
  params.validate();
  const VoxelGrid grid = voxel_partition(cloud_a, cloud_b, params.voxel_size);
  FrameDecision d;
  d.voxel_size = grid.edge;
  d.correspondence_distance = icp_params.max_correspondence_distance.value_or(grid.edge / 2.0);
  d.registrations = register_regions(grid, cloud_b, params, icp_params);
  d.kept = d.registrations.kept.size();
  d.skipped = d.registrations.skipped;
  d.eligible = d.registrations.total_eligible;
  d.keys = build_key_table(d.registrations.kept, params);
  d.key_count = d.keys.size();

  const bool reliable =
      d.eligible > 0 && static_cast<double>(d.kept) >= params.alpha * static_cast<double>(d.eligible);
  if (!reliable || d.key_count == 0) {
    d.label = PairLabel::kUnreliable;
  } else if (d.key_count >= 2) {
    d.label = PairLabel::kArticulatedMotion;
  } else if (d.keys.begin()->first == still_key(params)) {
    d.label = PairLabel::kNoMotion;
  } else {
    d.label = PairLabel::kRigidMotion;
  }
  return d;
}

std::vector<PairLabel> mode_filter(std::span<const PairLabel> labels, int window) {
  if (window < 1 || window % 2 == 0) {
    throw Error(ErrorCode::kInvalidArgument, kModule, "window must be odd and >= 1");
  }
  std::vector<PairLabel> reliable;
  for (PairLabel l : labels) {
    if (l != PairLabel::kUnreliable) reliable.push_back(l);
  }
  if (reliable.empty()) {
    throw Error(ErrorCode::kEmptyAfterExclusion, kModule, "no reliable pair decisions");
  }

  const std::size_t n = reliable.size();
  const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(window), n);
  const std::size_t half = w / 2;
  std::vector<PairLabel> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t start = std::min(i >= half ? i - half : 0, n - w);
    int counts[4] = {0, 0, 0, 0};
    for (std::size_t j = start; j < start + w; ++j) ++counts[precedence(reliable[j])];
    PairLabel best = PairLabel::kNoMotion;
    int best_count = -1;
    for (PairLabel l : {PairLabel::kArticulatedMotion, PairLabel::kRigidMotion, PairLabel::kNoMotion}) {
      if (counts[precedence(l)] > best_count) {
        best = l;
        best_count = counts[precedence(l)];
      }
    }
    out[i] = best;
  }
  return out;
}

ObjectClass verdict_of(std::span<const PairLabel> filtered) {
  const auto has = [&](PairLabel l) {
    return std::find(filtered.begin(), filtered.end(), l) != filtered.end();
  };
  if (has(PairLabel::kArticulatedMotion)) return ObjectClass::kArticulated;
  if (has(PairLabel::kRigidMotion)) return ObjectClass::kRigid;
  return ObjectClass::kNondeterministic;
}

std::vector<std::pair<std::size_t, std::size_t>> sequence_pairs(std::size_t frame_count,
                                                                const ClassifierParams& params) {
  params.validate();
  const auto k = static_cast<std::size_t>(params.frame_skip);
  const auto stride = static_cast<std::size_t>(params.effective_stride());
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j + k < frame_count; j += stride) pairs.emplace_back(j, j + k);
  if (pairs.empty()) {
    throw Error(ErrorCode::kInsufficientFrames, kModule,
                std::to_string(frame_count) + " frame(s) available, need at least " +
                    std::to_string(k + 1) + " for frame skip " + std::to_string(k));
  }
  return pairs;
}

SequenceVerdict classify_sequence(std::span<const IndexedCloud> frames,
                                  const ClassifierParams& params, const IcpParams& icp_params) {
  const auto pairs = sequence_pairs(frames.size(), params);
  SequenceVerdict v;
  v.decisions.reserve(pairs.size());
  for (const auto& [i, j] : pairs) {
    FrameDecision d = classify_pair(frames[i].cloud, frames[j].cloud, params, icp_params);
    d.first = frames[i].index;
    d.second = frames[j].index;
    v.decisions.push_back(std::move(d));
  }

  std::vector<PairLabel> labels;
  std::size_t am = 0, rm = 0, nm = 0;
  for (const auto& d : v.decisions) {
    labels.push_back(d.label);
    am += d.label == PairLabel::kArticulatedMotion;
    rm += d.label == PairLabel::kRigidMotion;
    nm += d.label == PairLabel::kNoMotion;
  }
  const std::size_t reliable = am + rm + nm;
  if (reliable == 0) {
    v.no_reliable_pairs = true;
    v.label = ObjectClass::kNondeterministic;
    return v;
  }
  v.probabilities = {static_cast<double>(am) / reliable, static_cast<double>(rm) / reliable,
                     static_cast<double>(nm) / reliable};
  v.filtered = mode_filter(labels, params.window);
  v.label = verdict_of(v.filtered);
  return v;
}

}  // namespace artic

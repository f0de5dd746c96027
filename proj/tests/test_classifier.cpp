// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <set>

#include "artic/classifier.hpp"
#include "artic/error.hpp"
#include "artic/synthetic.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace artic;
using namespace artic::testing;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
using L = PairLabel;

PointCloud box(std::uint64_t seed, Eigen::Vector3d dims, std::size_t n) {
  PartSpec part;
  part.shape = ShapeKind::kBox;
  part.dims = dims;
  part.samples = n;
  return sample_part(part, seed, 0);
}

// Floor bins computed directly from a canonical (w >= 0) quaternion.
std::array<long, 7> direct_bins(const Eigen::Matrix3d& r, const Eigen::Vector3d& t, double qb, double tb) {
  Eigen::Quaterniond q(r);
  q.normalize();
  double c[4] = {q.w(), q.x(), q.y(), q.z()};
  bool flip = c[0] < 0;
  if (c[0] == 0) {
    for (int i = 1; i < 4; ++i) {
      if (c[i] != 0) {
        flip = c[i] < 0;
        break;
      }
    }
  }
  if (flip)
    for (double& v : c) v = -v;
  return {static_cast<long>(std::floor(c[0] / qb)), static_cast<long>(std::floor(c[1] / qb)),
          static_cast<long>(std::floor(c[2] / qb)), static_cast<long>(std::floor(c[3] / qb)),
          static_cast<long>(std::floor(t.x() / tb)), static_cast<long>(std::floor(t.y() / tb)),
          static_cast<long>(std::floor(t.z() / tb))};
}

std::array<long, 7> flat(const MotionKey& k) {
  return {static_cast<long>(k.q[0]), static_cast<long>(k.q[1]), static_cast<long>(k.q[2]),
          static_cast<long>(k.q[3]), static_cast<long>(k.t[0]), static_cast<long>(k.t[1]),
          static_cast<long>(k.t[2])};
}

// Clamped-window mode written independently of the library.
std::vector<L> oracle_mode(const std::vector<L>& in, int w) {
  std::vector<L> r;
  for (L l : in)
    if (l != L::kUnreliable) r.push_back(l);
  const int n = static_cast<int>(r.size());
  const int width = std::min(w, n);
  std::vector<L> out;
  for (int i = 0; i < n; ++i) {
    int start = std::max(0, i - width / 2);
    start = std::min(start, n - width);
    int am = 0, rm = 0, nm = 0;
    for (int j = start; j < start + width; ++j) {
      am += r[j] == L::kArticulatedMotion;
      rm += r[j] == L::kRigidMotion;
      nm += r[j] == L::kNoMotion;
    }
    if (am >= rm && am >= nm) out.push_back(L::kArticulatedMotion);
    else if (rm >= nm) out.push_back(L::kRigidMotion);
    else out.push_back(L::kNoMotion);
  }
  return out;
}

SceneSpec hinge_spec(double opening_per_frame, int frames, double noise) {
  SceneSpec spec;
  PartSpec base;
  base.shape = ShapeKind::kPanel;
  base.dims = {0.4, 0.3, 0.02};
  base.samples = 1000;
  base.pose = RigidTransform::from_translation({0, -0.16, 1.0});
  PartSpec door = base;
  door.pose = RigidTransform::from_translation({0, 0.16, 1.0});
  MotionSpec hinge;
  hinge.kind = MotionKind::kRevolute;
  hinge.point = {0, 0, 1.0};
  hinge.axis = Eigen::Vector3d::UnitX();
  hinge.rate = opening_per_frame;
  spec.parts = {base, door};
  spec.motions = {MotionSpec{}, hinge};
  spec.frame_count = frames;
  spec.noise_sigma = noise;
  spec.seed = 1;
  return spec;
}

}  // namespace

TEST_CASE("voxel_partition: single shared point") {
  PointCloud p;
  p.points = {Point3(1, 2, 3)};
  const VoxelGrid g = voxel_partition(p, p, std::nullopt);
  REQUIRE(g.regions.size() == 1);
  CHECK(g.regions[0].points_a == p);
  CHECK(g.regions[0].points_b == p);
}

TEST_CASE("voxel_partition: disjoint clouds share no cell") {
  auto rng = rng_for(1);
  const PointCloud a = random_cloud(rng, 200, 0, 1);
  const PointCloud b = apply(a, Eigen::Matrix3d::Identity(), {3, 0, 0});
  const VoxelGrid g = voxel_partition(a, b, 0.5);
  for (const auto& r : g.regions) CHECK((r.points_a.empty() != r.points_b.empty()));
  CHECK_THROWS_AS(voxel_partition(a, PointCloud{}, std::nullopt), Error);
}

TEST_CASE("voxel_partition: membership equals direct binning") {
  auto rng = rng_for(2);
  const PointCloud a = random_cloud(rng, 500, 0, 1);
  const PointCloud b = random_cloud(rng, 500, 0, 1);
  const VoxelGrid g = voxel_partition(a, b, std::nullopt);
  PointCloud merged = a;
  merged.points.insert(merged.points.end(), b.begin(), b.end());
  const Aabb box_m = Aabb::of(merged.points);
  const double x = box_m.diagonal() / 5;
  CHECK(g.edge == doctest::Approx(x).epsilon(1e-15));
  std::map<CellIndex, std::pair<PointCloud, PointCloud>> oracle;
  auto cell = [&](const Point3& p) {
    return CellIndex{static_cast<std::int64_t>(std::floor((p.x() - box_m.min.x()) / x)),
                     static_cast<std::int64_t>(std::floor((p.y() - box_m.min.y()) / x)),
                     static_cast<std::int64_t>(std::floor((p.z() - box_m.min.z()) / x))};
  };
  for (const auto& p : a) oracle[cell(p)].first.points.push_back(p);
  for (const auto& p : b) oracle[cell(p)].second.points.push_back(p);
  REQUIRE(g.regions.size() == oracle.size());
  std::size_t i = 0;
  for (const auto& [c, sides] : oracle) {
    CHECK(g.regions[i].cell == c);
    CHECK(g.regions[i].points_a == sides.first);
    CHECK(g.regions[i].points_b == sides.second);
    ++i;
  }
}

TEST_CASE("register_regions: identical clouds give identities") {
  const PointCloud a = box(3, {0.4, 0.3, 0.2}, 2000);
  ClassifierParams params;
  const VoxelGrid g = voxel_partition(a, a, std::nullopt);
  const auto regs = register_regions(g, a, params, IcpParams{});
  CHECK(regs.skipped == 0);
  CHECK(regs.kept.size() == regs.total_eligible);
  for (const auto& r : regs.kept) {
    CHECK(r.transform.angle() == 0.0);
    CHECK(r.transform.translation().norm() == 0.0);
    CHECK(r.fitness == 1.0);
  }
}

TEST_CASE("register_regions: an occluded region is skipped, others register") {
  const PointCloud a = box(4, {0.4, 0.3, 0.2}, 2000);
  const VoxelGrid full = voxel_partition(a, a, std::nullopt);
  // Drop the `b` points of the first region that has plenty of points.
  std::size_t victim = 0;
  while (full.regions[victim].points_a.size() < 20) ++victim;
  const CellIndex gone = full.regions[victim].cell;
  PointCloud b;
  for (const auto& r : full.regions) {
    if (r.cell != gone) b.points.insert(b.points.end(), r.points_b.begin(), r.points_b.end());
  }
  ClassifierParams params;
  params.voxel_size = full.edge;
  const VoxelGrid g = voxel_partition(a, b, params.voxel_size);
  const auto regs = register_regions(g, b, params, IcpParams{});
  CHECK(regs.skipped_occluded >= 1);
  CHECK(regs.kept.size() + regs.skipped == regs.total_eligible);
  for (const auto& r : regs.kept) CHECK(r.cell != gone);
  CHECK(regs.kept.size() >= regs.total_eligible - 1 - regs.skipped_low_fitness);
}

TEST_CASE("register_regions: hinge regions follow their part") {
  const SceneSpec spec = hinge_spec(-30 * kDeg, 2, 0.0);
  const SyntheticSequence seq = generate_sequence(spec);
  const PointCloud& a = seq.frames[0];
  ClassifierParams params;
  const VoxelGrid g = voxel_partition(a, seq.frames[1], std::nullopt);
  const auto regs = register_regions(g, seq.frames[1], params, IcpParams{});
  // Part membership of each region from the generator's labels.
  std::map<CellIndex, std::set<int>> parts;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Point3& p = a[i];
    parts[{static_cast<std::int64_t>(std::floor((p.x() - g.origin.x()) / g.edge)),
           static_cast<std::int64_t>(std::floor((p.y() - g.origin.y()) / g.edge)),
           static_cast<std::int64_t>(std::floor((p.z() - g.origin.z()) / g.edge))}]
        .insert(seq.part_of_point[i]);
  }
  int checked_static = 0, checked_moving = 0;
  for (const auto& r : regs.kept) {
    if (parts[r.cell].size() != 1) continue;
    const RigidTransform& truth = seq.truth[1][static_cast<std::size_t>(*parts[r.cell].begin())];
    CHECK(rotation_error(r.transform.rotation_matrix(), truth.rotation_matrix()) < 1e-6);
    CHECK((r.transform.translation() - truth.translation()).norm() < 1e-6);
    (*parts[r.cell].begin() == 0 ? checked_static : checked_moving)++;
  }
  CHECK(checked_static > 0);
  CHECK(checked_moving > 0);
}

TEST_CASE("quantize_transform: closed cases") {
  const MotionKey id = quantize_transform(RigidTransform::identity(), 0.1, 0.1);
  CHECK(id.q == std::array<std::int64_t, 4>{10, 0, 0, 0});
  CHECK(id.t == std::array<std::int64_t, 3>{0, 0, 0});
  const MotionKey tr = quantize_transform(RigidTransform::from_translation({0.13, -0.05, 0}), 0.1, 0.1);
  CHECK(tr.t == std::array<std::int64_t, 3>{1, -1, 0});
  CHECK(still_key(ClassifierParams{}) == id);
}

TEST_CASE("quantize_transform: small perturbations away from edges keep the key") {
  auto rng = rng_for(5);
  int compared = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const Eigen::Matrix3d r = rodrigues(random_unit(rng), uniform(rng, 0, std::numbers::pi));
    const Eigen::Vector3d t(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1));
    const RigidTransform a(r, t);
    const Eigen::Matrix3d r2 = rodrigues(random_unit(rng), 0.005) * r;
    const Eigen::Vector3d t2 = t + 1e-4 * random_unit(rng);
    const RigidTransform b(r2, t2);
    CHECK(flat(quantize_transform(a, 0.1, 0.1)) == direct_bins(r, t, 0.1, 0.1));
    CHECK(flat(quantize_transform(b, 0.1, 0.1)) == direct_bins(r2, t2, 0.1, 0.1));
    if (bin_margin(a, 0.1, 0.1) > 0.005) {
      CHECK(quantize_transform(a, 0.1, 0.1) == quantize_transform(b, 0.1, 0.1));
      ++compared;
    }
  }
  CHECK(compared > 100);
}

TEST_CASE("quantize_transform: sign robustness") {
  auto rng = rng_for(6);
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Quaterniond q(Eigen::AngleAxisd(uniform(rng, 0, 6.28), random_unit(rng)));
    const Eigen::Quaterniond neg(-q.w(), -q.x(), -q.y(), -q.z());
    const Eigen::Vector3d t(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1));
    CHECK(quantize_transform(RigidTransform(q, t), 0.1, 0.1) == quantize_transform(RigidTransform(neg, t), 0.1, 0.1));
  }
}

TEST_CASE("key table houses every kept registration once") {
  auto rng = rng_for(7);
  std::vector<RegionRegistration> kept;
  for (int i = 0; i < 300; ++i) {
    RegionRegistration r;
    r.cell = {i, 0, 0};
    r.transform = RigidTransform(rodrigues(random_unit(rng), uniform(rng, 0, 0.3)),
                                 Eigen::Vector3d(uniform(rng, -0.2, 0.2), 0, 0));
    r.displacement = uniform(rng, 0, 0.05);
    kept.push_back(r);
  }
  const ClassifierParams params;
  const MotionKeyTable table = build_key_table(kept, params);
  std::size_t total = 0;
  std::map<CellIndex, int> seen;
  for (const auto& [key, cells] : table) {
    total += cells.size();
    for (const auto& c : cells) ++seen[c];
  }
  CHECK(total == kept.size());
  for (const auto& [c, n] : seen) CHECK(n == 1);
  for (const auto& r : kept) {
    const MotionKey k = motion_key(r, params);
    if (r.displacement < params.still_displacement) CHECK(k == still_key(params));
    else CHECK(k == quantize_transform(r.transform, 0.1, 0.1));
  }
}

TEST_CASE("classify_pair: identical clouds are NM") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto rng = rng_for(seed);
    const PointCloud a = box(seed, {uniform(rng, 0.2, 0.5), uniform(rng, 0.2, 0.5), uniform(rng, 0.1, 0.3)}, 1500);
    const FrameDecision d = classify_pair(a, a, ClassifierParams{}, IcpParams{});
    CHECK(d.label == L::kNoMotion);
    CHECK(d.key_count == 1);
  }
}

TEST_CASE("classify_pair: identical clouds are NM without the noise floor too") {
  const PointCloud a = box(9, {0.3, 0.2, 0.2}, 1500);
  ClassifierParams literal;
  literal.still_displacement = 0.0;
  CHECK(classify_pair(a, a, literal, IcpParams{}).label == L::kNoMotion);
}

TEST_CASE("classify_pair: rigid motion with a 5-bin translation is RM") {
  // Landmarks along the rotation axis: every point moves less than half the
  // landmark spacing, so each region sees the exact motion.
  const Eigen::Vector3d axis = Eigen::Vector3d(0.3, 0.4, 1.0).normalized();
  auto rng = rng_for(10);
  const PointCloud a = landmark_rod(rng, axis, Point3::Zero(), 1.5, 60.0, 1.5);
  const Eigen::Vector3d t(0.26, 0.33, std::sqrt(0.25 - 0.26 * 0.26 - 0.33 * 0.33));
  const RigidTransform motion(rodrigues(axis, 0.095), t);
  CHECK(t.norm() == doctest::Approx(0.5));
  REQUIRE(bin_margin(motion, 0.1, 0.1) > 1e-3);
  const FrameDecision d = classify_pair(a, transform_apply(a, motion), ClassifierParams{}, IcpParams{});
  CHECK(d.label == L::kRigidMotion);
  REQUIRE(d.key_count == 1);
  CHECK(d.keys.begin()->first == quantize_transform(motion, 0.1, 0.1));
  CHECK(d.keys.begin()->first != still_key(ClassifierParams{}));
}

TEST_CASE("classify_pair: noiseless rigid pairs away from bin edges give one key") {
  const Eigen::Vector3d axis = Eigen::Vector3d(0.3, 0.4, 1.0).normalized();
  int tested = 0;
  for (std::uint64_t seed = 0; tested < 12; ++seed) {
    auto rng = rng_for(100 + seed);
    const RigidTransform motion(rodrigues(axis, uniform(rng, 0.09, 0.1)), random_unit(rng) * uniform(rng, 0.0, 0.5));
    if (bin_margin(motion, 0.1, 0.1) <= 1e-3) continue;
    ++tested;
    const PointCloud a = landmark_rod(rng, axis, Point3::Zero(), 1.5, 60.0, 1.5);
    const FrameDecision d = classify_pair(a, transform_apply(a, motion), ClassifierParams{}, IcpParams{});
    CHECK(d.key_count == 1);
    CHECK(d.label == L::kRigidMotion);
  }
}

TEST_CASE("classify_pair: hinge opened by 30 degrees is AM with two keys") {
  const Eigen::Vector3d axis = Eigen::Vector3d(0.3, 0.4, 1.0).normalized();
  auto rng = rng_for(11);
  const PointCloud fixed = landmark_rod(rng, axis, Point3(0, 20, -8), 1.2, 60.0, 1.5);
  const PointCloud door = landmark_rod(rng, axis, Point3::Zero(), 1.2, 60.0, 1.5);
  const RigidTransform hinge = RigidTransform::about_axis(Point3(0.05, 0.07, 0), axis, 30 * kDeg);
  REQUIRE(bin_margin(hinge, 0.1, 0.1) > 1e-3);
  PointCloud a = fixed, b = fixed;
  a.points.insert(a.points.end(), door.begin(), door.end());
  const PointCloud moved = transform_apply(door, hinge);
  b.points.insert(b.points.end(), moved.begin(), moved.end());
  const FrameDecision d = classify_pair(a, b, ClassifierParams{}, IcpParams{});
  CHECK(d.label == L::kArticulatedMotion);
  CHECK(d.key_count == 2);
  CHECK(d.keys.count(still_key(ClassifierParams{})) == 1);
  CHECK(d.keys.count(quantize_transform(hinge, 0.1, 0.1)) == 1);
}

TEST_CASE("classify_pair: generator hinge opened by 30 degrees is AM") {
  const SyntheticSequence seq = generate_sequence(hinge_spec(-30 * kDeg, 2, 0.0));
  const FrameDecision d = classify_pair(seq.frames[0], seq.frames[1], ClassifierParams{}, IcpParams{});
  CHECK(d.label == L::kArticulatedMotion);
  CHECK(d.key_count >= 2);
}

TEST_CASE("classify_pair: alpha gate marks the pair unreliable") {
  const PointCloud a = box(11, {0.4, 0.3, 0.2}, 1500);
  const Aabb bounds = Aabb::of(a.points);
  PointCloud b;
  for (const auto& p : a) {
    if (p.x() < bounds.min.x() + 0.1 * (bounds.max.x() - bounds.min.x())) b.points.push_back(p);
  }
  const FrameDecision d = classify_pair(a, b, ClassifierParams{}, IcpParams{});
  CHECK(static_cast<double>(d.kept) < 0.5 * static_cast<double>(d.eligible));
  CHECK(d.label == L::kUnreliable);
  ClassifierParams lax;
  lax.alpha = 0.01;
  CHECK(classify_pair(a, b, lax, IcpParams{}).label != L::kUnreliable);
}

TEST_CASE("classify_pair: thread count does not change the result") {
  const SyntheticSequence seq = generate_sequence(hinge_spec(-10 * kDeg, 2, 0.002));
  ::setenv("ARTIC_THREADS", "1", 1);
  const FrameDecision one = classify_pair(seq.frames[0], seq.frames[1], ClassifierParams{}, IcpParams{});
  ::setenv("ARTIC_THREADS", "4", 1);
  const FrameDecision four = classify_pair(seq.frames[0], seq.frames[1], ClassifierParams{}, IcpParams{});
  ::unsetenv("ARTIC_THREADS");
  CHECK(one.label == four.label);
  CHECK(one.keys == four.keys);
  REQUIRE(one.registrations.kept.size() == four.registrations.kept.size());
  for (std::size_t i = 0; i < one.registrations.kept.size(); ++i) {
    CHECK(one.registrations.kept[i].transform.matrix() == four.registrations.kept[i].transform.matrix());
  }
}

TEST_CASE("mode_filter: examples") {
  CHECK(mode_filter(std::vector<L>(6, L::kRigidMotion), 5) == std::vector<L>(6, L::kRigidMotion));
  const std::vector<L> a = {L::kRigidMotion, L::kArticulatedMotion, L::kRigidMotion, L::kRigidMotion, L::kRigidMotion};
  CHECK(mode_filter(a, 3) == std::vector<L>(5, L::kRigidMotion));
  const std::vector<L> b = {L::kRigidMotion, L::kArticulatedMotion, L::kArticulatedMotion, L::kRigidMotion,
                            L::kArticulatedMotion};
  CHECK(mode_filter(b, 3) == std::vector<L>(5, L::kArticulatedMotion));
  CHECK(mode_filter(b, 3) == oracle_mode(b, 3));
  CHECK_THROWS_AS(mode_filter(std::vector<L>{L::kUnreliable}, 3), Error);
  CHECK_THROWS_AS(mode_filter(a, 4), Error);
  // Unreliable entries are dropped before filtering.
  const std::vector<L> c = {L::kNoMotion, L::kUnreliable, L::kNoMotion, L::kRigidMotion};
  CHECK(mode_filter(c, 1) == std::vector<L>{L::kNoMotion, L::kNoMotion, L::kRigidMotion});
}

TEST_CASE("mode_filter: random sequences against the oracle") {
  auto rng = rng_for(8);
  const L alphabet[] = {L::kNoMotion, L::kRigidMotion, L::kArticulatedMotion, L::kUnreliable};
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<L> in(static_cast<std::size_t>(1 + trial % 23));
    for (auto& l : in) l = alphabet[std::uniform_int_distribution<int>(0, 3)(rng)];
    const int w = 1 + 2 * (trial % 5);
    const bool any = std::any_of(in.begin(), in.end(), [](L l) { return l != L::kUnreliable; });
    if (!any) continue;
    const auto out = mode_filter(in, w);
    CHECK(out == oracle_mode(in, w));
    CHECK(out.size() == static_cast<std::size_t>(std::count_if(in.begin(), in.end(), [](L l) {
            return l != L::kUnreliable;
          })));
    CHECK(std::find(out.begin(), out.end(), L::kUnreliable) == out.end());
  }
}

TEST_CASE("verdict rules and monotonicity") {
  CHECK(verdict_of(std::vector<L>{L::kNoMotion, L::kRigidMotion}) == ObjectClass::kRigid);
  CHECK(verdict_of(std::vector<L>{L::kRigidMotion, L::kArticulatedMotion}) == ObjectClass::kArticulated);
  CHECK(verdict_of(std::vector<L>{L::kNoMotion}) == ObjectClass::kNondeterministic);
  auto rng = rng_for(9);
  const L alphabet[] = {L::kNoMotion, L::kRigidMotion, L::kArticulatedMotion};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<L> f(static_cast<std::size_t>(1 + trial % 9));
    for (auto& l : f) l = alphabet[std::uniform_int_distribution<int>(0, 2)(rng)];
    if (verdict_of(f) != ObjectClass::kArticulated) continue;
    f.insert(f.begin() + static_cast<long>(trial % f.size()), L::kArticulatedMotion);
    CHECK(verdict_of(f) == ObjectClass::kArticulated);
  }
}

TEST_CASE("sequence_pairs") {
  ClassifierParams p;
  const auto pairs = sequence_pairs(12, p);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0] == std::pair<std::size_t, std::size_t>{0, 5});
  CHECK(pairs[1] == std::pair<std::size_t, std::size_t>{5, 10});
  p.pair_stride = 1;
  CHECK(sequence_pairs(12, p).size() == 7);
  try {
    sequence_pairs(5, ClassifierParams{});
    FAIL("expected InsufficientFrames");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInsufficientFrames);
  }
}

TEST_CASE("classify_sequence: static, hinge") {
  const PointCloud a = box(12, {0.3, 0.25, 0.2}, 1200);
  std::vector<IndexedCloud> frames;
  for (int i = 0; i < 16; ++i) frames.push_back({i, a});
  const SequenceVerdict s = classify_sequence(frames, ClassifierParams{}, IcpParams{});
  CHECK(s.label == ObjectClass::kNondeterministic);
  CHECK(s.probabilities.no_motion == 1.0);
  CHECK(s.decisions.size() == 3);
  CHECK(s.decisions[1].first == 5);
  CHECK(s.decisions[1].second == 10);

  const SyntheticSequence seq = generate_sequence(hinge_spec(-3 * kDeg, 16, 0.0));
  std::vector<IndexedCloud> hinge;
  for (std::size_t i = 0; i < seq.frames.size(); ++i) hinge.push_back({static_cast<int>(i), seq.frames[i]});
  const SequenceVerdict h = classify_sequence(hinge, ClassifierParams{}, IcpParams{});
  CHECK(h.label == ObjectClass::kArticulated);
  const double sum = h.probabilities.articulated + h.probabilities.rigid + h.probabilities.no_motion;
  CHECK(sum == doctest::Approx(1.0));
}

TEST_CASE("classify_sequence: all pairs unreliable") {
  auto rng = rng_for(13);
  std::vector<IndexedCloud> frames;
  for (int i = 0; i < 6; ++i) frames.push_back({i, random_cloud(rng, 40, 10.0 * i, 10.0 * i + 1)});
  const SequenceVerdict v = classify_sequence(frames, ClassifierParams{}, IcpParams{});
  CHECK(v.no_reliable_pairs);
  CHECK(v.label == ObjectClass::kNondeterministic);
}

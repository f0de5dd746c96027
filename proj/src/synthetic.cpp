// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0

#include "artic/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "artic/error.hpp"
#include "artic/parallel.hpp"

namespace artic {
namespace {

constexpr std::string_view kModule = "synthetic";
constexpr std::uint64_t kSampleStream = 0x73616d70;
constexpr std::uint64_t kNoiseStream = 0x6e6f6973;
constexpr std::uint64_t kPresetStream = 0x70726573;

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

struct Face {
  double area;
  // Maps (u, v) in [0, a] x [0, b] to a point; a and b are the face extents.
  double a, b;
  int id;
};

// n stratified points in [0, a] x [0, b]: one jittered sample in each of n
// distinct cells of a near-square grid.
std::vector<std::pair<double, double>> sample_rect(std::mt19937_64& rng, std::size_t n, double a,
                                                   double b) {
  std::vector<std::pair<double, double>> out;
  if (n == 0) return out;
  const auto nu = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n) * a / b))));
  const std::size_t nv = (n + nu - 1) / nu;
  std::vector<std::size_t> cells(nu * nv);
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = i;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {  // partial Fisher-Yates
    std::uniform_int_distribution<std::size_t> pick(i, cells.size() - 1);
    std::swap(cells[i], cells[pick(rng)]);
  }
  std::sort(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(n));
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t iu = cells[i] % nu;
    const std::size_t iv = cells[i] / nu;
    const double u = (static_cast<double>(iu) + unit(rng)) / static_cast<double>(nu) * a;
    const double v = (static_cast<double>(iv) + unit(rng)) / static_cast<double>(nv) * b;
    out.emplace_back(u, v);
  }
  return out;
}

// Largest-remainder split of n over weights.
std::vector<std::size_t> allocate(std::size_t n, const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  std::vector<std::size_t> count(weights.size());
  std::vector<std::pair<double, std::size_t>> rem;
  std::size_t used = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double exact = static_cast<double>(n) * weights[i] / total;
    count[i] = static_cast<std::size_t>(std::floor(exact));
    used += count[i];
    rem.emplace_back(exact - std::floor(exact), i);
  }
  std::stable_sort(rem.begin(), rem.end(), [](const auto& l, const auto& r) { return l.first > r.first; });
  for (std::size_t i = 0; used < n; ++i, ++used) ++count[rem[i % rem.size()].second];
  return count;
}

PointCloud sample_box(std::mt19937_64& rng, std::size_t n, const Eigen::Vector3d& d) {
  const std::vector<Face> faces = {
      {d.y() * d.z(), d.y(), d.z(), 0}, {d.y() * d.z(), d.y(), d.z(), 1},
      {d.x() * d.z(), d.x(), d.z(), 2}, {d.x() * d.z(), d.x(), d.z(), 3},
      {d.x() * d.y(), d.x(), d.y(), 4}, {d.x() * d.y(), d.x(), d.y(), 5}};
  std::vector<double> areas;
  for (const Face& f : faces) areas.push_back(f.area);
  const auto counts = allocate(n, areas);
  const Eigen::Vector3d h = d / 2.0;
  PointCloud out;
  out.points.reserve(n);
  for (const Face& f : faces) {
    const double side = f.id % 2 == 0 ? 1.0 : -1.0;
    for (const auto& [u, v] : sample_rect(rng, counts[f.id], f.a, f.b)) {
      switch (f.id / 2) {
        case 0: out.points.emplace_back(side * h.x(), u - h.y(), v - h.z()); break;
        case 1: out.points.emplace_back(u - h.x(), side * h.y(), v - h.z()); break;
        default: out.points.emplace_back(u - h.x(), v - h.y(), side * h.z()); break;
      }
    }
  }
  return out;
}

PointCloud sample_cylinder(std::mt19937_64& rng, std::size_t n, double radius, double height) {
  constexpr double kTau = 2.0 * std::numbers::pi;
  const double cap = std::numbers::pi * radius * radius;
  const auto counts = allocate(n, {kTau * radius * height, cap, cap});
  PointCloud out;
  out.points.reserve(n);
  for (const auto& [u, v] : sample_rect(rng, counts[0], kTau * radius, height)) {
    const double theta = u / radius;
    out.points.emplace_back(radius * std::cos(theta), radius * std::sin(theta), v - height / 2.0);
  }
  for (int c = 0; c < 2; ++c) {
    const double z = c == 0 ? height / 2.0 : -height / 2.0;
    for (const auto& [s, theta] : sample_rect(rng, counts[1 + c], radius * radius, kTau)) {
      const double r = std::sqrt(s);
      out.points.emplace_back(r * std::cos(theta), r * std::sin(theta), z);
    }
  }
  return out;
}

PointCloud sample_panel(std::mt19937_64& rng, std::size_t n, const Eigen::Vector3d& d) {
  const auto counts = allocate(n, {1.0, 1.0});
  PointCloud out;
  out.points.reserve(n);
  for (int s = 0; s < 2; ++s) {
    const double z = s == 0 ? d.z() / 2.0 : -d.z() / 2.0;
    for (const auto& [u, v] : sample_rect(rng, counts[s], d.x(), d.y())) {
      out.points.emplace_back(u - d.x() / 2.0, v - d.y() / 2.0, z);
    }
  }
  return out;
}

Eigen::Vector3d random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Vector3d v;
  do {
    v = Eigen::Vector3d(g(rng), g(rng), g(rng));
  } while (v.norm() < 1e-6);
  return v.normalized();
}

// Re-expresses a scene built in a canonical frame under placement `g`.
void place(SceneSpec& spec, const RigidTransform& g) {
  for (auto& part : spec.parts) part.pose = g * part.pose;
  for (auto& m : spec.motions) {
    m.point = g.apply(m.point);
    m.axis = (g.rotation() * m.axis).normalized();
    m.velocity = g.rotation() * m.velocity;
  }
}

}  // namespace

std::string_view to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::kBox: return "box";
    case ShapeKind::kCylinder: return "cylinder";
    case ShapeKind::kPanel: return "panel";
  }
  return "box";
}

std::string_view to_string(MotionKind kind) {
  switch (kind) {
    case MotionKind::kStatic: return "static";
    case MotionKind::kRigid: return "rigid";
    case MotionKind::kRevolute: return "revolute";
    case MotionKind::kPrismatic: return "prismatic";
  }
  return "static";
}

std::optional<ShapeKind> parse_shape_kind(std::string_view text) {
  for (ShapeKind k : {ShapeKind::kBox, ShapeKind::kCylinder, ShapeKind::kPanel}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::optional<MotionKind> parse_motion_kind(std::string_view text) {
  for (MotionKind k : {MotionKind::kStatic, MotionKind::kRigid, MotionKind::kRevolute,
                       MotionKind::kPrismatic}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

RigidTransform MotionSpec::at(int frame) const {
  const double f = static_cast<double>(frame);
  switch (kind) {
    case MotionKind::kStatic: return RigidTransform::identity();
    case MotionKind::kRigid:
      return RigidTransform::from_translation(f * velocity) *
             RigidTransform::about_axis(point, axis, f * rate);
    case MotionKind::kRevolute: return RigidTransform::about_axis(point, axis, f * rate);
    case MotionKind::kPrismatic: return RigidTransform::from_translation(f * rate * axis);
  }
  return RigidTransform::identity();
}

void SceneSpec::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kInvalidSpec, kModule, what); };
  if (parts.empty()) fail("scene has no parts");
  if (motions.size() != parts.size()) {
    fail("scene has " + std::to_string(parts.size()) + " parts but " +
         std::to_string(motions.size()) + " motions");
  }
  if (frame_count < 2) fail("frame_count must be >= 2");
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) fail("noise_sigma must be >= 0");
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const PartSpec& part = parts[p];
    const std::string tag = "part " + std::to_string(p) + ": ";
    const bool dims_ok = part.shape == ShapeKind::kCylinder
                             ? part.dims.x() > 0.0 && part.dims.z() > 0.0
                             : (part.dims.array() > 0.0).all();
    if (!dims_ok || !part.dims.allFinite()) fail(tag + "dimensions must be > 0");
    if (part.samples < 50) fail(tag + "sample count must be >= 50");
    const MotionSpec& m = motions[p];
    if (m.kind != MotionKind::kStatic && std::abs(m.axis.norm() - 1.0) > 1e-9) {
      fail(tag + "motion axis must be unit norm");
    }
    if (!m.point.allFinite() || !m.velocity.allFinite() || !std::isfinite(m.rate)) {
      fail(tag + "motion parameters must be finite");
    }
  }
}

PointCloud sample_part(const PartSpec& part, std::uint64_t seed, std::size_t part_index) {
  auto rng = make_rng(seed, kSampleStream, part_index);
  PointCloud local;
  switch (part.shape) {
    case ShapeKind::kBox: local = sample_box(rng, part.samples, part.dims); break;
    case ShapeKind::kCylinder:
      local = sample_cylinder(rng, part.samples, part.dims.x(), part.dims.z());
      break;
    case ShapeKind::kPanel: local = sample_panel(rng, part.samples, part.dims); break;
  }
  return transform_apply(local, part.pose);
}

SyntheticSequence generate_sequence(const SceneSpec& spec) {
  spec.validate();
  SyntheticSequence seq;
  for (std::size_t p = 0; p < spec.parts.size(); ++p) {
    seq.part_samples.push_back(sample_part(spec.parts[p], spec.seed, p));
    seq.part_of_point.insert(seq.part_of_point.end(), seq.part_samples.back().size(),
                             static_cast<int>(p));
  }
  const auto frames = static_cast<std::size_t>(spec.frame_count);
  seq.frames.resize(frames);
  seq.truth.resize(frames);
  parallel_for(frames, [&](std::size_t f) {
    auto rng = make_rng(spec.seed, kNoiseStream, f);
    std::normal_distribution<double> noise(0.0, 1.0);
    PointCloud& out = seq.frames[f];
    out.points.reserve(seq.part_of_point.size());
    for (std::size_t p = 0; p < spec.parts.size(); ++p) {
      const RigidTransform t = spec.motions[p].at(static_cast<int>(f));
      seq.truth[f].push_back(t);
      const PointCloud moved = transform_apply(seq.part_samples[p], t);
      out.points.insert(out.points.end(), moved.begin(), moved.end());
    }
    if (spec.noise_sigma > 0.0) {
      for (Point3& q : out.points) {
        const double nx = noise(rng), ny = noise(rng), nz = noise(rng);
        q += spec.noise_sigma * Eigen::Vector3d(nx, ny, nz);
      }
    }
  });
  return seq;
}

DepthFrame render_depth(const PointCloud& frame, const CameraIntrinsics& intrinsics, int width,
                        int height) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument, kModule, "image size must be positive");
  }
  DepthFrame out;
  out.width = width;
  out.height = height;
  out.intrinsics = intrinsics;
  const auto pixels = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  out.depth.assign(pixels, 0.0);
  out.mask.assign(pixels, 0);
  for (std::size_t i = 0; i < frame.size(); ++i) {
    const Point3& p = frame[i];
    if (!(p.z() > 0.0)) {
      throw Error(ErrorCode::kPointBehindCamera, kModule,
                  "point " + std::to_string(i) + " has z = " + std::to_string(p.z()));
    }
    const double uf = std::round(intrinsics.fx * p.x() / p.z() + intrinsics.cx);
    const double vf = std::round(intrinsics.fy * p.y() / p.z() + intrinsics.cy);
    if (uf < 0.0 || vf < 0.0 || uf >= width || vf >= height) continue;
    const std::size_t at = static_cast<std::size_t>(vf) * width + static_cast<std::size_t>(uf);
    if (out.mask[at] == 0 || p.z() < out.depth[at]) {
      out.depth[at] = p.z();
      out.mask[at] = 255;
    }
  }
  return out;
}

CameraIntrinsics default_intrinsics() {
  const double f = 320.0 / std::tan(std::numbers::pi / 6.0);
  return {f, f, 319.5, 239.5};
}

std::vector<std::string> preset_names() { return {"static", "tumble", "hinge", "slider"}; }

SceneSpec preset_scene(std::string_view name, std::uint64_t seed, int frame_count,
                       double noise_sigma, std::size_t points_per_frame) {
  auto rng = make_rng(seed, kPresetStream, 0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const auto between = [&](double lo, double hi) { return lo + (hi - lo) * u01(rng); };
  constexpr double kDeg = std::numbers::pi / 180.0;

  SceneSpec spec;
  spec.frame_count = frame_count;
  spec.noise_sigma = noise_sigma;
  spec.seed = seed;

  if (name == "static" || name == "tumble") {
    PartSpec box;
    box.shape = ShapeKind::kBox;
    box.dims = {between(0.25, 0.35), between(0.15, 0.25), between(0.12, 0.2)};
    box.samples = points_per_frame;
    spec.parts.push_back(box);
    MotionSpec m;
    if (name == "tumble") {
      m.kind = MotionKind::kRigid;
      m.point = Point3::Zero();
      m.axis = random_unit(rng);
      m.rate = between(0.8, 1.6) * kDeg;
      m.velocity = random_unit(rng) * between(0.001, 0.003);
    }
    spec.motions.push_back(m);
  } else if (name == "hinge") {
    // Static base panel below the hinge line y = 0, door panel above it.
    const double w = between(0.3, 0.45);
    const double h = between(0.2, 0.3);
    const double gap = 0.02;
    PartSpec base;
    base.shape = ShapeKind::kPanel;
    base.dims = {w, h, 0.02};
    base.samples = points_per_frame / 2;
    base.pose = RigidTransform::from_translation({0.0, -h / 2.0 - gap / 2.0, 0.0});
    PartSpec door = base;
    door.samples = points_per_frame - base.samples;
    door.pose = RigidTransform::from_translation({0.0, h / 2.0 + gap / 2.0, 0.0});
    spec.parts = {base, door};
    MotionSpec hinge;
    hinge.kind = MotionKind::kRevolute;
    hinge.point = Point3::Zero();
    hinge.axis = Eigen::Vector3d::UnitX();
    hinge.rate = -between(1.0, 1.5) * kDeg;  // opens toward the camera
    spec.motions = {MotionSpec{}, hinge};
  } else if (name == "slider") {
    PartSpec cabinet;
    cabinet.shape = ShapeKind::kBox;
    cabinet.dims = {between(0.35, 0.45), between(0.25, 0.35), between(0.3, 0.4)};
    cabinet.samples = points_per_frame * 3 / 5;
    PartSpec drawer;
    drawer.shape = ShapeKind::kBox;
    drawer.dims = {cabinet.dims.x() * 0.8, cabinet.dims.y() * 0.4, cabinet.dims.z() * 0.9};
    drawer.samples = points_per_frame - cabinet.samples;
    drawer.pose = RigidTransform::from_translation(
        {0.0, cabinet.dims.y() * 0.2, -(cabinet.dims.z() - drawer.dims.z()) / 2.0});
    spec.parts = {cabinet, drawer};
    MotionSpec slide;
    slide.kind = MotionKind::kPrismatic;
    slide.axis = -Eigen::Vector3d::UnitZ();  // out of the cabinet, toward the camera
    slide.rate = between(0.003, 0.005);
    spec.motions = {MotionSpec{}, slide};
  } else {
    throw Error(ErrorCode::kInvalidSpec, kModule, "unknown preset '" + std::string(name) + "'");
  }

  // Random placement: a tilt of up to 25 degrees, about 1 m from the camera.
  const RigidTransform tilt =
      RigidTransform::about_axis(Point3::Zero(), random_unit(rng), between(0.0, 25.0) * kDeg);
  const RigidTransform shift = RigidTransform::from_translation(
      {between(-0.05, 0.05), between(-0.05, 0.05), between(0.9, 1.1)});
  place(spec, shift * tilt);
  return spec;
}

}  // namespace artic

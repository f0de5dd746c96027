// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0

#include "artic/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace artic::kernels {
namespace {

Isa detect() {
#if defined(ARTIC_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Isa::kAvx2;
#endif
  return Isa::kScalar;
}

Isa initial_isa() {
  const Isa best = best_available_isa();
  if (const char* env = std::getenv("ARTIC_SIMD")) {
    if (std::string(env) == "scalar") return Isa::kScalar;
  }
  return best;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "unknown";
}

Isa best_available_isa() {
  static const Isa best = detect();
  return best;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::kAvx2 && best_available_isa() != Isa::kAvx2) isa = Isa::kScalar;
  current().store(isa, std::memory_order_relaxed);
}

void squared_distances(const SoaView& points, const Point3& query, double* out) {
#if defined(ARTIC_HAVE_AVX2)
  if (active_isa() == Isa::kAvx2) return avx2::squared_distances(points, query, out);
#endif
  scalar::squared_distances(points, query, out);
}

PairMoments pair_moments(std::span<const Point3> a, std::span<const Point3> b) {
#if defined(ARTIC_HAVE_AVX2)
  if (active_isa() == Isa::kAvx2) return avx2::pair_moments(a, b);
#endif
  return scalar::pair_moments(a, b);
}

void transform_points(const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation,
                      std::span<const Point3> in, std::span<Point3> out) {
#if defined(ARTIC_HAVE_AVX2)
  if (active_isa() == Isa::kAvx2) return avx2::transform_points(rotation, translation, in, out);
#endif
  scalar::transform_points(rotation, translation, in, out);
}

}  // namespace artic::kernels

// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0
//
// AVX2 variants. Compiled with -mavx2 only (no -mfma) so that products and
// sums round exactly like the scalar reference.

#include <immintrin.h>

#include "artic/kernels.hpp"

namespace artic::kernels::avx2 {
namespace {

static_assert(sizeof(Point3) == 3 * sizeof(double), "Point3 must be densely packed");

inline const double* raw(std::span<const Point3> pts) {
  return reinterpret_cast<const double*>(pts.data());
}

inline double hsum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

// Stride-3 gather offsets for four consecutive points.
inline __m256i aos_offsets() { return _mm256_setr_epi64x(0, 3, 6, 9); }

}  // namespace

void squared_distances(const SoaView& points, const Point3& query, double* out) {
  const __m256d qx = _mm256_set1_pd(query.x());
  const __m256d qy = _mm256_set1_pd(query.y());
  const __m256d qz = _mm256_set1_pd(query.z());
  std::size_t i = 0;
  for (; i + 4 <= points.size; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(points.x + i), qx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(points.y + i), qy);
    const __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(points.z + i), qz);
    const __m256d xy = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    _mm256_storeu_pd(out + i, _mm256_add_pd(xy, _mm256_mul_pd(dz, dz)));
  }
  SoaView tail{points.x + i, points.y + i, points.z + i, points.size - i};
  scalar::squared_distances(tail, query, out + i);
}

PairMoments pair_moments(std::span<const Point3> a, std::span<const Point3> b) {
  PairMoments m;
  const std::size_t n = a.size();
  if (n == 0 || b.size() != n) return m;
  const double* pa = raw(a);
  const double* pb = raw(b);
  const __m256i off = aos_offsets();

  __m256d sax = _mm256_setzero_pd(), say = sax, saz = sax, sbx = sax, sby = sax, sbz = sax;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const double* qa = pa + 3 * i;
    const double* qb = pb + 3 * i;
    sax = _mm256_add_pd(sax, _mm256_i64gather_pd(qa, off, 8));
    say = _mm256_add_pd(say, _mm256_i64gather_pd(qa + 1, off, 8));
    saz = _mm256_add_pd(saz, _mm256_i64gather_pd(qa + 2, off, 8));
    sbx = _mm256_add_pd(sbx, _mm256_i64gather_pd(qb, off, 8));
    sby = _mm256_add_pd(sby, _mm256_i64gather_pd(qb + 1, off, 8));
    sbz = _mm256_add_pd(sbz, _mm256_i64gather_pd(qb + 2, off, 8));
  }
  Eigen::Vector3d sa(hsum(sax), hsum(say), hsum(saz));
  Eigen::Vector3d sb(hsum(sbx), hsum(sby), hsum(sbz));
  for (std::size_t j = i; j < n; ++j) {
    sa += a[j];
    sb += b[j];
  }
  m.centroid_a = sa / static_cast<double>(n);
  m.centroid_b = sb / static_cast<double>(n);

  const __m256d cax = _mm256_set1_pd(m.centroid_a.x());
  const __m256d cay = _mm256_set1_pd(m.centroid_a.y());
  const __m256d caz = _mm256_set1_pd(m.centroid_a.z());
  const __m256d cbx = _mm256_set1_pd(m.centroid_b.x());
  const __m256d cby = _mm256_set1_pd(m.centroid_b.y());
  const __m256d cbz = _mm256_set1_pd(m.centroid_b.z());
  __m256d acc[9];
  for (auto& v : acc) v = _mm256_setzero_pd();
  for (i = 0; i + 4 <= n; i += 4) {
    const double* qa = pa + 3 * i;
    const double* qb = pb + 3 * i;
    const __m256d da[3] = {_mm256_sub_pd(_mm256_i64gather_pd(qa, off, 8), cax),
                           _mm256_sub_pd(_mm256_i64gather_pd(qa + 1, off, 8), cay),
                           _mm256_sub_pd(_mm256_i64gather_pd(qa + 2, off, 8), caz)};
    const __m256d db[3] = {_mm256_sub_pd(_mm256_i64gather_pd(qb, off, 8), cbx),
                           _mm256_sub_pd(_mm256_i64gather_pd(qb + 1, off, 8), cby),
                           _mm256_sub_pd(_mm256_i64gather_pd(qb + 2, off, 8), cbz)};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        acc[3 * r + c] = _mm256_add_pd(acc[3 * r + c], _mm256_mul_pd(da[r], db[c]));
      }
    }
  }
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) m.cross(r, c) = hsum(acc[3 * r + c]);
  }
  for (std::size_t j = i; j < n; ++j) {
    m.cross.noalias() += (a[j] - m.centroid_a) * (b[j] - m.centroid_b).transpose();
  }
  return m;
}

void transform_points(const Eigen::Matrix3d& r, const Eigen::Vector3d& t,
                      std::span<const Point3> in, std::span<Point3> out) {
  const double* src = raw(in);
  double* dst = reinterpret_cast<double*>(out.data());
  const __m256i off = aos_offsets();
  __m256d rr[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) rr[i][j] = _mm256_set1_pd(r(i, j));
  const __m256d tt[3] = {_mm256_set1_pd(t.x()), _mm256_set1_pd(t.y()), _mm256_set1_pd(t.z())};

  std::size_t i = 0;
  for (; i + 4 <= in.size(); i += 4) {
    const double* q = src + 3 * i;
    const __m256d x = _mm256_i64gather_pd(q, off, 8);
    const __m256d y = _mm256_i64gather_pd(q + 1, off, 8);
    const __m256d z = _mm256_i64gather_pd(q + 2, off, 8);
    alignas(32) double res[3][4];
    for (int row = 0; row < 3; ++row) {
      __m256d acc = _mm256_add_pd(_mm256_mul_pd(rr[row][0], x), _mm256_mul_pd(rr[row][1], y));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(rr[row][2], z));
      _mm256_store_pd(res[row], _mm256_add_pd(acc, tt[row]));
    }
    double* o = dst + 3 * i;
    for (int k = 0; k < 4; ++k) {
      o[3 * k] = res[0][k];
      o[3 * k + 1] = res[1][k];
      o[3 * k + 2] = res[2][k];
    }
  }
  scalar::transform_points(r, t, in.subspan(i), out.subspan(i));
}

}  // namespace artic::kernels::avx2

// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0
//
// Exact nearest-neighbour search over a fixed point set.

#ifndef ARTIC_NN_INDEX_HPP_
#define ARTIC_NN_INDEX_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "artic/geometry.hpp"

namespace artic {

struct Neighbor {
  std::size_t index;
  double distance;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Balanced 3-d tree. Points are copied into leaf-ordered structure-of-arrays
/// buckets so leaf scans run through kernels::squared_distances.
///
/// Every query is exact and deterministic: among equidistant candidates the
/// lowest original index wins. Immutable after construction, so a single
/// index may be queried from many threads.
class NnIndex {
 public:
  /// Throws EmptyCloud.
  explicit NnIndex(const PointCloud& cloud, std::size_t leaf_size = 16);

  std::size_t size() const noexcept { return order_.size(); }

  /// Nearest point with distance <= max_distance, or nothing.
  std::optional<Neighbor> nearest(const Point3& query,
                                  double max_distance = std::numeric_limits<double>::infinity()) const;

  /// The k nearest points sorted by (distance, index). `exclude` removes one
  /// stored index from consideration (used for self-queries).
  std::vector<Neighbor> knn(const Point3& query, std::size_t k,
                            std::optional<std::size_t> exclude = std::nullopt) const;

  /// All points with distance <= radius, sorted by index.
  std::vector<std::size_t> radius(const Point3& query, double radius) const;

 private:
  struct Node {
    // Leaves: [begin, end) into the leaf-ordered arrays, axis == -1.
    // Inner nodes: children at left/right, split plane on `axis`.
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::int32_t axis = -1;
    double split = 0.0;
  };

  std::int32_t build(std::uint32_t begin, std::uint32_t end, std::vector<Point3>& pts);

  template <typename Visitor>
  void search(const Point3& query, Visitor& visitor) const;

  std::size_t leaf_size_;
  std::vector<Node> nodes_;
  std::vector<std::size_t> order_;  // leaf position -> original index
  std::vector<double> xs_, ys_, zs_;
};

/// Builds an index; throws EmptyCloud.
NnIndex build_nn_index(const PointCloud& cloud);

/// Free-function form of NnIndex::nearest.
std::optional<Neighbor> nearest(const NnIndex& index, const Point3& query, double max_distance);

}  // namespace artic

#endif  // ARTIC_NN_INDEX_HPP_

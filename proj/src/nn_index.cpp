// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0

#include "artic/nn_index.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <queue>

#include "artic/error.hpp"
#include "artic/kernels.hpp"

namespace artic {
namespace {

constexpr std::size_t kMaxLeaf = 64;

struct HeapEntry {
  double d2;
  std::size_t index;
  bool operator<(const HeapEntry& o) const {
    return d2 < o.d2 || (d2 == o.d2 && index < o.index);
  }
};

}  // namespace

NnIndex::NnIndex(const PointCloud& cloud, std::size_t leaf_size)
    : leaf_size_(std::clamp<std::size_t>(leaf_size, 1, kMaxLeaf)) {
  if (cloud.empty()) throw Error(ErrorCode::kEmptyCloud, "registration", "cannot index an empty cloud");
  order_.resize(cloud.size());
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::vector<Point3> pts = cloud.points;
  nodes_.reserve(2 * cloud.size() / leaf_size_ + 1);
  build(0, static_cast<std::uint32_t>(cloud.size()), pts);
  xs_.resize(order_.size());
  ys_.resize(order_.size());
  zs_.resize(order_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) {
    const Point3& p = cloud[order_[i]];
    xs_[i] = p.x();
    ys_[i] = p.y();
    zs_[i] = p.z();
  }
}

std::int32_t NnIndex::build(std::uint32_t begin, std::uint32_t end, std::vector<Point3>& pts) {
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(Node{begin, end});
  if (end - begin <= leaf_size_) return id;

  Eigen::Vector3d lo = pts[order_[begin]], hi = lo;
  for (std::uint32_t i = begin; i < end; ++i) {
    lo = lo.cwiseMin(pts[order_[i]]);
    hi = hi.cwiseMax(pts[order_[i]]);
  }
  int axis = 0;
  (hi - lo).maxCoeff(&axis);  // coincident points still split by index

  const std::uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](std::size_t a, std::size_t b) {
                     const double ca = pts[a](axis), cb = pts[b](axis);
                     return ca < cb || (ca == cb && a < b);
                   });
  const double split = pts[order_[mid]](axis);
  const std::int32_t left = build(begin, mid, pts);
  const std::int32_t right = build(mid, end, pts);
  Node& node = nodes_[id];
  node.axis = axis;
  node.split = split;
  node.left = left;
  node.right = right;
  return id;
}

template <typename Visitor>
void NnIndex::search(const Point3& query, Visitor& visitor) const {
  std::array<double, kMaxLeaf> d2;
  // Explicit stack of (node, lower bound on squared distance).
  std::array<std::pair<std::int32_t, double>, 128> stack;
  std::size_t top = 0;
  stack[top++] = {0, 0.0};
  while (top > 0) {
    const auto [id, bound] = stack[--top];
    if (bound > visitor.bound()) continue;
    const Node& node = nodes_[id];
    if (node.axis < 0) {
      const kernels::SoaView view{xs_.data() + node.begin, ys_.data() + node.begin,
                                  zs_.data() + node.begin, node.end - node.begin};
      kernels::squared_distances(view, query, d2.data());
      for (std::uint32_t i = 0; i < view.size; ++i) visitor.offer(d2[i], order_[node.begin + i]);
      continue;
    }
    const double diff = query(node.axis) - node.split;
    const double plane = diff * diff;
    const std::int32_t near = diff <= 0.0 ? node.left : node.right;
    const std::int32_t far = diff <= 0.0 ? node.right : node.left;
    // Far pushed first so the near side is explored first.
    stack[top++] = {far, std::max(bound, plane)};
    stack[top++] = {near, bound};
  }
}

std::optional<Neighbor> NnIndex::nearest(const Point3& query, double max_distance) const {
  struct Visitor {
    double best;
    std::size_t index = 0;
    bool found = false;
    double bound() const { return best; }
    void offer(double d2, std::size_t i) {
      if (d2 < best || (d2 == best && (!found || i < index))) {
        best = d2;
        index = i;
        found = true;
      }
    }
  } visitor{max_distance * max_distance};
  if (std::isinf(max_distance)) visitor.best = std::numeric_limits<double>::infinity();
  search(query, visitor);
  if (!visitor.found) return std::nullopt;
  return Neighbor{visitor.index, std::sqrt(visitor.best)};
}

std::vector<Neighbor> NnIndex::knn(const Point3& query, std::size_t k,
                                   std::optional<std::size_t> exclude) const {
  struct Visitor {
    std::size_t k;
    std::optional<std::size_t> exclude;
    std::priority_queue<HeapEntry> heap;
    double bound() const {
      return heap.size() < k ? std::numeric_limits<double>::infinity() : heap.top().d2;
    }
    void offer(double d2, std::size_t i) {
      if (exclude && *exclude == i) return;
      const HeapEntry e{d2, i};
      if (heap.size() < k) {
        heap.push(e);
      } else if (e < heap.top()) {
        heap.pop();
        heap.push(e);
      }
    }
  } visitor{k, exclude, {}};
  if (k == 0) return {};
  search(query, visitor);
  std::vector<Neighbor> out(visitor.heap.size());
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = Neighbor{visitor.heap.top().index, std::sqrt(visitor.heap.top().d2)};
    visitor.heap.pop();
  }
  return out;
}

std::vector<std::size_t> NnIndex::radius(const Point3& query, double radius) const {
  struct Visitor {
    double r2;
    std::vector<std::size_t> hits;
    double bound() const { return r2; }
    void offer(double d2, std::size_t i) {
      if (d2 <= r2) hits.push_back(i);
    }
  } visitor{radius * radius, {}};
  search(query, visitor);
  std::sort(visitor.hits.begin(), visitor.hits.end());
  return std::move(visitor.hits);
}

NnIndex build_nn_index(const PointCloud& cloud) { return NnIndex(cloud); }

std::optional<Neighbor> nearest(const NnIndex& index, const Point3& query, double max_distance) {
  return index.nearest(query, max_distance);
}

}  // namespace artic

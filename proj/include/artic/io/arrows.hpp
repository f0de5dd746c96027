// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0
//
// Arrow fields of local registrations, exported as PLY line sets.

#ifndef ARTIC_IO_ARROWS_HPP_
#define ARTIC_IO_ARROWS_HPP_

#include <filesystem>
#include <vector>

#include "artic/classifier.hpp"

namespace artic {

struct Arrow {
  Point3 origin = Point3::Zero();          // centroid of the region's `a` points
  Eigen::Vector3d displacement = Eigen::Vector3d::Zero();  // translation of the local transform
  double angle = 0.0;                      // rotation magnitude, radians
  int group = 0;                           // position of the region's key in the key table
  CellIndex cell{};
};

/// One arrow per kept registration, in region order.
std::vector<Arrow> arrow_field(const FrameDecision& decision);

/// PLY with two vertices (origin, origin + displacement) and one edge per
/// arrow. Vertices carry `group` and `angle`, edges carry `group`.
/// Throws IoError.
void export_arrows(const std::vector<Arrow>& arrows, const std::filesystem::path& path);

}  // namespace artic

#endif  // ARTIC_IO_ARROWS_HPP_

// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0

#include "artic/io/arrows.hpp"

#include <map>

#include "artic/io/ply.hpp"

namespace artic {

std::vector<Arrow> arrow_field(const FrameDecision& decision) {
  std::map<CellIndex, int> group_of;
  int group = 0;
  for (const auto& [key, cells] : decision.keys) {
    for (const auto& c : cells) group_of[c] = group;
    ++group;
  }
  std::vector<Arrow> out;
  for (const auto& reg : decision.registrations.kept) {
    Arrow a;
    a.origin = reg.centroid_a;
    a.displacement = reg.transform.translation();
    a.angle = reg.transform.angle();
    a.cell = reg.cell;
    const auto it = group_of.find(reg.cell);
    a.group = it == group_of.end() ? -1 : it->second;
    out.push_back(a);
  }
  return out;
}

void export_arrows(const std::vector<Arrow>& arrows, const std::filesystem::path& path) {
  PlyData data;
  data.format = PlyFormat::kAscii;
  PlyElement v;
  v.name = "vertex";
  v.count = 2 * arrows.size();
  v.properties = {{"x"}, {"y"}, {"z"}, {"group", PlyType::kInt32}, {"angle"}};
  v.columns.resize(5);
  PlyElement e;
  e.name = "edge";
  e.count = arrows.size();
  e.properties = {{"vertex1", PlyType::kInt32}, {"vertex2", PlyType::kInt32}, {"group", PlyType::kInt32}};
  e.columns.resize(3);
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    const Arrow& a = arrows[i];
    for (const Point3& p : {a.origin, Point3(a.origin + a.displacement)}) {
      for (int k = 0; k < 3; ++k) v.columns[k].push_back(p[k]);
      v.columns[3].push_back(a.group);
      v.columns[4].push_back(a.angle);
    }
    e.columns[0].push_back(static_cast<double>(2 * i));
    e.columns[1].push_back(static_cast<double>(2 * i + 1));
    e.columns[2].push_back(a.group);
  }
  data.elements = {std::move(v), std::move(e)};
  write_ply_data(data, path);
}

}  // namespace artic

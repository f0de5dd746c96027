// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0
//
// PLY point clouds: ascii, binary little- and big-endian.

#ifndef ARTIC_IO_PLY_HPP_
#define ARTIC_IO_PLY_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "artic/geometry.hpp"

namespace artic {

enum class PlyFormat { kAscii, kBinaryLittleEndian, kBinaryBigEndian };

enum class PlyType { kInt8, kUint8, kInt16, kUint16, kInt32, kUint32, kFloat32, kFloat64 };

struct PlyProperty {
  std::string name;
  PlyType type = PlyType::kFloat64;
  bool is_list = false;
  PlyType count_type = PlyType::kUint8;
};

/// One element block. Scalar properties are decoded into `columns` (one per
/// property, list properties left empty).
struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<PlyProperty> properties;
  std::vector<std::vector<double>> columns;

  /// Column of scalar property `name`, or nullptr.
  const std::vector<double>* column(const std::string& name) const;
};

struct PlyData {
  PlyFormat format = PlyFormat::kBinaryLittleEndian;
  std::vector<PlyElement> elements;

  const PlyElement* element(const std::string& name) const;
};

/// Throws MissingFile, ParseError (with line or byte offset).
PlyData read_ply_data(const std::filesystem::path& path);

/// Writes scalar elements; every column must hold `count` values. Throws IoError.
void write_ply_data(const PlyData& data, const std::filesystem::path& path);

/// Vertex x, y, z of a PLY file; other properties and elements are ignored.
PointCloud read_ply(const std::filesystem::path& path);

/// Double-precision x, y, z vertices.
void write_ply(const PointCloud& cloud, const std::filesystem::path& path,
               PlyFormat format = PlyFormat::kBinaryLittleEndian);

}  // namespace artic

#endif  // ARTIC_IO_PLY_HPP_

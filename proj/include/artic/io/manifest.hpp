// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0
//
// Depth + mask sequence manifests (JSON). Frame paths are relative to the
// manifest file.
//
//   {
//     "intrinsics": {"fx": 525.0, "fy": 525.0, "cx": 319.5, "cy": 239.5},
//     "depth_scale": 0.001,
//     "frames": [{"index": 0, "depth": "depth/000000.png", "mask": "mask/000000.png"}]
//   }

#ifndef ARTIC_IO_MANIFEST_HPP_
#define ARTIC_IO_MANIFEST_HPP_

#include <filesystem>
#include <vector>

#include "artic/preprocess.hpp"

namespace artic {

struct FrameRecord {
  int index = 0;
  std::filesystem::path depth;  // as written in the manifest
  std::filesystem::path mask;
};

struct SequenceManifest {
  CameraIntrinsics intrinsics;
  /// Metres per depth unit.
  double depth_scale = 0.001;
  std::vector<FrameRecord> frames;
  /// Directory the frame paths are relative to.
  std::filesystem::path base_dir;

  std::filesystem::path resolve(const std::filesystem::path& p) const;
};

/// Throws ParseError, MissingFile, NonMonotoneIndices; messages name the
/// offending frame record.
SequenceManifest read_manifest(const std::filesystem::path& path);

/// Throws IoError.
void write_manifest(const SequenceManifest& manifest, const std::filesystem::path& path);

/// Loads the depth and mask PNGs of frames[i].
DepthFrame load_frame(const SequenceManifest& manifest, std::size_t i);

}  // namespace artic

#endif  // ARTIC_IO_MANIFEST_HPP_

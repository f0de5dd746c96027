// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0
//
// Single-channel PNG images: 16-bit depth maps and 8-bit masks.

#ifndef ARTIC_IO_PNG_IMAGE_HPP_
#define ARTIC_IO_PNG_IMAGE_HPP_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "artic/preprocess.hpp"

namespace artic {

template <typename T>
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<T> pixels;  // row-major
};

using Gray16 = GrayImage<std::uint16_t>;
using Gray8 = GrayImage<std::uint8_t>;

/// Throws IoError.
void write_png16(const Gray16& image, const std::filesystem::path& path);
void write_png8(const Gray8& image, const std::filesystem::path& path);

/// Grayscale files only. Throws MissingFile, ParseError.
Gray16 read_png16(const std::filesystem::path& path);
/// Any grayscale bit depth, expanded to 8 bits.
Gray8 read_png8(const std::filesystem::path& path);

/// Depth in metres -> integer units of `depth_scale` metres (0 = invalid),
/// rounded and clamped to 16 bits; the mask becomes 0/255.
Gray16 encode_depth(const DepthFrame& frame, double depth_scale);
Gray8 encode_mask(const DepthFrame& frame);

/// Inverse of encode_depth/encode_mask. Throws InvalidArgument when the
/// image sizes differ.
DepthFrame decode_depth(const Gray16& depth, const Gray8& mask, double depth_scale,
                        const CameraIntrinsics& intrinsics, int frame_index);

}  // namespace artic

#endif  // ARTIC_IO_PNG_IMAGE_HPP_

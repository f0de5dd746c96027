// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0

#include "artic/io/png_image.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <memory>
#include <string>

#include "artic/error.hpp"

namespace artic {
namespace {

constexpr std::string_view kModule = "io";

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// Everything touched between setjmp and a possible longjmp lives here, on
// the heap, so no local is left indeterminate.
struct ReadState {
  png_structp png = nullptr;
  png_infop info = nullptr;
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int bit_depth = 0;
  int color_type = 0;
  std::vector<png_byte> bytes;
  char message[256] = {};
  ~ReadState() {
    if (png != nullptr) png_destroy_read_struct(&png, info != nullptr ? &info : nullptr, nullptr);
  }
};

struct WriteState {
  png_structp png = nullptr;
  png_infop info = nullptr;
  std::vector<png_bytep> rows;
  char message[256] = {};
  ~WriteState() {
    if (png != nullptr) png_destroy_write_struct(&png, info != nullptr ? &info : nullptr);
  }
};

template <typename State>
void on_error(png_structp png, png_const_charp msg) {
  auto* state = static_cast<State*>(png_get_error_ptr(png));
  std::snprintf(state->message, sizeof state->message, "%s", msg);
  png_longjmp(png, 1);
}

void on_warning(png_structp, png_const_charp) {}

// Decodes a grayscale PNG into big-endian rows of `want_depth` bits.
std::unique_ptr<ReadState> read_gray(const std::filesystem::path& path, int want_depth) {
  FilePtr f(std::fopen(path.string().c_str(), "rb"));
  if (!f) throw Error(ErrorCode::kMissingFile, kModule, "cannot open " + path.string());
  png_byte sig[8];
  if (std::fread(sig, 1, 8, f.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
    throw Error(ErrorCode::kParseError, kModule, path.string() + ": not a PNG file");
  }
  auto state = std::make_unique<ReadState>();
  ReadState* s = state.get();
  s->png = png_create_read_struct(PNG_LIBPNG_VER_STRING, s, on_error<ReadState>, on_warning);
  if (s->png == nullptr) throw Error(ErrorCode::kIoError, kModule, "png_create_read_struct failed");
  s->info = png_create_info_struct(s->png);
  if (s->info == nullptr) throw Error(ErrorCode::kIoError, kModule, "png_create_info_struct failed");

  bool bad_kind = false;
  if (setjmp(png_jmpbuf(s->png)) == 0) {
    png_init_io(s->png, f.get());
    png_set_sig_bytes(s->png, 8);
    png_read_info(s->png, s->info);
    s->width = png_get_image_width(s->png, s->info);
    s->height = png_get_image_height(s->png, s->info);
    s->bit_depth = png_get_bit_depth(s->png, s->info);
    s->color_type = png_get_color_type(s->png, s->info);
    if ((s->color_type & PNG_COLOR_MASK_COLOR) != 0 ||
        (want_depth == 16 && s->bit_depth != 16)) {
      bad_kind = true;
    } else {
      if (s->color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(s->png);
      if (s->bit_depth < 8) png_set_expand_gray_1_2_4_to_8(s->png);
      if (want_depth == 8 && s->bit_depth == 16) png_set_strip_16(s->png);
      png_read_update_info(s->png, s->info);
      const std::size_t stride = png_get_rowbytes(s->png, s->info);
      s->bytes.resize(stride * s->height);
      for (png_uint_32 y = 0; y < s->height; ++y) {
        png_read_row(s->png, s->bytes.data() + stride * y, nullptr);
      }
      png_read_end(s->png, nullptr);
    }
  } else {
    throw Error(ErrorCode::kParseError, kModule, path.string() + ": " + s->message);
  }
  if (bad_kind) {
    throw Error(ErrorCode::kParseError, kModule,
                path.string() + ": expected a " + std::to_string(want_depth) +
                    "-bit grayscale image (bit depth " + std::to_string(s->bit_depth) +
                    ", color type " + std::to_string(s->color_type) + ")");
  }
  return state;
}

void write_gray(const std::filesystem::path& path, int width, int height, int depth,
                std::vector<png_byte>& bytes) {
  FilePtr f(std::fopen(path.string().c_str(), "wb"));
  if (!f) throw Error(ErrorCode::kIoError, kModule, "cannot write " + path.string());
  auto state = std::make_unique<WriteState>();
  WriteState* s = state.get();
  s->png = png_create_write_struct(PNG_LIBPNG_VER_STRING, s, on_error<WriteState>, on_warning);
  if (s->png == nullptr) throw Error(ErrorCode::kIoError, kModule, "png_create_write_struct failed");
  s->info = png_create_info_struct(s->png);
  if (s->info == nullptr) throw Error(ErrorCode::kIoError, kModule, "png_create_info_struct failed");
  const std::size_t stride = static_cast<std::size_t>(width) * (depth / 8);
  s->rows.resize(static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y) s->rows[y] = bytes.data() + stride * y;

  if (setjmp(png_jmpbuf(s->png)) == 0) {
    png_init_io(s->png, f.get());
    png_set_IHDR(s->png, s->info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
                 depth, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(s->png, s->info);
    png_write_image(s->png, s->rows.data());
    png_write_end(s->png, nullptr);
  } else {
    throw Error(ErrorCode::kIoError, kModule, path.string() + ": " + s->message);
  }
  if (std::fflush(f.get()) != 0) throw Error(ErrorCode::kIoError, kModule, "write failed for " + path.string());
}

template <typename T>
void check_size(const GrayImage<T>& image) {
  if (image.width <= 0 || image.height <= 0 ||
      image.pixels.size() != static_cast<std::size_t>(image.width) * image.height) {
    throw Error(ErrorCode::kInvalidArgument, kModule, "image buffer does not match its size");
  }
}

}  // namespace

void write_png16(const Gray16& image, const std::filesystem::path& path) {
  check_size(image);
  std::vector<png_byte> bytes(image.pixels.size() * 2);
  for (std::size_t i = 0; i < image.pixels.size(); ++i) {
    bytes[2 * i] = static_cast<png_byte>(image.pixels[i] >> 8);
    bytes[2 * i + 1] = static_cast<png_byte>(image.pixels[i] & 0xff);
  }
  write_gray(path, image.width, image.height, 16, bytes);
}

void write_png8(const Gray8& image, const std::filesystem::path& path) {
  check_size(image);
  std::vector<png_byte> bytes(image.pixels.begin(), image.pixels.end());
  write_gray(path, image.width, image.height, 8, bytes);
}

Gray16 read_png16(const std::filesystem::path& path) {
  const auto s = read_gray(path, 16);
  Gray16 out;
  out.width = static_cast<int>(s->width);
  out.height = static_cast<int>(s->height);
  out.pixels.resize(static_cast<std::size_t>(out.width) * out.height);
  for (std::size_t i = 0; i < out.pixels.size(); ++i) {
    out.pixels[i] = static_cast<std::uint16_t>((s->bytes[2 * i] << 8) | s->bytes[2 * i + 1]);
  }
  return out;
}

Gray8 read_png8(const std::filesystem::path& path) {
  const auto s = read_gray(path, 8);
  Gray8 out;
  out.width = static_cast<int>(s->width);
  out.height = static_cast<int>(s->height);
  out.pixels.assign(s->bytes.begin(), s->bytes.end());
  return out;
}

Gray16 encode_depth(const DepthFrame& frame, double depth_scale) {
  if (!(depth_scale > 0.0)) throw Error(ErrorCode::kInvalidArgument, kModule, "depth scale must be > 0");
  Gray16 out{frame.width, frame.height, std::vector<std::uint16_t>(frame.depth.size(), 0)};
  for (std::size_t i = 0; i < frame.depth.size(); ++i) {
    const double units = std::round(frame.depth[i] / depth_scale);
    out.pixels[i] = static_cast<std::uint16_t>(std::clamp(units, 0.0, 65535.0));
  }
  return out;
}

Gray8 encode_mask(const DepthFrame& frame) {
  Gray8 out{frame.width, frame.height, std::vector<std::uint8_t>(frame.mask.size(), 0)};
  for (std::size_t i = 0; i < frame.mask.size(); ++i) out.pixels[i] = frame.mask[i] != 0 ? 255 : 0;
  return out;
}

DepthFrame decode_depth(const Gray16& depth, const Gray8& mask, double depth_scale,
                        const CameraIntrinsics& intrinsics, int frame_index) {
  if (depth.width != mask.width || depth.height != mask.height) {
    throw Error(ErrorCode::kInvalidArgument, kModule,
                "depth is " + std::to_string(depth.width) + "x" + std::to_string(depth.height) +
                    " but mask is " + std::to_string(mask.width) + "x" + std::to_string(mask.height));
  }
  DepthFrame f;
  f.width = depth.width;
  f.height = depth.height;
  f.intrinsics = intrinsics;
  f.frame_index = frame_index;
  f.depth.resize(depth.pixels.size());
  for (std::size_t i = 0; i < depth.pixels.size(); ++i) f.depth[i] = depth.pixels[i] * depth_scale;
  f.mask = mask.pixels;
  return f;
}

}  // namespace artic

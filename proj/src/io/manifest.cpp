// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0

#include "artic/io/manifest.hpp"

#include <fstream>
#include <string>

#include "artic/error.hpp"
#include "artic/io/png_image.hpp"
#include "json.hpp"

namespace artic {
namespace {

constexpr std::string_view kModule = "io";
using Json = nlohmann::ordered_json;

double number_at(const Json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    throw Error(ErrorCode::kParseError, kModule, where + ": missing number '" + key + "'");
  }
  return obj[key].get<double>();
}

}  // namespace

std::filesystem::path SequenceManifest::resolve(const std::filesystem::path& p) const {
  return p.is_absolute() ? p : base_dir / p;
}

SequenceManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kMissingFile, kModule, "cannot open manifest " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParseError, kModule, path.string() + ": " + e.what());
  }
  const std::string name = path.string();
  if (!doc.is_object()) throw Error(ErrorCode::kParseError, kModule, name + ": not a JSON object");

  SequenceManifest m;
  m.base_dir = path.parent_path();
  if (!doc.contains("intrinsics") || !doc["intrinsics"].is_object()) {
    throw Error(ErrorCode::kParseError, kModule, name + ": missing 'intrinsics' object");
  }
  const Json& k = doc["intrinsics"];
  m.intrinsics = {number_at(k, "fx", name + ": intrinsics"), number_at(k, "fy", name + ": intrinsics"),
                  number_at(k, "cx", name + ": intrinsics"), number_at(k, "cy", name + ": intrinsics")};
  if (doc.contains("depth_scale")) m.depth_scale = number_at(doc, "depth_scale", name);
  if (!(m.depth_scale > 0.0)) throw Error(ErrorCode::kParseError, kModule, name + ": depth_scale must be > 0");
  if (!doc.contains("frames") || !doc["frames"].is_array()) {
    throw Error(ErrorCode::kParseError, kModule, name + ": missing 'frames' array");
  }

  std::size_t pos = 0;
  for (const Json& rec : doc["frames"]) {
    const std::string where = name + ": frame record " + std::to_string(pos++);
    if (!rec.is_object() || !rec.contains("index") || !rec["index"].is_number_integer() ||
        !rec.contains("depth") || !rec["depth"].is_string() || !rec.contains("mask") ||
        !rec["mask"].is_string()) {
      throw Error(ErrorCode::kParseError, kModule,
                  where + ": needs integer 'index' and string 'depth' and 'mask'");
    }
    FrameRecord r{rec["index"].get<int>(), rec["depth"].get<std::string>(),
                  rec["mask"].get<std::string>()};
    if (!m.frames.empty() && r.index <= m.frames.back().index) {
      throw Error(ErrorCode::kNonMonotoneIndices, kModule,
                  where + ": index " + std::to_string(r.index) + " does not follow " +
                      std::to_string(m.frames.back().index));
    }
    for (const auto* p : {&r.depth, &r.mask}) {
      const auto full = m.resolve(*p);
      if (!std::filesystem::is_regular_file(full)) {
        throw Error(ErrorCode::kMissingFile, kModule,
                    where + " (index " + std::to_string(r.index) + "): missing file " + full.string());
      }
    }
    m.frames.push_back(std::move(r));
  }
  return m;
}

void write_manifest(const SequenceManifest& manifest, const std::filesystem::path& path) {
  Json doc;
  doc["intrinsics"] = {{"fx", manifest.intrinsics.fx},
                       {"fy", manifest.intrinsics.fy},
                       {"cx", manifest.intrinsics.cx},
                       {"cy", manifest.intrinsics.cy}};
  doc["depth_scale"] = manifest.depth_scale;
  doc["frames"] = Json::array();
  for (const auto& r : manifest.frames) {
    doc["frames"].push_back(
        {{"index", r.index}, {"depth", r.depth.generic_string()}, {"mask", r.mask.generic_string()}});
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, kModule, "cannot write " + path.string());
  out << doc.dump(2) << "\n";
  if (!out) throw Error(ErrorCode::kIoError, kModule, "write failed for " + path.string());
}

DepthFrame load_frame(const SequenceManifest& manifest, std::size_t i) {
  const FrameRecord& r = manifest.frames.at(i);
  const Gray16 depth = read_png16(manifest.resolve(r.depth));
  const Gray8 mask = read_png8(manifest.resolve(r.mask));
  return decode_depth(depth, mask, manifest.depth_scale, manifest.intrinsics, r.index);
}

}  // namespace artic

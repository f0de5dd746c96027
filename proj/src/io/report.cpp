// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0

#include "artic/io/report.hpp"

#include <fstream>

#include "artic/error.hpp"

namespace artic {
namespace {

constexpr std::string_view kModule = "io";

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

template <typename T>
void read_into(const Json& obj, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, kModule, std::string("parameter '") + key + "': " + e.what());
  }
}

void read_optional(const Json& obj, const char* key, std::optional<double>& out) {
  if (!obj.contains(key)) return;
  if (obj.at(key).is_null()) {
    out.reset();
  } else if (obj.at(key).is_number()) {
    out = obj.at(key).get<double>();
  } else {
    throw Error(ErrorCode::kParseError, kModule, std::string("parameter '") + key + "' must be a number or null");
  }
}

const Json& section(const Json& j, const char* key) {
  static const Json kEmpty = Json::object();
  if (!j.contains(key)) return kEmpty;
  if (!j.at(key).is_object()) {
    throw Error(ErrorCode::kParseError, kModule, std::string("parameter section '") + key + "' must be an object");
  }
  return j.at(key);
}

}  // namespace

Json to_json(const RunParameters& p) {
  Json j;
  j["preprocess"] = {{"std_ratio", p.preprocess.std_ratio},
                     {"neighbor_fraction", p.preprocess.neighbor_fraction},
                     {"max_neighbors", p.preprocess.max_neighbors},
                     {"voxel_size", optional_number(p.preprocess.voxel_size)},
                     {"smoothing_radius", optional_number(p.preprocess.smoothing_radius)},
                     {"preprocess_ply", p.preprocess_ply}};
  j["classifier"] = {{"voxel_size", optional_number(p.classifier.voxel_size)},
                     {"quaternion_bin", p.classifier.quaternion_bin},
                     {"translation_bin", p.classifier.translation_bin},
                     {"frame_skip", p.classifier.frame_skip},
                     {"pair_stride", p.classifier.pair_stride},
                     {"alpha", p.classifier.alpha},
                     {"confidence_min", p.classifier.confidence_min},
                     {"window", p.classifier.window},
                     {"still_displacement", p.classifier.still_displacement}};
  j["icp"] = {{"max_iterations", p.icp.max_iterations},
              {"convergence_eps", p.icp.convergence_eps},
              {"max_correspondence_distance", optional_number(p.icp.max_correspondence_distance)},
              {"min_pair_count", p.icp.min_pair_count}};
  return j;
}

RunParameters run_parameters_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kParseError, kModule, "parameters must be an object");
  RunParameters p;
  const Json& pre = section(j, "preprocess");
  read_into(pre, "std_ratio", p.preprocess.std_ratio);
  read_into(pre, "neighbor_fraction", p.preprocess.neighbor_fraction);
  read_into(pre, "max_neighbors", p.preprocess.max_neighbors);
  read_optional(pre, "voxel_size", p.preprocess.voxel_size);
  read_optional(pre, "smoothing_radius", p.preprocess.smoothing_radius);
  read_into(pre, "preprocess_ply", p.preprocess_ply);
  const Json& cls = section(j, "classifier");
  read_optional(cls, "voxel_size", p.classifier.voxel_size);
  read_into(cls, "quaternion_bin", p.classifier.quaternion_bin);
  read_into(cls, "translation_bin", p.classifier.translation_bin);
  read_into(cls, "frame_skip", p.classifier.frame_skip);
  read_into(cls, "pair_stride", p.classifier.pair_stride);
  read_into(cls, "alpha", p.classifier.alpha);
  read_into(cls, "confidence_min", p.classifier.confidence_min);
  read_into(cls, "window", p.classifier.window);
  read_into(cls, "still_displacement", p.classifier.still_displacement);
  const Json& icp = section(j, "icp");
  read_into(icp, "max_iterations", p.icp.max_iterations);
  read_into(icp, "convergence_eps", p.icp.convergence_eps);
  read_optional(icp, "max_correspondence_distance", p.icp.max_correspondence_distance);
  read_into(icp, "min_pair_count", p.icp.min_pair_count);
  return p;
}

Json to_json(const MotionKeyTable& keys) {
  Json out = Json::array();
  for (const auto& [key, cells] : keys) {
    Json c = Json::array();
    for (const auto& cell : cells) c.push_back(cell);
    out.push_back({{"q", key.q}, {"t", key.t}, {"cells", c}});
  }
  return out;
}

Json to_json(const FrameDecision& d) {
  const auto& r = d.registrations;
  return {{"first", d.first},
          {"second", d.second},
          {"label", to_string(d.label)},
          {"key_count", d.key_count},
          {"eligible", d.eligible},
          {"kept", d.kept},
          {"skipped", d.skipped},
          {"skipped_occluded", r.skipped_occluded},
          {"skipped_no_match", r.skipped_no_match},
          {"skipped_low_fitness", r.skipped_low_fitness},
          {"voxel_size", d.voxel_size},
          {"correspondence_distance", d.correspondence_distance},
          {"keys", to_json(d.keys)}};
}

Json to_json(const ClassificationReport& report) {
  const SequenceVerdict& v = report.verdict;
  Json j;
  j["verdict"] = to_string(v.label);
  j["no_reliable_pairs"] = v.no_reliable_pairs;
  j["probabilities"] = {{"articulated", v.probabilities.articulated},
                        {"rigid", v.probabilities.rigid},
                        {"no_motion", v.probabilities.no_motion}};
  Json filtered = Json::array();
  for (PairLabel l : v.filtered) filtered.push_back(to_string(l));
  j["filtered"] = filtered;
  Json pairs = Json::array();
  for (const auto& d : v.decisions) pairs.push_back(to_json(d));
  j["pairs"] = pairs;
  Json skipped = Json::array();
  for (const auto& s : report.frames_skipped) skipped.push_back({{"index", s.index}, {"reason", s.reason}});
  j["frames"] = {{"used", report.frames_used}, {"skipped", skipped}};
  j["input"] = report.input;
  j["parameters"] = to_json(report.parameters);
  j["timing"] = {{"seconds", report.seconds}};
  return j;
}

void write_json(const Json& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, kModule, "cannot write " + path.string());
  out << doc.dump(2) << "\n";
  if (!out) throw Error(ErrorCode::kIoError, kModule, "write failed for " + path.string());
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kMissingFile, kModule, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParseError, kModule, path.string() + ": " + e.what());
  }
}

}  // namespace artic

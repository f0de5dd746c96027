// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0

#include "artic/io/scene_config.hpp"

#include <fstream>
#include <string>

#include "artic/error.hpp"

namespace artic {
namespace {

constexpr std::string_view kModule = "io";
using Json = nlohmann::ordered_json;

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidSpec, kModule, what);
}

Eigen::Vector3d vec3(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) invalid(where + " must be a 3-element array");
  Eigen::Vector3d v;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number()) invalid(where + " must hold numbers");
    v[i] = j[i].get<double>();
  }
  return v;
}

Json vec_json(const Eigen::Vector3d& v) { return Json::array({v.x(), v.y(), v.z()}); }

}  // namespace

Json scene_to_json(const SceneSpec& spec) {
  Json j;
  j["frame_count"] = spec.frame_count;
  j["noise_sigma"] = spec.noise_sigma;
  j["seed"] = spec.seed;
  j["parts"] = Json::array();
  for (std::size_t p = 0; p < spec.parts.size(); ++p) {
    const PartSpec& part = spec.parts[p];
    const Eigen::Quaterniond& q = part.pose.rotation();
    Json pj;
    pj["shape"] = to_string(part.shape);
    pj["dims"] = vec_json(part.dims);
    pj["samples"] = part.samples;
    pj["pose"] = {{"rotation", Json::array({q.w(), q.x(), q.y(), q.z()})},
                  {"translation", vec_json(part.pose.translation())}};
    if (p < spec.motions.size()) {
      const MotionSpec& m = spec.motions[p];
      pj["motion"] = {{"kind", to_string(m.kind)}, {"point", vec_json(m.point)},
                      {"axis", vec_json(m.axis)},  {"rate", m.rate},
                      {"velocity", vec_json(m.velocity)}};
    }
    j["parts"].push_back(pj);
  }
  return j;
}

SceneSpec scene_from_json(const Json& j) {
  if (!j.is_object()) invalid("scene must be a JSON object");
  SceneSpec spec;
  try {
    if (j.contains("frame_count")) spec.frame_count = j.at("frame_count").get<int>();
    if (j.contains("noise_sigma")) spec.noise_sigma = j.at("noise_sigma").get<double>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    invalid(std::string("scene header: ") + e.what());
  }
  if (!j.contains("parts") || !j.at("parts").is_array()) invalid("scene needs a 'parts' array");
  std::size_t index = 0;
  for (const Json& pj : j.at("parts")) {
    const std::string where = "part " + std::to_string(index++);
    if (!pj.is_object()) invalid(where + " must be an object");
    PartSpec part;
    MotionSpec motion;
    try {
      const auto shape = parse_shape_kind(pj.value("shape", std::string("box")));
      if (!shape) invalid(where + ": unknown shape");
      part.shape = *shape;
      if (pj.contains("dims")) part.dims = vec3(pj.at("dims"), where + ".dims");
      if (pj.contains("samples")) part.samples = pj.at("samples").get<std::size_t>();
      if (pj.contains("pose")) {
        const Json& pose = pj.at("pose");
        Eigen::Quaterniond q = Eigen::Quaterniond::Identity();
        Eigen::Vector3d t = Eigen::Vector3d::Zero();
        if (pose.contains("rotation")) {
          const Json& r = pose.at("rotation");
          if (!r.is_array() || r.size() != 4) invalid(where + ".pose.rotation must be [w, x, y, z]");
          q = Eigen::Quaterniond(r[0].get<double>(), r[1].get<double>(), r[2].get<double>(),
                                 r[3].get<double>());
          if (!(q.norm() > 0.0)) invalid(where + ".pose.rotation must be non-zero");
        }
        if (pose.contains("translation")) t = vec3(pose.at("translation"), where + ".pose.translation");
        part.pose = RigidTransform(q, t);
      }
      if (pj.contains("motion")) {
        const Json& mj = pj.at("motion");
        const auto kind = parse_motion_kind(mj.value("kind", std::string("static")));
        if (!kind) invalid(where + ": unknown motion kind");
        motion.kind = *kind;
        if (mj.contains("point")) motion.point = vec3(mj.at("point"), where + ".motion.point");
        if (mj.contains("axis")) motion.axis = vec3(mj.at("axis"), where + ".motion.axis");
        if (mj.contains("velocity")) motion.velocity = vec3(mj.at("velocity"), where + ".motion.velocity");
        if (mj.contains("rate")) motion.rate = mj.at("rate").get<double>();
      }
    } catch (const nlohmann::json::exception& e) {
      invalid(where + ": " + e.what());
    }
    spec.parts.push_back(part);
    spec.motions.push_back(motion);
  }
  spec.validate();
  return spec;
}

SceneSpec read_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kMissingFile, kModule, "cannot open scene " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParseError, kModule, path.string() + ": " + e.what());
  }
  return scene_from_json(j);
}

}  // namespace artic

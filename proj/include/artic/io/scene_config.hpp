// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0
//
// SceneSpec <-> JSON.
//
//   {
//     "frame_count": 60, "noise_sigma": 0.002, "seed": 7,
//     "parts": [{"shape": "panel", "dims": [0.4, 0.3, 0.02], "samples": 1000,
//                "pose": {"rotation": [1, 0, 0, 0], "translation": [0, 0, 1]},
//                "motion": {"kind": "revolute", "point": [0, 0, 1], "axis": [1, 0, 0],
//                           "rate": 0.02}}]
//   }

#ifndef ARTIC_IO_SCENE_CONFIG_HPP_
#define ARTIC_IO_SCENE_CONFIG_HPP_

#include <filesystem>

#include "artic/synthetic.hpp"
#include "json.hpp"

namespace artic {

nlohmann::ordered_json scene_to_json(const SceneSpec& spec);
/// Throws InvalidSpec for malformed documents.
SceneSpec scene_from_json(const nlohmann::ordered_json& j);
SceneSpec read_scene(const std::filesystem::path& path);

}  // namespace artic

#endif  // ARTIC_IO_SCENE_CONFIG_HPP_

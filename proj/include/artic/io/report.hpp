// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0
//
// Classification reports and the parameter echo they carry.

#ifndef ARTIC_IO_REPORT_HPP_
#define ARTIC_IO_REPORT_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "artic/classifier.hpp"
#include "artic/icp.hpp"
#include "artic/preprocess.hpp"
#include "json.hpp"

namespace artic {

using Json = nlohmann::ordered_json;

struct RunParameters {
  PreprocessParams preprocess;
  ClassifierParams classifier;
  IcpParams icp;
  /// Preprocess PLY inputs too (depth inputs always are).
  bool preprocess_ply = true;
};

struct SkippedFrame {
  int index = 0;
  std::string reason;
};

struct ClassificationReport {
  std::string input;  // manifest path or PLY directory, as given
  std::vector<int> frames_used;
  std::vector<SkippedFrame> frames_skipped;
  RunParameters parameters;
  SequenceVerdict verdict;
  double seconds = 0.0;
};

Json to_json(const RunParameters& params);
/// Missing keys keep their defaults. Throws ParseError.
RunParameters run_parameters_from_json(const Json& j);

Json to_json(const MotionKeyTable& keys);
Json to_json(const FrameDecision& decision);
/// Field order is fixed; "timing" is the only run-dependent field.
Json to_json(const ClassificationReport& report);

/// Throws IoError.
void write_json(const Json& doc, const std::filesystem::path& path);
/// Throws MissingFile, ParseError.
Json read_json(const std::filesystem::path& path);

}  // namespace artic

#endif  // ARTIC_IO_REPORT_HPP_

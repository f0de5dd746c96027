// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0

#include "artic/error.hpp"

namespace artic {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDegenerateCorrespondences: return "DegenerateCorrespondences";
    case ErrorCode::kNotARotation: return "NotARotation";
    case ErrorCode::kEmptyCloud: return "EmptyCloud";
    case ErrorCode::kTooFewPoints: return "TooFewPoints";
    case ErrorCode::kFrameSkipped: return "FrameSkipped";
    case ErrorCode::kNoCorrespondences: return "NoCorrespondences";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kPointBehindCamera: return "PointBehindCamera";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kMissingFile: return "MissingFile";
    case ErrorCode::kNonMonotoneIndices: return "NonMonotoneIndices";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInsufficientFrames: return "InsufficientFrames";
    case ErrorCode::kEmptyAfterExclusion: return "EmptyAfterExclusion";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string_view module, const std::string& detail)
    : std::runtime_error(std::string(module) + ": " + std::string(to_string(code)) + ": " + detail),
      code_(code) {}

}  // namespace artic

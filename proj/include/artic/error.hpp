// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ARTIC_ERROR_HPP_
#define ARTIC_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace artic {

enum class ErrorCode {
  kDegenerateCorrespondences,
  kNotARotation,
  kEmptyCloud,
  kTooFewPoints,
  kFrameSkipped,
  kNoCorrespondences,
  kInvalidSpec,
  kPointBehindCamera,
  kParseError,
  kMissingFile,
  kNonMonotoneIndices,
  kIoError,
  kInsufficientFrames,
  kEmptyAfterExclusion,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. The message is prefixed with the
/// module that raised it, e.g. "registration: NoCorrespondences: ...".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string_view module, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace artic

#endif  // ARTIC_ERROR_HPP_

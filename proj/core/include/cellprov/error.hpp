// Copyright 2026 The cellprov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cellprov {

enum class ErrorCode {
  kTagListOverflow,
  kShapeValueMismatch,
  kIdCollision,
  kInvalidShape,
  kAlreadyAnnotated,
  kShapeMismatch,
  kRankRequired,
  kEmptyAxis,
  kInvalidRadius,
  kReshapeSizeMismatch,
  kCellOutOfRange,
  // ProvTable decoding.
  kBadMagic,
  kVersionMismatch,
  kTruncated,
  kUnsortedRecords,
  kRecordOutOfRange,
  kIo,
  // Benchmark configuration.
  kInvalidConfig,
  kBenchShape,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. Messages start with the canonical
/// text for the code (rank errors name the operation first).
class Error : public std::runtime_error {
 public:
  explicit Error(ErrorCode code);
  Error(ErrorCode code, std::string_view detail);

  /// "<op> requires rank 2".
  static Error rank_required(std::string_view op);

  ErrorCode code() const noexcept { return code_; }

 private:
  Error(ErrorCode code, std::string message, int);

  ErrorCode code_;
};

}  // namespace cellprov

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

#include "cellprov/error.hpp"

#include <utility>

namespace cellprov {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kTagListOverflow: return "tag list overflow";
    case ErrorCode::kShapeValueMismatch: return "shape/value mismatch";
    case ErrorCode::kIdCollision: return "id collision";
    case ErrorCode::kInvalidShape: return "invalid shape";
    case ErrorCode::kAlreadyAnnotated: return "already annotated";
    case ErrorCode::kShapeMismatch: return "shape mismatch";
    case ErrorCode::kRankRequired: return "requires rank 2";
    case ErrorCode::kEmptyAxis: return "zero-length axis";
    case ErrorCode::kInvalidRadius: return "radius must be >= 1";
    case ErrorCode::kReshapeSizeMismatch: return "reshape size mismatch";
    case ErrorCode::kCellOutOfRange: return "cell out of range";
    case ErrorCode::kBadMagic: return "bad magic";
    case ErrorCode::kVersionMismatch: return "version mismatch";
    case ErrorCode::kTruncated: return "truncated table";
    case ErrorCode::kUnsortedRecords: return "unsorted or duplicate records";
    case ErrorCode::kRecordOutOfRange: return "record out of range";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kInvalidConfig: return "invalid benchmark config";
    case ErrorCode::kBenchShape: return "shape error";
  }
  return "unknown error";
}

Error::Error(ErrorCode code) : std::runtime_error(std::string(to_string(code))), code_(code) {}

Error::Error(ErrorCode code, std::string_view detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + std::string(detail)), code_(code) {}

Error::Error(ErrorCode code, std::string message, int) : std::runtime_error(std::move(message)), code_(code) {}

Error Error::rank_required(std::string_view op) {
  return Error(ErrorCode::kRankRequired, std::string(op) + " requires rank 2", 0);
}

}  // namespace cellprov

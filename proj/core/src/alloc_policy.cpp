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

#include "cellprov/alloc_policy.hpp"

#include <algorithm>

#include "cellprov/error.hpp"

namespace cellprov {

AllocPolicy AllocPolicy::doubling(std::uint32_t initial_overflow_capacity) {
  if (initial_overflow_capacity == 0) {
    throw Error(ErrorCode::kInvalidConfig, "doubling needs an initial overflow capacity >= 1");
  }
  return {Kind::kDoubling, initial_overflow_capacity};
}

std::optional<AllocPolicy> AllocPolicy::parse(std::string_view name) {
  if (name == "exactfit") return exact_fit();
  if (name == "doubling") return doubling();
  if (name == "prealloc") return prealloc(0);
  return std::nullopt;
}

std::string_view AllocPolicy::name() const noexcept {
  switch (kind_) {
    case Kind::kExactFit: return "exactfit";
    case Kind::kDoubling: return "doubling";
    case Kind::kPrealloc: return "prealloc";
  }
  return "unknown";
}

void AllocStats::merge(const AllocStats& other) noexcept {
  growth_events += other.growth_events;
  bytes_moved += other.bytes_moved;
  peak_bytes = std::max(peak_bytes, other.peak_bytes);
}

}  // namespace cellprov

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

#include <cstdint>
#include <optional>
#include <string_view>

namespace cellprov {

/// Growth rule for a TagList's overflow buffer.
///
///  - exact_fit: every growth resizes the overflow to exactly the slots needed.
///  - doubling(c0): first overflow allocation holds c0 tags, then x2.
///  - prealloc(n): room for n tags (n - 1 overflow slots) is reserved in one
///    allocation before the first tag lands; past n it doubles.
class AllocPolicy {
 public:
  enum class Kind : std::uint8_t { kExactFit, kDoubling, kPrealloc };

  static constexpr std::uint32_t kDefaultDoublingCapacity = 4;

  constexpr AllocPolicy() noexcept = default;

  static constexpr AllocPolicy exact_fit() noexcept { return {Kind::kExactFit, 0}; }
  /// Throws Error(kInvalidConfig) when initial_overflow_capacity is 0.
  static AllocPolicy doubling(std::uint32_t initial_overflow_capacity = kDefaultDoublingCapacity);
  static constexpr AllocPolicy prealloc(std::uint32_t expected_tags) noexcept {
    return {Kind::kPrealloc, expected_tags};
  }

  /// "exactfit", "doubling" or "prealloc"; doubling uses the default capacity
  /// and prealloc an expectation of 0 (kernels size it per cell).
  static std::optional<AllocPolicy> parse(std::string_view name);

  constexpr Kind kind() const noexcept { return kind_; }
  constexpr std::uint32_t parameter() const noexcept { return param_; }
  std::string_view name() const noexcept;

  friend constexpr bool operator==(const AllocPolicy&, const AllocPolicy&) = default;

 private:
  constexpr AllocPolicy(Kind kind, std::uint32_t param) noexcept : kind_(kind), param_(param) {}

  Kind kind_ = Kind::kExactFit;
  std::uint32_t param_ = 0;
};

/// Overflow-buffer instrumentation for one run. Counters only grow until
/// reset() is called.
struct AllocStats {
  std::uint64_t growth_events = 0;
  std::uint64_t bytes_moved = 0;
  std::uint64_t peak_bytes = 0;

  void reset() noexcept { *this = AllocStats{}; }
  void merge(const AllocStats& other) noexcept;

  friend constexpr bool operator==(const AllocStats&, const AllocStats&) = default;
};

}  // namespace cellprov

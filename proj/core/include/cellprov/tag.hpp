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

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>

namespace cellprov {

/// One lineage annotation: the source array and the (row, col) of the source
/// cell. Rank-1 sources use row 0.
struct CellTag {
  std::uint32_t array_id = 0;
  std::uint32_t row = 0;
  std::uint32_t col = 0;

  friend constexpr auto operator<=>(const CellTag&, const CellTag&) = default;
};

static_assert(sizeof(CellTag) == 12, "a tag is exactly three 32-bit integers");
static_assert(alignof(CellTag) == 4);

inline constexpr std::size_t kEncodedTagSize = 12;

using EncodedTag = std::array<std::byte, kEncodedTagSize>;

/// Little-endian (array_id, row, col).
EncodedTag encode_tag(const CellTag& tag) noexcept;
CellTag decode_tag(std::span<const std::byte, kEncodedTagSize> bytes) noexcept;

}  // namespace cellprov

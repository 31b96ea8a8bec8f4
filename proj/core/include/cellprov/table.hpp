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
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "cellprov/tag.hpp"
#include "cellprov/tracked_array.hpp"

namespace cellprov {

/// One edge of the bipartite output-cell -> source-cell mapping.
struct ProvRecord {
  std::uint32_t out_row = 0;
  std::uint32_t out_col = 0;
  std::uint32_t src_array_id = 0;
  std::uint32_t src_row = 0;
  std::uint32_t src_col = 0;

  CellTag source() const noexcept { return {src_array_id, src_row, src_col}; }

  friend constexpr auto operator<=>(const ProvRecord&, const ProvRecord&) = default;
};

struct OutputCell {
  std::uint32_t row = 0;
  std::uint32_t col = 0;

  friend constexpr auto operator<=>(const OutputCell&, const OutputCell&) = default;
};

/// De-duplicated provenance of one array. Records are strictly increasing
/// in (out_row, out_col, src_array_id, src_row, src_col) order and every
/// out coordinate lies inside output_shape.
struct ProvTable {
  std::uint32_t output_id = 0;
  Shape output_shape;
  std::vector<ProvRecord> records;

  friend bool operator==(const ProvTable&, const ProvTable&) = default;
};

/// Checks the sortedness and bounds invariants.
bool is_valid(const ProvTable& table) noexcept;

/// Sort + adjacent-unique over every (cell, tag) pair. Cells without tags
/// contribute nothing.
ProvTable extract_table(const TrackedArray& array);

/// Sorted source cells of one output cell. Error(kCellOutOfRange) when the
/// cell is outside output_shape.
std::vector<CellTag> backward_trace(const ProvTable& table, std::uint32_t out_row, std::uint32_t out_col);

/// Sorted output cells that list `source`; empty for unknown sources.
std::vector<OutputCell> forward_trace(const ProvTable& table, const CellTag& source);

// Binary layout, all integers little-endian:
//   "DSPV" | u16 version=1 | u32 output_id | u8 rank | u32 rows | u32 cols
//   | u64 record_count | record_count x 5 x u32
inline constexpr std::array<char, 4> kTableMagic = {'D', 'S', 'P', 'V'};
inline constexpr std::uint16_t kTableVersion = 1;
inline constexpr std::size_t kTableHeaderSize = 4 + 2 + 4 + 1 + 4 + 4 + 8;
inline constexpr std::size_t kRecordSize = 5 * 4;

std::vector<std::byte> encode_table(const ProvTable& table);

/// Throws Error with kBadMagic, kVersionMismatch, kTruncated,
/// kUnsortedRecords, kRecordOutOfRange or kInvalidShape.
ProvTable decode_table(std::span<const std::byte> bytes);

/// Stream forms; I/O failures raise Error(kIo).
void write_table(const ProvTable& table, std::ostream& sink);
ProvTable read_table(std::istream& source);

inline constexpr std::string_view kTableCsvHeader = "out_row,out_col,src_array_id,src_row,src_col";

void write_table_csv(const ProvTable& table, std::ostream& sink);

}  // namespace cellprov

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

#include "cellprov/table.hpp"

#include <algorithm>
#include <cstring>
#include <istream>
#include <iterator>
#include <ostream>
#include <string>

#include "cellprov/detail/byte_io.hpp"

namespace cellprov {

bool is_valid(const ProvTable& table) noexcept {
  for (std::size_t i = 0; i < table.records.size(); ++i) {
    const ProvRecord& r = table.records[i];
    if (r.out_row >= table.output_shape.rows || r.out_col >= table.output_shape.cols) return false;
    if (i > 0 && !(table.records[i - 1] < r)) return false;
  }
  return table.output_shape.valid();
}

ProvTable extract_table(const TrackedArray& array) {
  ProvTable table{array.id(), array.shape(), {}};
  table.records.reserve(array.total_tags());
  auto cells = array.cells();
  std::size_t idx = 0;
  for (std::uint32_t i = 0; i < array.rows(); ++i) {
    for (std::uint32_t j = 0; j < array.cols(); ++j, ++idx) {
      for (const CellTag& tag : cells[idx].tags) table.records.push_back({i, j, tag.array_id, tag.row, tag.col});
    }
  }
  std::sort(table.records.begin(), table.records.end());
  table.records.erase(std::unique(table.records.begin(), table.records.end()), table.records.end());
  return table;
}

std::vector<CellTag> backward_trace(const ProvTable& table, std::uint32_t out_row, std::uint32_t out_col) {
  if (out_row >= table.output_shape.rows || out_col >= table.output_shape.cols) {
    throw Error(ErrorCode::kCellOutOfRange, std::to_string(out_row) + "," + std::to_string(out_col));
  }
  const OutputCell key{out_row, out_col};
  auto lo = std::lower_bound(table.records.begin(), table.records.end(), key,
                             [](const ProvRecord& r, const OutputCell& k) { return OutputCell{r.out_row, r.out_col} < k; });
  std::vector<CellTag> sources;
  for (auto it = lo; it != table.records.end() && it->out_row == out_row && it->out_col == out_col; ++it) {
    sources.push_back(it->source());
  }
  return sources;
}

std::vector<OutputCell> forward_trace(const ProvTable& table, const CellTag& source) {
  // Records are grouped by output cell, so each cell appears at most once and
  // in sorted order.
  std::vector<OutputCell> outputs;
  for (const ProvRecord& r : table.records) {
    if (r.source() == source) outputs.push_back({r.out_row, r.out_col});
  }
  return outputs;
}

std::vector<std::byte> encode_table(const ProvTable& table) {
  std::vector<std::byte> out(kTableHeaderSize + table.records.size() * kRecordSize);
  std::byte* p = out.data();
  std::memcpy(p, kTableMagic.data(), kTableMagic.size());
  p += 4;
  detail::store_le(p, kTableVersion);
  p += 2;
  detail::store_le(p, table.output_id);
  p += 4;
  detail::store_le(p, table.output_shape.rank);
  p += 1;
  detail::store_le(p, table.output_shape.rows);
  p += 4;
  detail::store_le(p, table.output_shape.cols);
  p += 4;
  detail::store_le(p, static_cast<std::uint64_t>(table.records.size()));
  p += 8;
  for (const ProvRecord& r : table.records) {
    for (std::uint32_t field : {r.out_row, r.out_col, r.src_array_id, r.src_row, r.src_col}) {
      detail::store_le(p, field);
      p += 4;
    }
  }
  return out;
}

ProvTable decode_table(std::span<const std::byte> bytes) {
  if (bytes.size() < kTableMagic.size()) throw Error(ErrorCode::kTruncated, "missing magic");
  if (std::memcmp(bytes.data(), kTableMagic.data(), kTableMagic.size()) != 0) throw Error(ErrorCode::kBadMagic);
  if (bytes.size() < kTableHeaderSize) throw Error(ErrorCode::kTruncated, "short header");

  const std::byte* p = bytes.data() + 4;
  const auto version = detail::load_le<std::uint16_t>(p);
  if (version != kTableVersion) throw Error(ErrorCode::kVersionMismatch, "got version " + std::to_string(version));
  p += 2;

  ProvTable table;
  table.output_id = detail::load_le<std::uint32_t>(p);
  p += 4;
  table.output_shape.rank = detail::load_le<std::uint8_t>(p);
  p += 1;
  table.output_shape.rows = detail::load_le<std::uint32_t>(p);
  p += 4;
  table.output_shape.cols = detail::load_le<std::uint32_t>(p);
  p += 4;
  const auto count = detail::load_le<std::uint64_t>(p);
  p += 8;
  if (!table.output_shape.valid()) throw Error(ErrorCode::kInvalidShape, "table header");

  const std::size_t body = bytes.size() - kTableHeaderSize;
  if (count > body / kRecordSize) throw Error(ErrorCode::kTruncated, "expected " + std::to_string(count) + " records");
  if (body != count * kRecordSize) throw Error(ErrorCode::kTruncated, "trailing bytes after records");

  table.records.resize(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < table.records.size(); ++i) {
    ProvRecord& r = table.records[i];
    std::uint32_t fields[5];
    for (auto& f : fields) {
      f = detail::load_le<std::uint32_t>(p);
      p += 4;
    }
    r = ProvRecord{fields[0], fields[1], fields[2], fields[3], fields[4]};
    if (r.out_row >= table.output_shape.rows || r.out_col >= table.output_shape.cols) {
      throw Error(ErrorCode::kRecordOutOfRange, "record " + std::to_string(i));
    }
    if (i > 0 && !(table.records[i - 1] < r)) throw Error(ErrorCode::kUnsortedRecords, "record " + std::to_string(i));
  }
  return table;
}

void write_table(const ProvTable& table, std::ostream& sink) {
  const auto bytes = encode_table(table);
  sink.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!sink) throw Error(ErrorCode::kIo, "write failed");
}

ProvTable read_table(std::istream& source) {
  std::vector<char> raw{std::istreambuf_iterator<char>(source), std::istreambuf_iterator<char>()};
  if (source.bad()) throw Error(ErrorCode::kIo, "read failed");
  return decode_table(std::as_bytes(std::span(raw)));
}

void write_table_csv(const ProvTable& table, std::ostream& sink) {
  sink << kTableCsvHeader << '\n';
  for (const ProvRecord& r : table.records) {
    sink << r.out_row << ',' << r.out_col << ',' << r.src_array_id << ',' << r.src_row << ',' << r.src_col << '\n';
  }
  if (!sink) throw Error(ErrorCode::kIo, "write failed");
}

}  // namespace cellprov

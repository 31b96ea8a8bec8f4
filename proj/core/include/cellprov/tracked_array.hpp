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

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "cellprov/tag_list.hpp"

namespace cellprov {

/// Rank-1 arrays of length n are stored as (1, n).
struct Shape {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::uint8_t rank = 2;

  static constexpr Shape vector(std::uint32_t n) noexcept { return {1, n, 1}; }
  static constexpr Shape matrix(std::uint32_t rows, std::uint32_t cols) noexcept { return {rows, cols, 2}; }

  constexpr std::size_t size() const noexcept { return std::size_t{rows} * cols; }
  constexpr bool valid() const noexcept { return (rank == 1 && rows == 1) || rank == 2; }

  friend constexpr bool operator==(const Shape&, const Shape&) = default;
};

struct TrackedCell {
  double value = 0.0;
  TagList tags;
};

static_assert(sizeof(TrackedCell) == 32);

/// Process-wide map from live array id to shape.
class ArrayRegistry {
 public:
  static ArrayRegistry& instance();

  /// Throws Error(kIdCollision) if the id is already live.
  void add(std::uint32_t id, Shape shape);
  void remove(std::uint32_t id) noexcept;
  std::optional<Shape> find(std::uint32_t id) const;
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::unordered_map<std::uint32_t, Shape> shapes_;
};

/// Dense rank-1/2 array of (value, tags) cells, row-major. Owns its id's
/// registry entry for its lifetime; move-only for that reason.
class TrackedArray {
 public:
  /// Throws Error(kShapeValueMismatch) or Error(kInvalidShape); registers
  /// `id` (Error(kIdCollision) if live).
  static TrackedArray from_values(Shape shape, std::uint32_t id, std::span<const double> values);
  static TrackedArray from_cells(Shape shape, std::uint32_t id, std::vector<TrackedCell> cells);

  TrackedArray(TrackedArray&& other) noexcept;
  TrackedArray& operator=(TrackedArray&& other) noexcept;
  TrackedArray(const TrackedArray&) = delete;
  TrackedArray& operator=(const TrackedArray&) = delete;
  ~TrackedArray();

  std::uint32_t id() const noexcept { return id_; }
  const Shape& shape() const noexcept { return shape_; }
  std::uint32_t rows() const noexcept { return shape_.rows; }
  std::uint32_t cols() const noexcept { return shape_.cols; }
  std::uint8_t rank() const noexcept { return shape_.rank; }
  std::size_t size() const noexcept { return cells_.size(); }

  std::span<const TrackedCell> cells() const noexcept { return cells_; }
  std::span<TrackedCell> cells() noexcept { return cells_; }

  const TrackedCell& at(std::uint32_t row, std::uint32_t col) const;
  TrackedCell& at(std::uint32_t row, std::uint32_t col);

  double value(std::uint32_t row, std::uint32_t col) const { return at(row, col).value; }
  const TagList& tags(std::uint32_t row, std::uint32_t col) const { return at(row, col).tags; }

  std::vector<double> values() const;
  std::uint64_t total_tags() const noexcept;

  /// Gives up the cells and the id registration.
  std::vector<TrackedCell> release_cells() &&;

 private:
  TrackedArray(Shape shape, std::uint32_t id, std::vector<TrackedCell> cells);
  void unregister() noexcept;

  Shape shape_;
  std::uint32_t id_ = 0;
  bool registered_ = false;
  std::vector<TrackedCell> cells_;
};

/// All tags empty.
TrackedArray new_tracked(Shape shape, std::uint32_t array_id, std::span<const double> values);

/// Whether every tag names a live registered array and lies within its shape.
bool tags_within_bounds(const TrackedArray& array);

/// Bit-identical values and equal tag sequences, cell by cell; ids are not
/// compared.
bool same_contents(const TrackedArray& a, const TrackedArray& b) noexcept;

}  // namespace cellprov

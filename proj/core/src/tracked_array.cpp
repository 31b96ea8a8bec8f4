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

#include "cellprov/tracked_array.hpp"

#include <bit>
#include <string>
#include <utility>

namespace cellprov {

ArrayRegistry& ArrayRegistry::instance() {
  static ArrayRegistry registry;
  return registry;
}

void ArrayRegistry::add(std::uint32_t id, Shape shape) {
  std::lock_guard lock(mu_);
  if (!shapes_.emplace(id, shape).second) throw Error(ErrorCode::kIdCollision, "array id " + std::to_string(id));
}

void ArrayRegistry::remove(std::uint32_t id) noexcept {
  std::lock_guard lock(mu_);
  shapes_.erase(id);
}

std::optional<Shape> ArrayRegistry::find(std::uint32_t id) const {
  std::lock_guard lock(mu_);
  auto it = shapes_.find(id);
  if (it == shapes_.end()) return std::nullopt;
  return it->second;
}

std::size_t ArrayRegistry::size() const {
  std::lock_guard lock(mu_);
  return shapes_.size();
}

TrackedArray::TrackedArray(Shape shape, std::uint32_t id, std::vector<TrackedCell> cells)
    : shape_(shape), id_(id), cells_(std::move(cells)) {
  if (!shape.valid()) throw Error(ErrorCode::kInvalidShape, "rank-1 arrays need rows == 1, rank must be 1 or 2");
  if (cells_.size() != shape.size()) throw Error(ErrorCode::kShapeValueMismatch);
  ArrayRegistry::instance().add(id, shape);
  registered_ = true;
}

TrackedArray TrackedArray::from_values(Shape shape, std::uint32_t id, std::span<const double> values) {
  if (!shape.valid()) throw Error(ErrorCode::kInvalidShape, "rank-1 arrays need rows == 1, rank must be 1 or 2");
  if (values.size() != shape.size()) throw Error(ErrorCode::kShapeValueMismatch);
  std::vector<TrackedCell> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(TrackedCell{v, {}});
  return TrackedArray(shape, id, std::move(cells));
}

TrackedArray TrackedArray::from_cells(Shape shape, std::uint32_t id, std::vector<TrackedCell> cells) {
  return TrackedArray(shape, id, std::move(cells));
}

TrackedArray::TrackedArray(TrackedArray&& other) noexcept
    : shape_(other.shape_),
      id_(other.id_),
      registered_(std::exchange(other.registered_, false)),
      cells_(std::move(other.cells_)) {}

TrackedArray& TrackedArray::operator=(TrackedArray&& other) noexcept {
  if (this != &other) {
    unregister();
    shape_ = other.shape_;
    id_ = other.id_;
    registered_ = std::exchange(other.registered_, false);
    cells_ = std::move(other.cells_);
  }
  return *this;
}

TrackedArray::~TrackedArray() { unregister(); }

void TrackedArray::unregister() noexcept {
  if (registered_) ArrayRegistry::instance().remove(id_);
  registered_ = false;
}

const TrackedCell& TrackedArray::at(std::uint32_t row, std::uint32_t col) const {
  if (row >= shape_.rows || col >= shape_.cols) throw Error(ErrorCode::kCellOutOfRange);
  return cells_[std::size_t{row} * shape_.cols + col];
}

TrackedCell& TrackedArray::at(std::uint32_t row, std::uint32_t col) {
  return const_cast<TrackedCell&>(std::as_const(*this).at(row, col));
}

std::vector<double> TrackedArray::values() const {
  std::vector<double> out;
  out.reserve(cells_.size());
  for (const auto& cell : cells_) out.push_back(cell.value);
  return out;
}

std::uint64_t TrackedArray::total_tags() const noexcept {
  std::uint64_t total = 0;
  for (const auto& cell : cells_) total += cell.tags.size();
  return total;
}

std::vector<TrackedCell> TrackedArray::release_cells() && {
  unregister();
  return std::move(cells_);
}

TrackedArray new_tracked(Shape shape, std::uint32_t array_id, std::span<const double> values) {
  return TrackedArray::from_values(shape, array_id, values);
}

bool tags_within_bounds(const TrackedArray& array) {
  const auto& registry = ArrayRegistry::instance();
  std::optional<std::uint32_t> cached_id;
  Shape cached_shape;
  for (const auto& cell : array.cells()) {
    for (const CellTag& tag : cell.tags) {
      if (cached_id != tag.array_id) {
        auto shape = registry.find(tag.array_id);
        if (!shape) return false;
        cached_id = tag.array_id;
        cached_shape = *shape;
      }
      if (tag.row >= cached_shape.rows || tag.col >= cached_shape.cols) return false;
    }
  }
  return true;
}

bool same_contents(const TrackedArray& a, const TrackedArray& b) noexcept {
  if (a.shape() != b.shape()) return false;
  auto ca = a.cells();
  auto cb = b.cells();
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (std::bit_cast<std::uint64_t>(ca[i].value) != std::bit_cast<std::uint64_t>(cb[i].value)) return false;
    if (!(ca[i].tags == cb[i].tags)) return false;
  }
  return true;
}

}  // namespace cellprov

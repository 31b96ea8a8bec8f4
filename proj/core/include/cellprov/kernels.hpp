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
#include <utility>
#include <vector>

#include "cellprov/alloc_policy.hpp"
#include "cellprov/tracked_array.hpp"

namespace cellprov {

// Provenance-propagating kernels. Each returns a fresh array registered
// under the caller's out_id. Tag rules:
//   element-wise (map_unary, map_scalar)  copy the input cell's tags
//   zip_binary                            a's tags then b's tags
//   reduce_axis, smooth                   every contributing cell's tags, in
//                                         index / row-major window order
//   where_threshold                       both coordinate cells copy the
//                                         matching cell's tags
//   reshape, transpose                    cells move with their tags
// Duplicates are kept; extract_table de-duplicates.
//
// Under AllocPolicy::prealloc the expected tag count is recomputed per
// output cell from the input tag lengths, so each output cell sees at most
// one growth event. `stats`, when given, accumulates overflow growth.

enum class ReduceKind : std::uint8_t { kSum, kMean, kMax };

/// Seeds every cell (i, j) with the single tag (id, i, j).
/// Throws Error(kAlreadyAnnotated) if any cell already has tags.
TrackedArray annotate(TrackedArray array);

template <class F>
TrackedArray map_unary(const TrackedArray& a, F&& f, std::uint32_t out_id) {
  std::vector<TrackedCell> out;
  out.reserve(a.size());
  for (const TrackedCell& cell : a.cells()) out.push_back(TrackedCell{f(cell.value), cell.tags});
  return TrackedArray::from_cells(a.shape(), out_id, std::move(out));
}

/// f(a[i], c). The constant carries no provenance.
template <class F>
TrackedArray map_scalar(const TrackedArray& a, double c, F&& f, std::uint32_t out_id) {
  std::vector<TrackedCell> out;
  out.reserve(a.size());
  for (const TrackedCell& cell : a.cells()) out.push_back(TrackedCell{f(cell.value, c), cell.tags});
  return TrackedArray::from_cells(a.shape(), out_id, std::move(out));
}

/// Equal shapes only (no broadcasting); Error(kShapeMismatch) otherwise.
template <class F>
TrackedArray zip_binary(const TrackedArray& a, const TrackedArray& b, F&& f, std::uint32_t out_id,
                        const AllocPolicy& policy, AllocStats* stats = nullptr) {
  if (a.shape() != b.shape()) throw Error(ErrorCode::kShapeMismatch);
  AllocStats scratch;
  AllocStats& st = stats != nullptr ? *stats : scratch;
  const bool prealloc = policy.kind() == AllocPolicy::Kind::kPrealloc;
  auto ca = a.cells();
  auto cb = b.cells();
  std::vector<TrackedCell> out;
  out.reserve(ca.size());
  for (std::size_t i = 0; i < ca.size(); ++i) {
    TrackedCell cell{f(ca[i].value, cb[i].value), {}};
    const AllocPolicy p =
        prealloc ? AllocPolicy::prealloc(detail::checked_tag_count(std::uint64_t{ca[i].tags.size()} + cb[i].tags.size()))
                 : policy;
    cell.tags.append(ca[i].tags, p, st);
    cell.tags.append(cb[i].tags, p, st);
    out.push_back(std::move(cell));
  }
  return TrackedArray::from_cells(a.shape(), out_id, std::move(out));
}

/// Collapses `axis` (0: down the rows, 1: across the columns) into a rank-1
/// output whose length is the other extent. When growth_per_cell is given it
/// receives the growth events of each output cell.
TrackedArray reduce_axis(const TrackedArray& a, int axis, ReduceKind kind, std::uint32_t out_id,
                         const AllocPolicy& policy, AllocStats* stats = nullptr,
                         std::vector<std::uint64_t>* growth_per_cell = nullptr);

/// Mean over the (2r+1)^2 window clipped to the array; the divisor is the
/// number of in-bounds neighbors.
TrackedArray smooth(const TrackedArray& a, std::uint32_t radius, std::uint32_t out_id, const AllocPolicy& policy,
                    AllocStats* stats = nullptr);

/// (n, 2) array of the (row, col) of every cell with value > thresh, in
/// row-major scan order.
TrackedArray where_threshold(const TrackedArray& a, double thresh, std::uint32_t out_id);

/// Row-major reinterpretation. Consumes `a`, so out_id may reuse a.id().
TrackedArray reshape(TrackedArray a, Shape new_shape, std::uint32_t out_id);

TrackedArray transpose(const TrackedArray& a, std::uint32_t out_id);

}  // namespace cellprov

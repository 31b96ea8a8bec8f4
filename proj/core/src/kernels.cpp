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

#include "cellprov/kernels.hpp"

#include <algorithm>

namespace cellprov {

namespace {

AllocPolicy cell_policy(const AllocPolicy& policy, std::uint64_t expected_tags) {
  if (policy.kind() != AllocPolicy::Kind::kPrealloc) return policy;
  return AllocPolicy::prealloc(detail::checked_tag_count(expected_tags));
}

void require_rank2(const TrackedArray& a, const char* op) {
  if (a.rank() != 2) throw Error::rank_required(op);
}

}  // namespace

TrackedArray annotate(TrackedArray array) {
  const std::uint32_t id = array.id();
  const std::uint32_t cols = array.cols();
  const AllocPolicy inline_only = AllocPolicy::exact_fit();
  AllocStats unused;
  auto cells = array.cells();
  std::size_t idx = 0;
  // A throw discards `array`, so checking while writing is not observable.
  for (std::uint32_t i = 0; i < array.rows(); ++i) {
    for (std::uint32_t j = 0; j < cols; ++j, ++idx) {
      TagList& tags = cells[idx].tags;
      if (!tags.empty()) throw Error(ErrorCode::kAlreadyAnnotated);
      tags.push(CellTag{id, i, j}, inline_only, unused);
    }
  }
  return array;
}

namespace {

template <ReduceKind Kind>
void reduce_line(const TrackedCell* first, std::size_t stride, std::uint32_t len, const AllocPolicy& policy,
                 AllocStats& stats, TrackedCell& out) {
  double acc = first->value;
  out.tags.append(first->tags, policy, stats);
  const TrackedCell* src = first;
  for (std::uint32_t t = 1; t < len; ++t) {
    src += stride;
    if constexpr (Kind == ReduceKind::kMax) {
      if (src->value > acc) acc = src->value;
    } else {
      acc += src->value;
    }
    out.tags.append(src->tags, policy, stats);
  }
  out.value = Kind == ReduceKind::kMean ? acc / len : acc;
}

}  // namespace

TrackedArray reduce_axis(const TrackedArray& a, int axis, ReduceKind kind, std::uint32_t out_id,
                         const AllocPolicy& policy, AllocStats* stats, std::vector<std::uint64_t>* growth_per_cell) {
  require_rank2(a, "reduce");
  if (axis != 0 && axis != 1) throw Error(ErrorCode::kInvalidShape, "axis must be 0 or 1");
  const std::uint32_t axis_len = axis == 0 ? a.rows() : a.cols();
  const std::uint32_t out_len = axis == 0 ? a.cols() : a.rows();
  if (axis_len == 0) throw Error(ErrorCode::kEmptyAxis);

  AllocStats scratch;
  AllocStats& st = stats != nullptr ? *stats : scratch;
  if (growth_per_cell != nullptr) {
    growth_per_cell->clear();
    growth_per_cell->reserve(out_len);
  }

  const TrackedCell* in = a.cells().data();
  const std::size_t stride = axis == 0 ? a.cols() : 1;
  const bool prealloc = policy.kind() == AllocPolicy::Kind::kPrealloc;
  std::vector<TrackedCell> out(out_len);
  for (std::uint32_t j = 0; j < out_len; ++j) {
    const TrackedCell* first = in + (axis == 0 ? j : std::size_t{j} * a.cols());

    std::uint64_t expected = 0;
    if (prealloc) {
      for (std::uint32_t t = 0; t < axis_len; ++t) expected += first[t * stride].tags.size();
    }
    const AllocPolicy p = cell_policy(policy, expected);
    const std::uint64_t before = st.growth_events;

    switch (kind) {
      case ReduceKind::kSum: reduce_line<ReduceKind::kSum>(first, stride, axis_len, p, st, out[j]); break;
      case ReduceKind::kMean: reduce_line<ReduceKind::kMean>(first, stride, axis_len, p, st, out[j]); break;
      case ReduceKind::kMax: reduce_line<ReduceKind::kMax>(first, stride, axis_len, p, st, out[j]); break;
    }
    if (growth_per_cell != nullptr) growth_per_cell->push_back(st.growth_events - before);
  }
  return TrackedArray::from_cells(Shape::vector(out_len), out_id, std::move(out));
}

TrackedArray smooth(const TrackedArray& a, std::uint32_t radius, std::uint32_t out_id, const AllocPolicy& policy,
                    AllocStats* stats) {
  require_rank2(a, "smooth");
  if (radius == 0) throw Error(ErrorCode::kInvalidRadius);
  AllocStats scratch;
  AllocStats& st = stats != nullptr ? *stats : scratch;

  const std::uint32_t rows = a.rows();
  const std::uint32_t cols = a.cols();
  auto in = a.cells();
  std::vector<TrackedCell> out;
  out.reserve(in.size());
  for (std::uint32_t i = 0; i < rows; ++i) {
    const std::uint32_t r0 = i >= radius ? i - radius : 0;
    const std::uint32_t r1 = static_cast<std::uint32_t>(std::min<std::uint64_t>(rows - 1, std::uint64_t{i} + radius));
    for (std::uint32_t j = 0; j < cols; ++j) {
      const std::uint32_t c0 = j >= radius ? j - radius : 0;
      const std::uint32_t c1 =
          static_cast<std::uint32_t>(std::min<std::uint64_t>(cols - 1, std::uint64_t{j} + radius));

      std::uint64_t expected = 0;
      if (policy.kind() == AllocPolicy::Kind::kPrealloc) {
        for (std::uint32_t r = r0; r <= r1; ++r) {
          for (std::uint32_t c = c0; c <= c1; ++c) expected += in[std::size_t{r} * cols + c].tags.size();
        }
      }
      const AllocPolicy p = cell_policy(policy, expected);

      TrackedCell cell;
      double sum = 0.0;
      for (std::uint32_t r = r0; r <= r1; ++r) {
        for (std::uint32_t c = c0; c <= c1; ++c) {
          const TrackedCell& src = in[std::size_t{r} * cols + c];
          sum += src.value;
          cell.tags.append(src.tags, p, st);
        }
      }
      cell.value = sum / static_cast<double>(std::uint64_t{r1 - r0 + 1} * (c1 - c0 + 1));
      out.push_back(std::move(cell));
    }
  }
  return TrackedArray::from_cells(a.shape(), out_id, std::move(out));
}

TrackedArray where_threshold(const TrackedArray& a, double thresh, std::uint32_t out_id) {
  require_rank2(a, "where");
  std::vector<TrackedCell> out;
  std::size_t idx = 0;
  for (std::uint32_t i = 0; i < a.rows(); ++i) {
    for (std::uint32_t j = 0; j < a.cols(); ++j, ++idx) {
      const TrackedCell& src = a.cells()[idx];
      if (!(src.value > thresh)) continue;
      out.push_back(TrackedCell{static_cast<double>(i), src.tags});
      out.push_back(TrackedCell{static_cast<double>(j), src.tags});
    }
  }
  const auto matches = static_cast<std::uint32_t>(out.size() / 2);
  return TrackedArray::from_cells(Shape::matrix(matches, 2), out_id, std::move(out));
}

TrackedArray reshape(TrackedArray a, Shape new_shape, std::uint32_t out_id) {
  if (!new_shape.valid()) throw Error(ErrorCode::kInvalidShape, "rank-1 arrays need rows == 1, rank must be 1 or 2");
  if (new_shape.size() != a.size()) throw Error(ErrorCode::kReshapeSizeMismatch);
  return TrackedArray::from_cells(new_shape, out_id, std::move(a).release_cells());
}

TrackedArray transpose(const TrackedArray& a, std::uint32_t out_id) {
  require_rank2(a, "transpose");
  const std::uint32_t rows = a.rows();
  const std::uint32_t cols = a.cols();
  auto in = a.cells();
  std::vector<TrackedCell> out;
  out.reserve(in.size());
  for (std::uint32_t j = 0; j < cols; ++j) {
    for (std::uint32_t i = 0; i < rows; ++i) out.push_back(in[std::size_t{i} * cols + j]);
  }
  return TrackedArray::from_cells(Shape::matrix(cols, rows), out_id, std::move(out));
}

}  // namespace cellprov

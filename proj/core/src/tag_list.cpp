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

#include "cellprov/tag_list.hpp"

#include <algorithm>
#include <new>

namespace cellprov {

namespace detail {

TagList::size_type checked_tag_count(std::uint64_t count) {
  if (count > TagList::kMaxTags) throw Error(ErrorCode::kTagListOverflow);
  return static_cast<TagList::size_type>(count);
}

}  // namespace detail

void TagList::grow_overflow(std::uint64_t min_slots, const AllocPolicy& policy, AllocStats& stats) {
  const std::uint64_t current = overflow_capacity();
  std::uint64_t target = min_slots;
  switch (policy.kind()) {
    case AllocPolicy::Kind::kExactFit:
      break;
    case AllocPolicy::Kind::kDoubling:
      target = current == 0 ? std::max<std::uint64_t>(policy.parameter(), 1) : current * 2;
      while (target < min_slots) target *= 2;
      break;
    case AllocPolicy::Kind::kPrealloc:
      if (current == 0) {
        target = std::max<std::uint64_t>(min_slots, policy.parameter() > 0 ? policy.parameter() - 1 : 0);
      } else {
        target = current * 2;
        while (target < min_slots) target *= 2;
      }
      break;
  }
  // The inline slot holds one tag, so the overflow never needs kMaxTags slots.
  target = std::min<std::uint64_t>(std::max(target, min_slots), kMaxTags - 1);

  const std::size_t bytes = kHeaderBytes + static_cast<std::size_t>(target) * sizeof(CellTag);
  void* grown = std::realloc(overflow_, bytes);
  if (grown == nullptr) throw std::bad_alloc();
  if (overflow_ != nullptr) stats.bytes_moved += std::uint64_t{overflow_size()} * sizeof(CellTag);
  overflow_ = static_cast<std::byte*>(grown);
  const auto cap = static_cast<size_type>(target);
  std::memcpy(overflow_, &cap, sizeof(cap));

  ++stats.growth_events;
  stats.peak_bytes = std::max<std::uint64_t>(stats.peak_bytes, target * sizeof(CellTag));
}

void TagList::copy_overflow_from(const TagList& other) {
  const size_type slots = other.len_ - 1;
  const std::size_t tag_bytes = std::size_t{slots} * sizeof(CellTag);
  void* block = std::malloc(kHeaderBytes + tag_bytes);
  if (block == nullptr) throw std::bad_alloc();
  overflow_ = static_cast<std::byte*>(block);
  std::memcpy(overflow_, &slots, sizeof(slots));
  std::memcpy(overflow_ + kHeaderBytes, other.overflow_ + kHeaderBytes, tag_bytes);
}

void TagList::append_many(const TagList& src, const AllocPolicy& policy, AllocStats& stats) {
  const size_type src_len = src.len_;
  if (src_len == 0) return;
  const size_type total = detail::checked_tag_count(std::uint64_t{len_} + src_len);
  if (len_ == 0) reserve_for_policy(policy, stats);
  if (total - 1 > overflow_capacity()) grow_overflow(total - 1, policy, stats);

  // Growth may have moved our own buffer, so read src only after it.
  size_type next = len_;
  size_type i = 0;
  if (next == 0) {
    inline_ = src.inline_;
    next = 1;
    i = 1;
  }
  CellTag* dst = overflow_tags();
  for (; i < src_len; ++i, ++next) dst[next - 1] = src[i];
  len_ = total;
}

std::vector<CellTag> TagList::to_vector() const {
  std::vector<CellTag> out;
  out.reserve(len_);
  for (const CellTag& tag : *this) out.push_back(tag);
  return out;
}

bool operator==(const TagList& a, const TagList& b) noexcept {
  if (a.len_ != b.len_) return false;
  if (a.len_ == 0) return true;
  if (a.inline_ != b.inline_) return false;
  const std::size_t rest = std::size_t{a.len_ - 1} * sizeof(CellTag);
  return rest == 0 || std::memcmp(a.overflow_tags(), b.overflow_tags(), rest) == 0;
}

TagList taglist_push(TagList list, const CellTag& tag, const AllocPolicy& policy, AllocStats& stats) {
  list.push(tag, policy, stats);
  return list;
}

TagList taglist_concat(TagList dst, const TagList& src, const AllocPolicy& policy, AllocStats& stats) {
  dst.append(src, policy, stats);
  return dst;
}

}  // namespace cellprov

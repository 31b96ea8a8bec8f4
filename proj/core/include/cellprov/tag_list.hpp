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
#include <cstdlib>
#include <cstring>
#include <iterator>
#include <limits>
#include <utility>
#include <vector>

#include "cellprov/alloc_policy.hpp"
#include "cellprov/error.hpp"
#include "cellprov/tag.hpp"

namespace cellprov {

/// Per-cell lineage store. The first tag lives inline in the cell; tags
/// 2..size() live in a heap overflow buffer grown under an AllocPolicy.
///
/// The overflow block starts with a 4-byte capacity header followed by the
/// tags, which keeps the list itself at 24 bytes and a tracked cell at 32.
/// Copies allocate an exact-fit overflow and are not counted in AllocStats;
/// only policy-driven growth through push()/append() is.
class TagList {
 public:
  using size_type = std::uint32_t;

  static constexpr size_type kMaxTags = std::numeric_limits<size_type>::max();

  class const_iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = CellTag;
    using difference_type = std::ptrdiff_t;
    using pointer = const CellTag*;
    using reference = const CellTag&;

    const_iterator() noexcept = default;
    const_iterator(const TagList* list, size_type index) noexcept : list_(list), index_(index) {}

    reference operator*() const noexcept { return (*list_)[index_]; }
    pointer operator->() const noexcept { return &(*list_)[index_]; }
    const_iterator& operator++() noexcept {
      ++index_;
      return *this;
    }
    const_iterator operator++(int) noexcept {
      auto tmp = *this;
      ++index_;
      return tmp;
    }
    friend bool operator==(const const_iterator& a, const const_iterator& b) noexcept {
      return a.list_ == b.list_ && a.index_ == b.index_;
    }

   private:
    const TagList* list_ = nullptr;
    size_type index_ = 0;
  };

  TagList() noexcept = default;

  TagList(const TagList& other) : inline_(other.inline_), len_(other.len_) {
    if (other.len_ > 1) copy_overflow_from(other);
  }

  TagList(TagList&& other) noexcept
      : inline_(other.inline_), len_(std::exchange(other.len_, 0)), overflow_(std::exchange(other.overflow_, nullptr)) {}

  TagList& operator=(const TagList& other) {
    if (this != &other) {
      TagList tmp(other);
      swap(tmp);
    }
    return *this;
  }

  TagList& operator=(TagList&& other) noexcept {
    if (this != &other) {
      std::free(overflow_);
      inline_ = other.inline_;
      len_ = std::exchange(other.len_, 0);
      overflow_ = std::exchange(other.overflow_, nullptr);
    }
    return *this;
  }

  ~TagList() { std::free(overflow_); }

  size_type size() const noexcept { return len_; }
  bool empty() const noexcept { return len_ == 0; }

  size_type overflow_capacity() const noexcept {
    if (overflow_ == nullptr) return 0;
    size_type cap;
    std::memcpy(&cap, overflow_, sizeof(cap));
    return cap;
  }

  /// Inline slot plus overflow slots.
  std::uint64_t capacity() const noexcept { return std::uint64_t{1} + overflow_capacity(); }

  /// Present iff size() >= 1.
  const CellTag* inline_tag() const noexcept { return len_ == 0 ? nullptr : &inline_; }

  /// Tags 2..size(), in append order.
  const CellTag* overflow_data() const noexcept { return overflow_ == nullptr ? nullptr : overflow_tags(); }
  size_type overflow_size() const noexcept { return len_ == 0 ? 0 : len_ - 1; }

  const CellTag& operator[](size_type i) const noexcept { return i == 0 ? inline_ : overflow_tags()[i - 1]; }

  const_iterator begin() const noexcept { return {this, 0}; }
  const_iterator end() const noexcept { return {this, len_}; }

  /// Appends one tag. Throws Error(kTagListOverflow) past kMaxTags.
  void push(const CellTag& tag, const AllocPolicy& policy, AllocStats& stats) {
    if (len_ == 0) {
      reserve_for_policy(policy, stats);
      inline_ = tag;
      len_ = 1;
      return;
    }
    if (len_ == kMaxTags) throw Error(ErrorCode::kTagListOverflow);
    if (len_ > overflow_capacity()) grow_overflow(len_, policy, stats);
    overflow_tags()[len_ - 1] = tag;
    ++len_;
  }

  /// Appends every tag of `src` (which may alias *this), duplicates kept.
  void append(const TagList& src, const AllocPolicy& policy, AllocStats& stats) {
    if (src.len_ == 1) {
      push(src.inline_, policy, stats);
      return;
    }
    append_many(src, policy, stats);
  }

  /// Drops all tags and releases the overflow buffer.
  void clear() noexcept {
    std::free(overflow_);
    overflow_ = nullptr;
    len_ = 0;
    inline_ = {};
  }

  void swap(TagList& other) noexcept {
    std::swap(inline_, other.inline_);
    std::swap(len_, other.len_);
    std::swap(overflow_, other.overflow_);
  }

  std::vector<CellTag> to_vector() const;

  /// Same tags in the same order; capacity is ignored.
  friend bool operator==(const TagList& a, const TagList& b) noexcept;

 private:
  static constexpr std::size_t kHeaderBytes = sizeof(size_type);

  CellTag* overflow_tags() const noexcept { return reinterpret_cast<CellTag*>(overflow_ + kHeaderBytes); }

  void reserve_for_policy(const AllocPolicy& policy, AllocStats& stats) {
    if (policy.kind() == AllocPolicy::Kind::kPrealloc && policy.parameter() > 1 &&
        overflow_capacity() < policy.parameter() - 1) {
      grow_overflow(policy.parameter() - 1, policy, stats);
    }
  }

  void append_many(const TagList& src, const AllocPolicy& policy, AllocStats& stats);
  void grow_overflow(std::uint64_t min_slots, const AllocPolicy& policy, AllocStats& stats);
  void copy_overflow_from(const TagList& other);

  CellTag inline_{};
  size_type len_ = 0;
  std::byte* overflow_ = nullptr;
};

static_assert(sizeof(TagList) == 24);

/// Value-returning form of TagList::push.
TagList taglist_push(TagList list, const CellTag& tag, const AllocPolicy& policy, AllocStats& stats);

/// dst followed by src, duplicates preserved.
TagList taglist_concat(TagList dst, const TagList& src, const AllocPolicy& policy, AllocStats& stats);

namespace detail {
/// Throws Error(kTagListOverflow) when a list would hold more than kMaxTags.
TagList::size_type checked_tag_count(std::uint64_t count);
}  // namespace detail

}  // namespace cellprov

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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "cellprov/bench.hpp"
#include "cellprov/kernels.hpp"
#include "cellprov/table.hpp"
#include "oracle/provenance_oracle.hpp"
#include "oracle/random_pipeline.hpp"
#include "oracle/random_table.hpp"

namespace cellprov {
namespace {

TrackedArray annotated(Shape shape, std::uint32_t id, std::uint64_t seed = 1) {
  return annotate(new_tracked(shape, id, bench::random_values(shape.size(), seed)));
}

const auto kAdd = [](double x, double y) { return x + y; };

ErrorCode decode_error(std::span<const std::byte> bytes) {
  try {
    (void)decode_table(bytes);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "decode succeeded";
  return ErrorCode::kIo;
}

// Little-endian byte writer kept separate from the library's codec.
struct ByteWriter {
  std::vector<std::byte> bytes;
  void put(std::uint64_t v, int width) {
    for (int i = 0; i < width; ++i) bytes.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xFF));
  }
};

std::vector<std::byte> hand_encode(const ProvTable& t) {
  ByteWriter w;
  for (char c : {'D', 'S', 'P', 'V'}) w.put(static_cast<unsigned char>(c), 1);
  w.put(1, 2);
  w.put(t.output_id, 4);
  w.put(t.output_shape.rank, 1);
  w.put(t.output_shape.rows, 4);
  w.put(t.output_shape.cols, 4);
  w.put(t.records.size(), 8);
  for (const auto& r : t.records) {
    for (std::uint32_t f : {r.out_row, r.out_col, r.src_array_id, r.src_row, r.src_col}) w.put(f, 4);
  }
  return w.bytes;
}

// extract_table

TEST(ExtractTest, SelfZipCollapsesDuplicates) {
  const auto a = annotated(Shape::matrix(1, 2), 3);
  const auto z = zip_binary(a, a, kAdd, 4, AllocPolicy::exact_fit());
  const auto t = extract_table(z);
  EXPECT_EQ(t.records, (std::vector<ProvRecord>{{0, 0, 3, 0, 0}, {0, 1, 3, 0, 1}}));
  EXPECT_EQ(t.output_id, 4u);
  EXPECT_TRUE(is_valid(t));
}

TEST(ExtractTest, UnannotatedArrayGivesEmptyTable) {
  const auto a = new_tracked(Shape::matrix(3, 3), 5, std::vector<double>(9, 1.0));
  const auto t = extract_table(a);
  EXPECT_TRUE(t.records.empty());
  EXPECT_EQ(t.output_shape, Shape::matrix(3, 3));
}

TEST(ExtractTest, IdentityMapping) {
  const auto a = annotated(Shape::matrix(2, 2), 6);
  const auto t = extract_table(a);
  EXPECT_EQ(t.records, (std::vector<ProvRecord>{{0, 0, 6, 0, 0}, {0, 1, 6, 0, 1}, {1, 0, 6, 1, 0}, {1, 1, 6, 1, 1}}));
}

TEST(ExtractTest, RecordsSortedAcrossSources) {
  const auto a = annotated(Shape::matrix(2, 2), 9);
  const auto b = annotated(Shape::matrix(2, 2), 2);
  const auto t = extract_table(zip_binary(a, b, kAdd, 10, AllocPolicy::doubling()));
  ASSERT_EQ(t.records.size(), 8u);
  EXPECT_EQ(t.records[0], (ProvRecord{0, 0, 2, 0, 0}));
  EXPECT_EQ(t.records[1], (ProvRecord{0, 0, 9, 0, 0}));
  EXPECT_TRUE(std::is_sorted(t.records.begin(), t.records.end()));
}

// traces

TEST(TraceTest, BackwardHotspotWindow) {
  const auto x = annotate(new_tracked(Shape::matrix(3, 3), 1, std::vector<double>{1, 0, 1, 0, 0, 0, 1, 0, 1}));
  const auto hot = where_threshold(smooth(x, 1, 2, AllocPolicy::prealloc(0)), 0.4, 3);
  const auto t = extract_table(hot);
  const auto sources = backward_trace(t, 0, 0);
  ASSERT_EQ(sources.size(), 9u);
  std::vector<CellTag> want;
  for (std::uint32_t r = 0; r < 3; ++r) {
    for (std::uint32_t c = 0; c < 3; ++c) want.push_back({1, r, c});
  }
  EXPECT_EQ(sources, want);
}

TEST(TraceTest, BackwardOfUntaggedCellIsEmpty) {
  const auto a = new_tracked(Shape::matrix(2, 2), 7, std::vector<double>{1, 2, 3, 4});
  EXPECT_TRUE(backward_trace(extract_table(a), 1, 1).empty());
}

TEST(TraceTest, IdentityBothWays) {
  const auto a = annotated(Shape::matrix(2, 3), 8);
  const auto t = extract_table(a);
  EXPECT_EQ(backward_trace(t, 1, 2), (std::vector<CellTag>{{8, 1, 2}}));
  EXPECT_EQ(forward_trace(t, {8, 0, 1}), (std::vector<OutputCell>{{0, 1}}));
}

TEST(TraceTest, BackwardOutOfRange) {
  const auto t = extract_table(annotated(Shape::matrix(2, 2), 9));
  try {
    (void)backward_trace(t, 2, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCellOutOfRange);
  }
  EXPECT_THROW((void)backward_trace(t, 0, 2), Error);
}

TEST(TraceTest, ForwardFromSmoothCentre) {
  const auto x = annotated(Shape::matrix(3, 3), 1);
  const auto t = extract_table(smooth(x, 1, 2, AllocPolicy::exact_fit()));
  const auto outs = forward_trace(t, {1, 1, 1});
  ASSERT_EQ(outs.size(), 9u);
  EXPECT_TRUE(std::is_sorted(outs.begin(), outs.end()));
  EXPECT_EQ(forward_trace(t, {1, 0, 0}), (std::vector<OutputCell>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
}

TEST(TraceTest, ForwardUnknownSource) {
  const auto t = extract_table(annotated(Shape::matrix(2, 2), 1));
  EXPECT_TRUE(forward_trace(t, {99, 0, 0}).empty());
  EXPECT_TRUE(forward_trace(t, {1, 5, 5}).empty());
}

// properties over random pipelines

std::vector<TrackedArray> pipeline_outputs(AllocPolicy policy, std::uint64_t seed, std::uint32_t out_base = 40) {
  std::mt19937_64 local(seed);
  const auto rows = static_cast<std::uint32_t>(1 + local() % 10);
  const auto cols = static_cast<std::uint32_t>(1 + local() % 10);
  const auto a = annotated(Shape::matrix(rows, cols), 31, local());
  const auto b = annotated(Shape::matrix(rows, cols), 32, local());
  const auto radius = static_cast<std::uint32_t>(1 + local() % 3);
  std::vector<TrackedArray> outs;
  outs.push_back(zip_binary(a, b, kAdd, out_base + 0, policy));
  outs.push_back(smooth(outs.back(), radius, out_base + 1, policy));
  outs.push_back(reduce_axis(outs.back(), static_cast<int>(local() % 2), ReduceKind::kSum, out_base + 2, policy));
  outs.push_back(where_threshold(smooth(a, radius, out_base + 3, policy), 0.5, out_base + 4));
  outs.push_back(transpose(zip_binary(a, a, kAdd, out_base + 5, policy), out_base + 6));
  return outs;
}

TEST(TableProperty, BackwardForwardConsistency) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    for (const auto& out : pipeline_outputs(AllocPolicy::doubling(), rng())) {
      const auto t = extract_table(out);
      std::set<std::pair<OutputCell, CellTag>> back_pairs;
      std::set<CellTag> sources;
      for (std::uint32_t i = 0; i < t.output_shape.rows; ++i) {
        for (std::uint32_t j = 0; j < t.output_shape.cols; ++j) {
          for (const auto& s : backward_trace(t, i, j)) {
            back_pairs.insert({{i, j}, s});
            sources.insert(s);
          }
        }
      }
      std::set<std::pair<OutputCell, CellTag>> fwd_pairs;
      for (const auto& s : sources) {
        for (const auto& o : forward_trace(t, s)) fwd_pairs.insert({o, s});
      }
      EXPECT_EQ(back_pairs, fwd_pairs);
    }
  }
}

TEST(TableProperty, BackwardIsDedupedTagSet) {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 30; ++trial) {
    for (const auto& out : pipeline_outputs(AllocPolicy::exact_fit(), rng())) {
      const auto t = extract_table(out);
      for (std::uint32_t i = 0; i < out.rows(); ++i) {
        for (std::uint32_t j = 0; j < out.cols(); ++j) {
          const auto& tags = out.tags(i, j);
          const std::set<CellTag> want(tags.begin(), tags.end());
          const auto got = backward_trace(t, i, j);
          EXPECT_EQ(got, std::vector<CellTag>(want.begin(), want.end()));
        }
      }
    }
  }
}

TEST(TableProperty, ExtractionIgnoresPolicy) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint64_t seed = rng();
    const auto ref = pipeline_outputs(AllocPolicy::exact_fit(), seed);
    for (const auto& p : {AllocPolicy::doubling(2), AllocPolicy::prealloc(0), AllocPolicy::prealloc(5)}) {
      const auto got = pipeline_outputs(p, seed, 60);
      for (std::size_t k = 0; k < ref.size(); ++k) {
        EXPECT_EQ(extract_table(got[k]).records, extract_table(ref[k]).records);
        EXPECT_EQ(got[k].shape(), ref[k].shape());
      }
    }
  }
}

TEST(TableProperty, RoundTripRandomTables) {
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 300; ++trial) {
    const auto t = oracle::random_table(rng);
    ASSERT_TRUE(is_valid(t));
    const auto bytes = encode_table(t);
    EXPECT_EQ(bytes, hand_encode(t));
    EXPECT_EQ(decode_table(bytes), t);
    std::stringstream ss;
    write_table(t, ss);
    EXPECT_EQ(read_table(ss), t);
  }
}

TEST(TableProperty, RoundTripPipelineTables) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    for (const auto& out : pipeline_outputs(AllocPolicy::prealloc(0), rng())) {
      const auto t = extract_table(out);
      EXPECT_EQ(decode_table(encode_table(t)), t);
    }
  }
}

// codec

TEST(CodecTest, EmptyTable) {
  const ProvTable t{12, Shape::matrix(0, 2), {}};
  const auto bytes = encode_table(t);
  EXPECT_EQ(bytes.size(), kTableHeaderSize);
  EXPECT_EQ(decode_table(bytes), t);
}

TEST(CodecTest, LayoutIsLittleEndian) {
  const ProvTable t{0x01020304, Shape::matrix(2, 3), {{1, 2, 0xAABBCCDD, 0, 1}}};
  const auto bytes = encode_table(t);
  ASSERT_EQ(bytes.size(), kTableHeaderSize + kRecordSize);
  EXPECT_EQ(bytes, hand_encode(t));
  EXPECT_EQ(bytes[6], std::byte{0x04});
  EXPECT_EQ(bytes[10], std::byte{2});
}

TEST(CodecTest, BadMagic) {
  auto bytes = encode_table(extract_table(annotated(Shape::matrix(2, 2), 1)));
  bytes[0] = std::byte{'X'};
  EXPECT_EQ(decode_error(bytes), ErrorCode::kBadMagic);
}

TEST(CodecTest, VersionMismatch) {
  auto bytes = encode_table(extract_table(annotated(Shape::matrix(2, 2), 1)));
  bytes[4] = std::byte{2};
  EXPECT_EQ(decode_error(bytes), ErrorCode::kVersionMismatch);
}

TEST(CodecTest, Truncation) {
  const auto bytes = encode_table(extract_table(annotated(Shape::matrix(2, 2), 1)));
  for (std::size_t cut : {std::size_t{0}, std::size_t{3}, kTableHeaderSize - 1, kTableHeaderSize + 5,
                          bytes.size() - 1}) {
    EXPECT_EQ(decode_error(std::span(bytes).first(cut)), ErrorCode::kTruncated) << cut;
  }
  auto longer = bytes;
  longer.push_back(std::byte{0});
  EXPECT_EQ(decode_error(longer), ErrorCode::kTruncated);
}

TEST(CodecTest, UnsortedAndDuplicateRecords) {
  ProvTable t{1, Shape::matrix(2, 2), {{1, 0, 1, 0, 0}, {0, 0, 1, 0, 0}}};
  EXPECT_EQ(decode_error(hand_encode(t)), ErrorCode::kUnsortedRecords);
  t.records = {{0, 0, 1, 0, 0}, {0, 0, 1, 0, 0}};
  EXPECT_EQ(decode_error(hand_encode(t)), ErrorCode::kUnsortedRecords);
}

TEST(CodecTest, RecordOutsideShape) {
  const ProvTable t{1, Shape::matrix(2, 2), {{0, 2, 1, 0, 0}}};
  EXPECT_EQ(decode_error(hand_encode(t)), ErrorCode::kRecordOutOfRange);
}

TEST(CodecTest, InvalidShapeInHeader) {
  ProvTable t{1, Shape{2, 2, 1}, {}};
  EXPECT_EQ(decode_error(hand_encode(t)), ErrorCode::kInvalidShape);
}

TEST(CodecTest, CsvExport) {
  const auto t = extract_table(annotated(Shape::matrix(1, 2), 3));
  std::ostringstream out;
  write_table_csv(t, out);
  EXPECT_EQ(out.str(), "out_row,out_col,src_array_id,src_row,src_col\n0,0,3,0,0\n0,1,3,0,1\n");
}

}  // namespace
}  // namespace cellprov

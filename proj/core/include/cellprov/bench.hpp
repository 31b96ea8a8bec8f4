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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cellprov/alloc_policy.hpp"

namespace cellprov::bench {

enum class Kernel : std::uint8_t { kInit, kMap, kReduce };

std::string_view to_string(Kernel kernel) noexcept;

struct BenchConfig {
  Kernel kernel = Kernel::kInit;
  std::vector<std::uint64_t> sizes = {100'000, 1'000'000, 10'000'000};
  std::uint32_t reps = 5;
  std::uint32_t warmup = 1;
  AllocPolicy policy = AllocPolicy::prealloc(0);
  /// Reduce only: inputs are (size / axis_len, axis_len), reduced over axis 1.
  std::uint32_t axis_len = 100;
  std::uint64_t seed = 42;

  /// Throws Error(kInvalidConfig) for reps < 3, warmup < 1, no sizes or a
  /// zero size, and Error(kBenchShape) when a reduce size is not a multiple
  /// of axis_len.
  void validate() const;
};

/// One (size, variant) row.
struct BenchPoint {
  std::uint64_t size = 0;
  std::string variant;
  std::string policy;
  double median_ns = 0;
  double min_ns = 0;
  double max_ns = 0;
  double bare_ns = 0;
  /// median_ns / bare_ns.
  double overhead = 0;
  /// Largest growth-event count of any single output cell in one call.
  std::uint64_t growth_events = 0;
  /// Totals for one tracked call.
  AllocStats stats;
  std::vector<double> samples_ns;
};

struct BenchReport {
  Kernel kernel = Kernel::kInit;
  std::vector<BenchPoint> points;
  /// Init only: least-squares slope of median time vs size through the origin.
  std::optional<double> ns_per_cell;
};

/// Times annotate(new_tracked(values)) against a plain copy of the values.
BenchReport bench_init(const BenchConfig& cfg);

/// Times map_unary on pre-annotated arrays against the same map over plain
/// values.
BenchReport bench_map(const BenchConfig& cfg);

/// Times a Sum reduce_axis under cfg.policy ("tracked" rows) and under
/// exact-fit ("ablation" rows, skipped when cfg.policy is exact-fit), both
/// against a plain row-sum. Before timing, checks on a small slice that
/// every policy yields identical tags.
BenchReport bench_reduce(const BenchConfig& cfg);

BenchReport run_benchmark(const BenchConfig& cfg);

inline constexpr std::string_view kReportCsvHeader =
    "size,variant,policy,median_ns,min_ns,max_ns,bare_ns,overhead,growth_events";

void write_report_csv(const BenchReport& report, std::ostream& sink);

/// Parses rows written by write_report_csv (stats and samples are not
/// part of the format). Throws Error(kIo) on malformed input.
std::vector<BenchPoint> parse_report_csv(std::istream& source);

// Helpers shared with tests and tools.

double median(std::span<const double> samples);
/// Least-squares a for y = a * x.
double fit_through_origin(std::span<const double> x, std::span<const double> y);
/// Uniform [0, 1) doubles from a seeded mt19937_64, 53 bits per value.
std::vector<double> random_values(std::size_t n, std::uint64_t seed);
/// Best effort: restricts the calling thread to the CPU it is running on.
void pin_to_current_cpu() noexcept;

}  // namespace cellprov::bench

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

#include "cellprov/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <istream>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

#if defined(__linux__)
#include <sched.h>
#endif
#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include "cellprov/error.hpp"
#include "cellprov/kernels.hpp"
#include "cellprov/tracked_array.hpp"

namespace cellprov::bench {

namespace {

// High ids so a harness run does not collide with a caller's live arrays.
constexpr std::uint32_t kSourceId = 0xB000'0001u;
constexpr std::uint32_t kOutputId = 0xB000'0002u;
constexpr std::uint32_t kCheckSourceId = 0xB000'0003u;
constexpr std::uint32_t kCheckOutputId = 0xB000'0004u;

// glibc adapts its mmap threshold to freed block sizes, so whether an array
// buffer is served from fresh (faulting) pages depends on what ran before.
// Fix the threshold so array buffers are always mmapped, and keep the heap
// untrimmed so small tag buffers are reused between reps.
void stable_allocator() {
#if defined(__GLIBC__)
  static const bool configured = [] {
    mallopt(M_MMAP_THRESHOLD, 128 * 1024);
    mallopt(M_TRIM_THRESHOLD, 1 << 30);
    return true;
  }();
  (void)configured;
#endif
}

template <class T>
void keep(const T& value) {
#if defined(__GNUC__) || defined(__clang__)
  asm volatile("" : : "g"(&value) : "memory");
#else
  (void)value;
#endif
}

template <class Run>
std::vector<double> time_reps(std::uint32_t warmup, std::uint32_t reps, Run&& run) {
  for (std::uint32_t i = 0; i < warmup; ++i) {
    auto result = run();
    keep(result);
  }
  std::vector<double> samples;
  samples.reserve(reps);
  for (std::uint32_t i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    auto result = run();
    const auto t1 = std::chrono::steady_clock::now();
    keep(result);
    samples.push_back(static_cast<double>(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count()));
    // result is released here, outside the timed region.
  }
  return samples;
}

BenchPoint make_point(std::uint64_t size, std::string variant, const AllocPolicy& policy,
                      std::vector<double> samples, double bare_ns) {
  BenchPoint p;
  p.size = size;
  p.variant = std::move(variant);
  p.policy = std::string(policy.name());
  p.median_ns = median(samples);
  p.min_ns = *std::min_element(samples.begin(), samples.end());
  p.max_ns = *std::max_element(samples.begin(), samples.end());
  p.bare_ns = bare_ns;
  p.overhead = bare_ns > 0 ? p.median_ns / bare_ns : 0.0;
  p.samples_ns = std::move(samples);
  return p;
}

std::uint32_t to_extent(std::uint64_t n) {
  if (n > 0xFFFF'FFFFull) throw Error(ErrorCode::kInvalidConfig, "size exceeds 32-bit extent");
  return static_cast<std::uint32_t>(n);
}

TrackedArray annotated_source(Shape shape, std::uint32_t id, const std::vector<double>& values) {
  return annotate(new_tracked(shape, id, values));
}

// Identical tags under every policy, on a few rows of the real input shape.
void check_policy_equivalence(std::uint64_t rows, std::uint32_t axis_len, std::uint64_t seed) {
  const auto slice_rows = static_cast<std::uint32_t>(std::min<std::uint64_t>(rows, 4));
  const auto values = random_values(std::size_t{slice_rows} * axis_len, seed);
  const auto src = annotated_source(Shape::matrix(slice_rows, axis_len), kCheckSourceId, values);
  const auto reference = reduce_axis(src, 1, ReduceKind::kSum, kCheckOutputId, AllocPolicy::exact_fit());
  for (const AllocPolicy& policy : {AllocPolicy::doubling(), AllocPolicy::prealloc(0)}) {
    const auto out = reduce_axis(src, 1, ReduceKind::kSum, kCheckOutputId + 1, policy);
    if (!same_contents(out, reference)) {
      throw std::logic_error("reduce_axis output differs under policy " + std::string(policy.name()));
    }
  }
}

}  // namespace

std::string_view to_string(Kernel kernel) noexcept {
  switch (kernel) {
    case Kernel::kInit: return "init";
    case Kernel::kMap: return "map";
    case Kernel::kReduce: return "reduce";
  }
  return "unknown";
}

void BenchConfig::validate() const {
  if (reps < 3) throw Error(ErrorCode::kInvalidConfig, "reps must be >= 3");
  if (warmup < 1) throw Error(ErrorCode::kInvalidConfig, "warmup must be >= 1");
  if (sizes.empty()) throw Error(ErrorCode::kInvalidConfig, "no sizes");
  for (std::uint64_t n : sizes) {
    if (n < 1) throw Error(ErrorCode::kInvalidConfig, "sizes must be >= 1");
  }
  if (kernel == Kernel::kReduce) {
    if (axis_len < 1) throw Error(ErrorCode::kInvalidConfig, "axis_len must be >= 1");
    for (std::uint64_t n : sizes) {
      if (n % axis_len != 0) {
        throw Error(ErrorCode::kBenchShape,
                    "size " + std::to_string(n) + " is not a multiple of axis_len " + std::to_string(axis_len));
      }
    }
  }
}

double median(std::span<const double> samples) {
  if (samples.empty()) return 0.0;
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  return sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
}

double fit_through_origin(std::span<const double> x, std::span<const double> y) {
  double xy = 0.0;
  double xx = 0.0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    xy += x[i] * y[i];
    xx += x[i] * x[i];
  }
  return xx > 0 ? xy / xx : 0.0;
}

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> out(n);
  for (double& v : out) v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return out;
}

void pin_to_current_cpu() noexcept {
#if defined(__linux__)
  const int cpu = sched_getcpu();
  if (cpu < 0) return;
  cpu_set_t set;
  CPU_ZERO(&set);
  CPU_SET(cpu, &set);
  (void)sched_setaffinity(0, sizeof(set), &set);
#endif
}

BenchReport bench_init(const BenchConfig& cfg) {
  cfg.validate();
  stable_allocator();
  BenchReport report{Kernel::kInit, {}, std::nullopt};
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::uint64_t n : cfg.sizes) {
    const auto values = random_values(n, cfg.seed);
    const Shape shape = Shape::vector(to_extent(n));
    auto tracked = time_reps(cfg.warmup, cfg.reps, [&] { return annotated_source(shape, kSourceId, values); });
    auto bare = time_reps(cfg.warmup, cfg.reps, [&] { return std::vector<double>(values.begin(), values.end()); });
    report.points.push_back(make_point(n, "tracked", cfg.policy, std::move(tracked), median(bare)));
    xs.push_back(static_cast<double>(n));
    ys.push_back(report.points.back().median_ns);
  }
  report.ns_per_cell = fit_through_origin(xs, ys);
  return report;
}

BenchReport bench_map(const BenchConfig& cfg) {
  cfg.validate();
  stable_allocator();
  BenchReport report{Kernel::kMap, {}, std::nullopt};
  const auto f = [](double x) { return 2.0 * x + 1.0; };
  for (std::uint64_t n : cfg.sizes) {
    const auto values = random_values(n, cfg.seed);
    const auto src = annotated_source(Shape::vector(to_extent(n)), kSourceId, values);
    auto tracked = time_reps(cfg.warmup, cfg.reps, [&] { return map_unary(src, f, kOutputId); });
    auto bare = time_reps(cfg.warmup, cfg.reps, [&] {
      std::vector<double> out;
      out.reserve(values.size());
      for (double v : values) out.push_back(f(v));
      return out;
    });
    report.points.push_back(make_point(n, "tracked", cfg.policy, std::move(tracked), median(bare)));
  }
  return report;
}

BenchReport bench_reduce(const BenchConfig& cfg) {
  cfg.validate();
  stable_allocator();
  BenchReport report{Kernel::kReduce, {}, std::nullopt};
  const std::uint32_t k = cfg.axis_len;

  std::vector<std::pair<std::string, AllocPolicy>> variants = {{"tracked", cfg.policy}};
  if (cfg.policy.kind() != AllocPolicy::Kind::kExactFit) variants.emplace_back("ablation", AllocPolicy::exact_fit());

  check_policy_equivalence(cfg.sizes.front() / k, k, cfg.seed);

  for (std::uint64_t n : cfg.sizes) {
    const std::uint64_t rows = n / k;
    const auto values = random_values(n, cfg.seed);
    const auto src = annotated_source(Shape::matrix(to_extent(rows), k), kSourceId, values);

    auto bare = time_reps(cfg.warmup, cfg.reps, [&] {
      std::vector<double> out;
      out.reserve(rows);
      for (std::uint64_t r = 0; r < rows; ++r) {
        const double* row = values.data() + r * k;
        double acc = row[0];
        for (std::uint32_t t = 1; t < k; ++t) acc += row[t];
        out.push_back(acc);
      }
      return out;
    });
    const double bare_ns = median(bare);

    for (const auto& [variant, policy] : variants) {
      AllocStats stats;
      std::vector<std::uint64_t> per_cell;
      (void)reduce_axis(src, 1, ReduceKind::kSum, kOutputId, policy, &stats, &per_cell);

      AllocStats timed_stats;
      auto tracked = time_reps(cfg.warmup, cfg.reps, [&] {
        return reduce_axis(src, 1, ReduceKind::kSum, kOutputId, policy, &timed_stats);
      });
      BenchPoint p = make_point(n, variant, policy, std::move(tracked), bare_ns);
      p.stats = stats;
      p.growth_events = per_cell.empty() ? 0 : *std::max_element(per_cell.begin(), per_cell.end());
      report.points.push_back(std::move(p));
    }
  }
  return report;
}

BenchReport run_benchmark(const BenchConfig& cfg) {
  switch (cfg.kernel) {
    case Kernel::kInit: return bench_init(cfg);
    case Kernel::kMap: return bench_map(cfg);
    case Kernel::kReduce: return bench_reduce(cfg);
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown kernel");
}

namespace {

void put_number(std::ostream& os, double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  os.write(buf, end - buf);
}

template <class T>
T parse_field(std::string_view field) {
  T value{};
  auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || end != field.data() + field.size()) {
    throw Error(ErrorCode::kIo, "bad report field '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

void write_report_csv(const BenchReport& report, std::ostream& sink) {
  sink << kReportCsvHeader << '\n';
  for (const BenchPoint& p : report.points) {
    sink << p.size << ',' << p.variant << ',' << p.policy << ',';
    for (double v : {p.median_ns, p.min_ns, p.max_ns, p.bare_ns, p.overhead}) {
      put_number(sink, v);
      sink << ',';
    }
    sink << p.growth_events << '\n';
  }
  if (!sink) throw Error(ErrorCode::kIo, "report write failed");
}

std::vector<BenchPoint> parse_report_csv(std::istream& source) {
  std::string line;
  if (!std::getline(source, line) || line != kReportCsvHeader) throw Error(ErrorCode::kIo, "missing report header");
  std::vector<BenchPoint> points;
  while (std::getline(source, line)) {
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    for (;;) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 9) throw Error(ErrorCode::kIo, "expected 9 report columns");
    BenchPoint p;
    p.size = parse_field<std::uint64_t>(fields[0]);
    p.variant = std::string(fields[1]);
    p.policy = std::string(fields[2]);
    p.median_ns = parse_field<double>(fields[3]);
    p.min_ns = parse_field<double>(fields[4]);
    p.max_ns = parse_field<double>(fields[5]);
    p.bare_ns = parse_field<double>(fields[6]);
    p.overhead = parse_field<double>(fields[7]);
    p.growth_events = parse_field<std::uint64_t>(fields[8]);
    points.push_back(std::move(p));
  }
  return points;
}

}  // namespace cellprov::bench

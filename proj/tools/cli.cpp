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

#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

#include "cellprov/bench.hpp"
#include "cellprov/error.hpp"
#include "cellprov/kernels.hpp"
#include "cellprov/table.hpp"

namespace cellprov::cli {

namespace {

constexpr std::uint32_t kImageId = 1;
constexpr std::uint32_t kSmoothedId = 2;
constexpr std::uint32_t kHotspotId = 3;

/// Usage problems found after CLI11 parsing.
struct UsageError {
  std::string message;
};

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  for (;;) {
    const auto pos = text.find(sep);
    parts.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return parts;
}

std::optional<std::uint32_t> parse_u32(std::string_view s) {
  std::uint32_t v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

/// "1e5,1e6,250000" -> cell counts. Each entry must be a whole number >= 1.
std::vector<std::uint64_t> parse_sizes(const std::string& text) {
  std::vector<std::uint64_t> sizes;
  for (std::string_view part : split(text, ',')) {
    double v = 0;
    auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc{} || end != part.data() + part.size() || !std::isfinite(v) || v < 1 ||
        v > 4294967295.0 || v != std::floor(v)) {
      throw UsageError{"malformed size list '" + text + "'"};
    }
    sizes.push_back(static_cast<std::uint64_t>(v));
  }
  return sizes;
}

std::vector<std::uint32_t> parse_coords(const std::string& text, std::size_t arity, const char* flag) {
  std::vector<std::uint32_t> coords;
  const auto parts = split(text, ',');
  if (parts.size() == arity) {
    for (std::string_view p : parts) {
      auto v = parse_u32(p);
      if (!v) break;
      coords.push_back(*v);
    }
  }
  if (coords.size() != arity) throw UsageError{std::string("malformed ") + flag + " '" + text + "'"};
  return coords;
}

struct BenchArgs {
  std::string sizes = "1e5,1e6,1e7";
  std::uint32_t reps = 5;
  std::uint32_t warmup = 1;
  std::string policy = "prealloc";
  std::uint32_t axis_len = 100;
  std::uint64_t seed = 42;
  std::string out;
};

struct DemoArgs {
  std::int64_t rows = 64;
  std::int64_t cols = 64;
  std::int64_t radius = 1;
  double thresh = 0.5;
  std::uint64_t seed = 42;
  std::string table;
};

struct TraceArgs {
  std::string table;
  std::string backward;
  std::string forward;
};

void add_bench_flags(CLI::App* cmd, BenchArgs& a, bool reduce) {
  cmd->add_option("--sizes", a.sizes, "Comma-separated cell counts, e.g. 1e5,1e6,1e7")->capture_default_str();
  cmd->add_option("--reps", a.reps, "Timed repetitions per point (>= 3)")->capture_default_str();
  cmd->add_option("--warmup", a.warmup, "Untimed warmup runs per point (>= 1)")->capture_default_str();
  cmd->add_option("--policy", a.policy, "Overflow growth policy")
      ->check(CLI::IsMember({"exactfit", "doubling", "prealloc"}))
      ->capture_default_str();
  if (reduce) {
    cmd->add_option("--axis-len", a.axis_len, "Length of the reduced axis")->capture_default_str();
  }
  cmd->add_option("--seed", a.seed, "PRNG seed for input values")->capture_default_str();
  cmd->add_option("--out", a.out, "CSV output file (default: standard output)");
}

int cmd_bench(bench::Kernel kernel, const BenchArgs& a, std::ostream& out, std::ostream& err) {
  bench::BenchConfig cfg;
  cfg.kernel = kernel;
  cfg.sizes = parse_sizes(a.sizes);
  cfg.reps = a.reps;
  cfg.warmup = a.warmup;
  cfg.policy = *AllocPolicy::parse(a.policy);
  cfg.axis_len = a.axis_len;
  cfg.seed = a.seed;
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw UsageError{e.what()};
  }

  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out, std::ios::binary);
    if (!file) throw Error(ErrorCode::kIo, "cannot open " + a.out);
  }

  bench::pin_to_current_cpu();
  const auto report = bench::run_benchmark(cfg);
  bench::write_report_csv(report, a.out.empty() ? out : file);

  if (report.ns_per_cell) err << "fitted init cost: " << *report.ns_per_cell << " ns/cell\n";
  if (kernel == bench::Kernel::kReduce) {
    err << "ablation rows use exact-fit overflow growth; no per-cell boxed-object baseline is measured\n";
  }
  return kOk;
}

int cmd_demo_hotspot(const DemoArgs& a, std::ostream& out, std::ostream& err) {
  if (a.rows < 1 || a.cols < 1) throw UsageError{"--rows and --cols must be >= 1"};
  if (a.rows > 65536 || a.cols > 65536) throw UsageError{"--rows and --cols must be <= 65536"};
  if (a.radius < 1) throw UsageError{"--radius must be >= 1"};
  const auto rows = static_cast<std::uint32_t>(a.rows);
  const auto cols = static_cast<std::uint32_t>(a.cols);

  const auto pixels = bench::random_values(std::size_t{rows} * cols, a.seed);
  const auto image = annotate(new_tracked(Shape::matrix(rows, cols), kImageId, pixels));
  const auto smoothed =
      smooth(image, static_cast<std::uint32_t>(a.radius), kSmoothedId, AllocPolicy::prealloc(0));
  const auto hotspots = where_threshold(smoothed, a.thresh, kHotspotId);
  const auto table = extract_table(hotspots);

  if (!a.table.empty()) {
    std::ofstream file(a.table, std::ios::binary);
    if (!file) throw Error(ErrorCode::kIo, "cannot open " + a.table);
    write_table(table, file);
  }
  for (std::uint32_t m = 0; m < hotspots.rows(); ++m) {
    out << static_cast<std::uint32_t>(hotspots.value(m, 0)) << ',' << static_cast<std::uint32_t>(hotspots.value(m, 1))
        << '\n';
  }
  err << hotspots.rows() << " detections, " << table.records.size() << " provenance records\n";
  return kOk;
}

int cmd_trace(const TraceArgs& a, std::ostream& out) {
  if (a.backward.empty() == a.forward.empty()) throw UsageError{"give exactly one of --backward or --forward"};
  std::optional<std::vector<std::uint32_t>> backward;
  std::optional<std::vector<std::uint32_t>> forward;
  if (!a.backward.empty()) backward = parse_coords(a.backward, 2, "--backward");
  if (!a.forward.empty()) forward = parse_coords(a.forward, 3, "--forward");

  std::ifstream file(a.table, std::ios::binary);
  if (!file) throw Error(ErrorCode::kIo, "cannot open " + a.table);
  const ProvTable table = read_table(file);

  if (backward) {
    for (const CellTag& src : backward_trace(table, (*backward)[0], (*backward)[1])) {
      out << src.array_id << ',' << src.row << ',' << src.col << '\n';
    }
  } else {
    for (const OutputCell& cell : forward_trace(table, CellTag{(*forward)[0], (*forward)[1], (*forward)[2]})) {
      out << cell.row << ',' << cell.col << '\n';
    }
  }
  return kOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cellprov: cell-level provenance capture for dense arrays", "cellprov"};
  app.require_subcommand(1);

  BenchArgs init_args;
  BenchArgs map_args;
  BenchArgs reduce_args;
  DemoArgs demo_args;
  TraceArgs trace_args;

  auto* init_cmd = app.add_subcommand("bench-init", "Time annotation of fresh arrays");
  add_bench_flags(init_cmd, init_args, false);
  auto* map_cmd = app.add_subcommand("bench-map", "Time tracked element-wise map vs bare");
  add_bench_flags(map_cmd, map_args, false);
  auto* reduce_cmd = app.add_subcommand("bench-reduce", "Time tracked Sum reduction vs bare, with exact-fit ablation");
  add_bench_flags(reduce_cmd, reduce_args, true);

  auto* demo_cmd = app.add_subcommand("demo-hotspot", "annotate -> smooth -> where on a seeded random image");
  demo_cmd->add_option("--rows", demo_args.rows, "Image rows")->capture_default_str();
  demo_cmd->add_option("--cols", demo_args.cols, "Image columns")->capture_default_str();
  demo_cmd->add_option("--radius", demo_args.radius, "Smoothing radius")->capture_default_str();
  demo_cmd->add_option("--thresh", demo_args.thresh, "Detection threshold (strictly greater)")->capture_default_str();
  demo_cmd->add_option("--seed", demo_args.seed, "PRNG seed for pixel values")->capture_default_str();
  demo_cmd->add_option("--table", demo_args.table, "Write the detections' provenance table here");

  auto* trace_cmd = app.add_subcommand("trace", "Query a provenance table");
  trace_cmd->add_option("--table", trace_args.table, "Provenance table file")->required();
  trace_cmd->add_option("--backward", trace_args.backward, "Output cell r,c");
  trace_cmd->add_option("--forward", trace_args.forward, "Source cell id,r,c");

  // CLI11 wants argv order reversed.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    for (char& c : msg) {
      if (c == '\n') c = ' ';
    }
    err << "cellprov: usage error: " << msg << '\n';
    return kUsageError;
  }

  try {
    if (init_cmd->parsed()) return cmd_bench(bench::Kernel::kInit, init_args, out, err);
    if (map_cmd->parsed()) return cmd_bench(bench::Kernel::kMap, map_args, out, err);
    if (reduce_cmd->parsed()) return cmd_bench(bench::Kernel::kReduce, reduce_args, out, err);
    if (demo_cmd->parsed()) return cmd_demo_hotspot(demo_args, out, err);
    if (trace_cmd->parsed()) return cmd_trace(trace_args, out);
  } catch (const UsageError& e) {
    err << "cellprov: usage error: " << e.message << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "cellprov: " << e.what() << '\n';
    return e.code() == ErrorCode::kCellOutOfRange ? kUsageError : kDataError;
  } catch (const std::exception& e) {
    err << "cellprov: " << e.what() << '\n';
    return kDataError;
  }
  return kUsageError;
}

}  // namespace cellprov::cli

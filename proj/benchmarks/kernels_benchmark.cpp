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

#include <benchmark/benchmark.h>

#include "cellprov/bench.hpp"
#include "cellprov/kernels.hpp"

namespace {

using namespace cellprov;

AllocPolicy policy_arg(std::int64_t i) {
  switch (i) {
    case 0: return AllocPolicy::exact_fit();
    case 1: return AllocPolicy::doubling();
    default: return AllocPolicy::prealloc(0);
  }
}

void BM_TagListPush(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const AllocPolicy policy = policy_arg(state.range(1));
  const AllocPolicy p = policy.kind() == AllocPolicy::Kind::kPrealloc ? AllocPolicy::prealloc(n) : policy;
  AllocStats stats;
  for (auto _ : state) {
    TagList list;
    for (std::uint32_t i = 0; i < n; ++i) list.push({1, 0, i}, p, stats);
    benchmark::DoNotOptimize(list);
  }
  state.SetLabel(std::string(policy.name()));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_TagListPush)->ArgsProduct({{16, 256}, {0, 1, 2}});

void BM_Annotate(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto values = bench::random_values(n, 1);
  for (auto _ : state) {
    auto a = annotate(new_tracked(Shape::vector(n), 1, values));
    benchmark::DoNotOptimize(a.cells().data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Annotate)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);

void BM_MapUnary(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto src = annotate(new_tracked(Shape::vector(n), 1, bench::random_values(n, 2)));
  for (auto _ : state) {
    auto out = map_unary(src, [](double x) { return 2.0 * x + 1.0; }, 2);
    benchmark::DoNotOptimize(out.cells().data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_MapUnary)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);

void BM_ReduceAxis(benchmark::State& state) {
  const auto k = static_cast<std::uint32_t>(state.range(0));
  const AllocPolicy policy = policy_arg(state.range(1));
  constexpr std::uint32_t kRows = 1024;
  const auto src = annotate(new_tracked(Shape::matrix(kRows, k), 1, bench::random_values(kRows * k, 3)));
  for (auto _ : state) {
    auto out = reduce_axis(src, 1, ReduceKind::kSum, 2, policy);
    benchmark::DoNotOptimize(out.cells().data());
  }
  state.SetLabel(std::string(policy.name()));
  state.SetItemsProcessed(state.iterations() * kRows * k);
}
BENCHMARK(BM_ReduceAxis)->ArgsProduct({{16, 256}, {0, 1, 2}});

}  // namespace

BENCHMARK_MAIN();

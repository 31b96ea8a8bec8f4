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

#include <algorithm>
#include <random>

#include "cellprov/table.hpp"

namespace cellprov::oracle {

/// A valid table with random shape and up to `max_records` distinct records.
inline ProvTable random_table(std::mt19937_64& rng, std::size_t max_records = 64) {
  ProvTable t;
  t.output_id = static_cast<std::uint32_t>(rng());
  const bool vec = rng() % 4 == 0;
  const auto cols = static_cast<std::uint32_t>(1 + rng() % 20);
  const auto rows = vec ? 1u : static_cast<std::uint32_t>(rng() % 20);
  t.output_shape = vec ? Shape::vector(cols) : Shape::matrix(rows, cols);
  if (rows == 0) return t;
  const std::size_t n = rng() % (max_records + 1);
  for (std::size_t i = 0; i < n; ++i) {
    t.records.push_back({static_cast<std::uint32_t>(rng() % rows), static_cast<std::uint32_t>(rng() % cols),
                         static_cast<std::uint32_t>(rng()), static_cast<std::uint32_t>(rng()),
                         static_cast<std::uint32_t>(rng())});
  }
  std::sort(t.records.begin(), t.records.end());
  t.records.erase(std::unique(t.records.begin(), t.records.end()), t.records.end());
  return t;
}

}  // namespace cellprov::oracle

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

#include "cellprov/tag.hpp"

#include "cellprov/detail/byte_io.hpp"

namespace cellprov {

EncodedTag encode_tag(const CellTag& tag) noexcept {
  EncodedTag out{};
  detail::store_le(out.data(), tag.array_id);
  detail::store_le(out.data() + 4, tag.row);
  detail::store_le(out.data() + 8, tag.col);
  return out;
}

CellTag decode_tag(std::span<const std::byte, kEncodedTagSize> bytes) noexcept {
  return CellTag{detail::load_le<std::uint32_t>(bytes.data()), detail::load_le<std::uint32_t>(bytes.data() + 4),
                 detail::load_le<std::uint32_t>(bytes.data() + 8)};
}

}  // namespace cellprov

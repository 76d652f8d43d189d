// Copyright 2026 The subtok Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace subtok {

/// Bad option values (probabilities outside [0,1], vocab size too small, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unusable input data (empty corpus, zero usable gold rows, missing file).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid byte sequences in input text.
class EncodingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A segmentation that violates the model contract (unit not in vocab, ...).
class SegmentationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Transparent hasher so unordered maps keyed by std::string accept
/// std::string_view lookups without allocating.
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

/// FNV-1a, used for content digests in run manifests and for deriving
/// per-word seeds that do not depend on iteration order.
inline std::uint64_t fnv1a64(std::string_view data,
                             std::uint64_t state = 0xcbf29ce484222325ull) {
  for (unsigned char c : data) {
    state ^= c;
    state *= 0x100000001b3ull;
  }
  return state;
}

}  // namespace subtok

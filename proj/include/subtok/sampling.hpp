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

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subtok/encode.hpp"
#include "subtok/model.hpp"
#include "subtok/rng.hpp"

namespace subtok {

/// Empirical distribution over segmentations of a single word. Keys join the
/// marked units with a single space, which cannot occur inside a unit because
/// words are split on whitespace before segmentation.
struct SegmentationDistribution {
  std::string word;
  std::uint64_t total_samples = 0;
  std::map<std::string, std::uint64_t> counts;

  struct Entry {
    std::string key;
    std::uint64_t count;
  };

  /// Entries ordered by count descending, then key ascending.
  std::vector<Entry> sorted() const {
    std::vector<Entry> out;
    out.reserve(counts.size());
    for (const auto& [key, count] : counts) out.push_back({key, count});
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
      if (a.count != b.count) return a.count > b.count;
      return a.key < b.key;
    });
    return out;
  }
};

inline std::string segmentation_key(const std::vector<std::string>& units) {
  std::string key;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (i > 0) key += ' ';
    key += units[i];
  }
  return key;
}

inline std::vector<std::string> split_segmentation_key(const std::string& key) {
  std::vector<std::string> units;
  std::size_t start = 0;
  while (start <= key.size()) {
    const std::size_t end = key.find(' ', start);
    if (end == std::string::npos) {
      units.push_back(key.substr(start));
      break;
    }
    units.push_back(key.substr(start, end - start));
    start = end + 1;
  }
  return units;
}

/// Draws n dropout segmentations of one word. Each draw gets its own RNG
/// stream derived from (seed, draw index), so results do not depend on how
/// draws are batched or distributed across workers. Returns nullopt for words
/// containing characters outside the model alphabet.
inline std::optional<SegmentationDistribution> sample_distribution(
    const TokenizerModel& model, const std::string& word, double p, std::uint64_t n,
    std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConfigError("dropout probability must lie in [0, 1], got " + std::to_string(p));
  }
  const std::vector<std::string> base = split_codepoints(word);
  for (const std::string& c : base) {
    if (!model.in_alphabet(c)) return std::nullopt;
  }
  SegmentationDistribution dist;
  dist.word = word;
  std::string key;
  for (std::uint64_t i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, i));
    std::vector<std::string> surfaces = base;
    detail::run_merges(model, surfaces, p, &rng);
    key.clear();
    for (std::size_t j = 0; j < surfaces.size(); ++j) {
      if (j > 0) key += ' ';
      key += model.marked(surfaces[j], j > 0);
    }
    ++dist.counts[key];
    ++dist.total_samples;
  }
  return dist;
}

/// Segmentations observed at least k times, ordered by count descending then
/// key ascending.
inline std::vector<SegmentationDistribution::Entry> filter_by_count(
    const SegmentationDistribution& dist, std::uint64_t k) {
  std::vector<SegmentationDistribution::Entry> out;
  for (const SegmentationDistribution::Entry& e : dist.sorted()) {
    if (e.count >= k) out.push_back(e);
  }
  return out;
}

}  // namespace subtok

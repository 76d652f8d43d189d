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
#include <stdexcept>
#include <string>
#include <vector>

#include "subtok/model.hpp"
#include "subtok/unicode.hpp"

namespace subtok {

/// Positions where a word is split, counted in codepoints from the start of
/// the word. A word of length n has candidate positions 1..n-1; the unsplit
/// word is the empty set. Stored sorted without duplicates.
class BoundarySet {
 public:
  BoundarySet() = default;

  explicit BoundarySet(std::vector<int> positions) : positions_(std::move(positions)) {
    std::sort(positions_.begin(), positions_.end());
    positions_.erase(std::unique(positions_.begin(), positions_.end()), positions_.end());
  }

  const std::vector<int>& positions() const { return positions_; }
  std::size_t size() const { return positions_.size(); }
  bool empty() const { return positions_.empty(); }
  bool operator==(const BoundarySet&) const = default;
  bool operator<(const BoundarySet& other) const { return positions_ < other.positions_; }

  std::size_t intersection_size(const BoundarySet& other) const {
    std::size_t shared = 0;
    std::size_t i = 0, j = 0;
    while (i < positions_.size() && j < other.positions_.size()) {
      if (positions_[i] == other.positions_[j]) {
        ++shared;
        ++i;
        ++j;
      } else if (positions_[i] < other.positions_[j]) {
        ++i;
      } else {
        ++j;
      }
    }
    return shared;
  }

 private:
  std::vector<int> positions_;
};

/// Recovers the split positions used to produce the units of a single word.
/// Units after the first must carry the continuation prefix; continuation
/// prefixes do not count toward codepoint positions.
inline BoundarySet boundaries_of(const TokenizerModel& model,
                                 const std::vector<std::string>& units) {
  if (units.empty()) throw std::invalid_argument("cannot take boundaries of an empty unit list");
  std::vector<int> positions;
  int offset = 0;
  for (std::size_t i = 0; i < units.size(); ++i) {
    const std::string_view unit = units[i];
    const std::string_view surface = model.surface_of(unit);
    if (i > 0) {
      if (surface.size() == unit.size()) {
        throw std::invalid_argument("unit '" + units[i] +
                                    "' lacks the continuation prefix; the units must form a "
                                    "single word");
      }
      positions.push_back(offset);
    }
    offset += static_cast<int>(codepoint_count(surface));
  }
  return BoundarySet(std::move(positions));
}

/// Splits a word at the given codepoint positions. Positions must be sorted,
/// unique and interior (0 < position < word length).
inline std::vector<std::string> split_at(const std::string& word, const BoundarySet& boundaries) {
  const std::vector<std::string> cps = split_codepoints(word);
  const int n = static_cast<int>(cps.size());
  std::vector<std::string> pieces;
  int start = 0;
  auto take = [&](int end) {
    std::string piece;
    for (int i = start; i < end; ++i) piece += cps[static_cast<std::size_t>(i)];
    pieces.push_back(std::move(piece));
    start = end;
  };
  for (int pos : boundaries.positions()) {
    if (pos <= 0 || pos >= n) {
      throw std::invalid_argument("split position " + std::to_string(pos) +
                                  " outside word of length " + std::to_string(n));
    }
    take(pos);
  }
  take(n);
  return pieces;
}

}  // namespace subtok

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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subtok/model.hpp"
#include "subtok/rng.hpp"

namespace subtok {

struct DropoutConfig {
  double p = 0.0;
  std::uint64_t seed = 0;
};

/// Subword units for a piece of text. Units are marked token strings
/// (word-internal units carry the continuation prefix); `word_index` maps
/// each unit to its surface word; `is_unknown` marks UNK units emitted for
/// out-of-alphabet words.
struct Segmentation {
  std::vector<std::string> units;
  std::vector<int> word_index;
  std::vector<bool> is_unknown;

  std::size_t size() const { return units.size(); }
  bool operator==(const Segmentation&) const = default;

  int word_count() const {
    return word_index.empty() ? 0 : word_index.back() + 1;
  }

  /// Units belonging to one word.
  std::vector<std::string> word_units(int word) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < units.size(); ++i) {
      if (word_index[i] == word) out.push_back(units[i]);
    }
    return out;
  }
};

namespace detail {

/// Core merge loop shared by deterministic and dropout encoding, operating
/// on the surface forms of one word (element 0 is the word-initial unit).
///
/// Each round collects every position where some merge applies. Under
/// dropout, every occurrence is independently discarded with probability p
/// for this round only; the surviving occurrence with the best rank
/// (leftmost on ties) is applied. The loop stops when no occurrence is
/// applicable or none survived the round.
inline void run_merges(const TokenizerModel& model, std::vector<std::string>& surfaces,
                       double p, Rng* rng) {
  struct Occurrence {
    int rank;
    std::size_t pos;
  };
  std::vector<Occurrence> candidates;
  for (;;) {
    candidates.clear();
    for (std::size_t i = 0; i + 1 < surfaces.size(); ++i) {
      const int rank = model.merge_rank(surfaces[i], surfaces[i + 1]);
      if (rank >= 0) candidates.push_back({rank, i});
    }
    if (candidates.empty()) return;

    const Occurrence* best = nullptr;
    for (const Occurrence& c : candidates) {
      if (rng != nullptr && rng->next_double() < p) continue;  // dropped this round
      if (best == nullptr || c.rank < best->rank) best = &c;
    }
    if (best == nullptr) return;

    surfaces[best->pos] += surfaces[best->pos + 1];
    surfaces.erase(surfaces.begin() + static_cast<std::ptrdiff_t>(best->pos) + 1);
  }
}

}  // namespace detail

/// True when every codepoint of the word is in the model alphabet, i.e. the
/// word can be segmented without falling back to the UNK token.
inline bool covers_word(const TokenizerModel& model, std::string_view word) {
  for (const std::string& c : split_codepoints(word)) {
    if (!model.in_alphabet(c)) return false;
  }
  return true;
}

/// Segments one normalized word. Returns marked units, or the UNK token when
/// the word contains characters outside the model alphabet. Pass a null rng
/// for deterministic encoding.
inline std::vector<std::string> encode_word(const TokenizerModel& model, std::string_view word,
                                            double p = 0.0, Rng* rng = nullptr) {
  std::vector<std::string> surfaces = split_codepoints(word);
  for (const std::string& c : surfaces) {
    if (!model.in_alphabet(c)) return {model.unk_token()};
  }
  detail::run_merges(model, surfaces, p, rng);
  std::vector<std::string> units;
  units.reserve(surfaces.size());
  for (std::size_t i = 0; i < surfaces.size(); ++i) {
    units.push_back(model.marked(surfaces[i], i > 0));
  }
  return units;
}

namespace detail {

inline Segmentation encode_text(const TokenizerModel& model, std::string_view text, double p,
                                Rng* rng) {
  Segmentation seg;
  const std::string normalized = model.normalize_text(text);
  const std::vector<std::string> words = split_words(normalized);
  for (std::size_t w = 0; w < words.size(); ++w) {
    const std::vector<std::string> units = encode_word(model, words[w], p, rng);
    const bool unknown = units.size() == 1 && units[0] == model.unk_token();
    for (const std::string& u : units) {
      seg.units.push_back(u);
      seg.word_index.push_back(static_cast<int>(w));
      seg.is_unknown.push_back(unknown);
    }
  }
  return seg;
}

}  // namespace detail

/// Greedy BPE segmentation: per word, repeatedly applies the
/// highest-priority applicable merge until none applies.
inline Segmentation encode_deterministic(const TokenizerModel& model, std::string_view text) {
  return detail::encode_text(model, text, 0.0, nullptr);
}

/// Merge-dropout segmentation. p = 0 reproduces encode_deterministic
/// exactly; p = 1 yields the pure character segmentation. A pure function of
/// (model, text, p, seed).
inline Segmentation encode_dropout(const TokenizerModel& model, std::string_view text,
                                   const DropoutConfig& config) {
  if (!(config.p >= 0.0 && config.p <= 1.0)) {
    throw ConfigError("dropout probability must lie in [0, 1]");
  }
  Rng rng(config.seed);
  return detail::encode_text(model, text, config.p, &rng);
}

/// Reconstructs the normalized surface text: strips continuation prefixes,
/// concatenates units within words, joins words with single spaces.
inline std::string decode(const TokenizerModel& model, const Segmentation& seg) {
  std::string out;
  int current_word = -1;
  for (std::size_t i = 0; i < seg.units.size(); ++i) {
    const std::string& unit = seg.units[i];
    if (!model.has_token(unit)) {
      throw SegmentationError("unit '" + unit + "' is not in the vocabulary");
    }
    if (seg.word_index[i] != current_word) {
      if (current_word >= 0) out.push_back(' ');
      current_word = seg.word_index[i];
    }
    out += model.surface_of(unit);
  }
  return out;
}

/// Token ids for a segmentation (UNK units map to the UNK id).
inline std::vector<int> token_ids(const TokenizerModel& model, const Segmentation& seg) {
  std::vector<int> ids;
  ids.reserve(seg.units.size());
  for (const std::string& unit : seg.units) {
    const int id = model.token_id(unit);
    if (id < 0) throw SegmentationError("unit '" + unit + "' is not in the vocabulary");
    ids.push_back(id);
  }
  return ids;
}

}  // namespace subtok

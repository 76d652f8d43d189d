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
#include <istream>
#include <queue>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "subtok/encode.hpp"
#include "subtok/model.hpp"

namespace subtok {

struct TrainConfig {
  int vocab_size = 30000;
  ModelConfig model{};
};

/// Normalizes every line and accumulates word type frequencies.
inline std::unordered_map<std::string, std::uint64_t> word_counts_from_stream(
    std::istream& lines, const NormalizeOptions& norm = {}) {
  std::unordered_map<std::string, std::uint64_t> counts;
  std::string line;
  while (std::getline(lines, line)) {
    for (std::string& word : split_words(normalize(line, norm))) {
      ++counts[std::move(word)];
    }
  }
  return counts;
}

namespace detail {

using SurfacePair = std::pair<std::string, std::string>;

struct SurfacePairHash {
  std::size_t operator()(const SurfacePair& p) const noexcept {
    const std::size_t h1 = std::hash<std::string>{}(p.first);
    const std::size_t h2 = std::hash<std::string>{}(p.second);
    return h1 ^ (h2 * 0x9e3779b97f4a7c15ull + (h1 << 6) + (h1 >> 2));
  }
};

struct HeapEntry {
  std::int64_t count;
  std::string left;
  std::string right;
};

/// Max-heap on count; ties resolved toward the lexicographically smaller
/// (left, right) pair so training is deterministic.
struct HeapLess {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.count != b.count) return a.count < b.count;
    return std::tie(a.left, a.right) > std::tie(b.left, b.right);
  }
};

}  // namespace detail

/// Standard BPE training over word frequencies (words must already be
/// normalized). Pair statistics are collected on surface forms, so a pair's
/// count aggregates its word-initial and word-internal occurrences.
inline TokenizerModel train_bpe(const std::unordered_map<std::string, std::uint64_t>& word_counts,
                                const TrainConfig& config) {
  using detail::SurfacePair;

  if (word_counts.empty()) throw DataError("empty corpus: nothing to train on");

  struct Word {
    std::vector<std::string> units;
    std::uint64_t freq;
  };

  // Deterministic word ids regardless of map iteration order.
  std::vector<const std::string*> sorted_words;
  sorted_words.reserve(word_counts.size());
  for (const auto& [word, freq] : word_counts) sorted_words.push_back(&word);
  std::sort(sorted_words.begin(), sorted_words.end(),
            [](const std::string* a, const std::string* b) { return *a < *b; });

  std::vector<Word> words;
  words.reserve(sorted_words.size());
  std::vector<std::string> alphabet;
  {
    std::unordered_set<std::string> alphabet_set;
    for (const std::string* w : sorted_words) {
      Word entry{split_codepoints(*w), word_counts.at(*w)};
      for (const std::string& c : entry.units) {
        if (alphabet_set.insert(c).second) alphabet.push_back(c);
      }
      words.push_back(std::move(entry));
    }
  }
  std::sort(alphabet.begin(), alphabet.end());

  // Vocabulary under construction: specials, both forms of each alphabet
  // character, then both forms of each merge output as merges are learned.
  std::vector<std::string> vocab = config.model.special_tokens;
  std::unordered_set<std::string> vocab_set(vocab.begin(), vocab.end());
  const auto add_token = [&](const std::string& token) {
    if (vocab_set.insert(token).second) vocab.push_back(token);
  };
  for (const std::string& c : alphabet) {
    add_token(c);
    add_token(config.model.continuation_prefix + c);
  }
  if (static_cast<int>(vocab.size()) > config.vocab_size) {
    throw ConfigError("vocab_size " + std::to_string(config.vocab_size) +
                      " cannot hold the special tokens and alphabet (" +
                      std::to_string(vocab.size()) + " tokens)");
  }

  std::unordered_map<SurfacePair, std::int64_t, detail::SurfacePairHash> stats;
  std::unordered_map<SurfacePair, std::unordered_set<int>, detail::SurfacePairHash> pair_words;
  for (std::size_t wi = 0; wi < words.size(); ++wi) {
    const Word& w = words[wi];
    for (std::size_t i = 0; i + 1 < w.units.size(); ++i) {
      SurfacePair p{w.units[i], w.units[i + 1]};
      stats[p] += static_cast<std::int64_t>(w.freq);
      pair_words[p].insert(static_cast<int>(wi));
    }
  }

  std::priority_queue<detail::HeapEntry, std::vector<detail::HeapEntry>, detail::HeapLess> heap;
  for (const auto& [pair, count] : stats) {
    if (count >= 2) heap.push({count, pair.first, pair.second});
  }

  std::vector<MergeRule> merges;
  while (static_cast<int>(vocab.size()) < config.vocab_size && !heap.empty()) {
    detail::HeapEntry top = heap.top();
    heap.pop();
    const SurfacePair pair{top.left, top.right};
    const auto it = stats.find(pair);
    const std::int64_t actual = it == stats.end() ? 0 : it->second;
    if (actual != top.count) {
      // Stale entry; reinsert with the corrected count and try again.
      if (actual >= 2) heap.push({actual, pair.first, pair.second});
      continue;
    }
    if (actual < 2) continue;

    const std::string fused = pair.first + pair.second;
    int needed = 0;
    if (!vocab_set.count(fused)) ++needed;
    if (!vocab_set.count(config.model.continuation_prefix + fused)) ++needed;
    if (static_cast<int>(vocab.size()) + needed > config.vocab_size) break;

    merges.push_back({pair.first, pair.second});
    add_token(fused);
    add_token(config.model.continuation_prefix + fused);

    // Rewrite affected words, keeping pair statistics in sync.
    std::vector<int> affected(pair_words[pair].begin(), pair_words[pair].end());
    std::sort(affected.begin(), affected.end());
    std::unordered_set<SurfacePair, detail::SurfacePairHash> touched;
    for (int wi : affected) {
      Word& w = words[static_cast<std::size_t>(wi)];
      bool contains = false;
      for (std::size_t i = 0; i + 1 < w.units.size(); ++i) {
        if (w.units[i] == pair.first && w.units[i + 1] == pair.second) {
          contains = true;
          break;
        }
      }
      if (!contains) continue;  // stale index entry

      const std::int64_t freq = static_cast<std::int64_t>(w.freq);
      for (std::size_t i = 0; i + 1 < w.units.size(); ++i) {
        SurfacePair old{w.units[i], w.units[i + 1]};
        stats[old] -= freq;
        touched.insert(std::move(old));
      }

      // Leftmost non-overlapping replacement.
      std::vector<std::string> rewritten;
      rewritten.reserve(w.units.size());
      for (std::size_t i = 0; i < w.units.size();) {
        if (i + 1 < w.units.size() && w.units[i] == pair.first &&
            w.units[i + 1] == pair.second) {
          rewritten.push_back(fused);
          i += 2;
        } else {
          rewritten.push_back(std::move(w.units[i]));
          ++i;
        }
      }
      w.units = std::move(rewritten);

      for (std::size_t i = 0; i + 1 < w.units.size(); ++i) {
        SurfacePair fresh{w.units[i], w.units[i + 1]};
        stats[fresh] += freq;
        pair_words[fresh].insert(wi);
        touched.insert(std::move(fresh));
      }
    }
    stats.erase(pair);
    pair_words.erase(pair);
    touched.erase(pair);
    for (const SurfacePair& p : touched) {
      const auto ts = stats.find(p);
      if (ts != stats.end() && ts->second >= 2) heap.push({ts->second, p.first, p.second});
    }
  }

  return TokenizerModel(config.model, std::move(alphabet), std::move(merges), std::move(vocab));
}

inline TokenizerModel train_bpe(std::istream& corpus_lines, const TrainConfig& config) {
  return train_bpe(word_counts_from_stream(corpus_lines, config.model.normalization), config);
}

}  // namespace subtok

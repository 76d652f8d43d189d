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

// Deterministic synthetic fixtures: two small morphological languages whose
// words are prefix + stem + suffix concatenations, so the gold boundary sets
// fall out of the construction. Everything is a pure function of the seeds.

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "subtok/boundary.hpp"
#include "subtok/gold.hpp"
#include "subtok/model.hpp"
#include "subtok/rng.hpp"
#include "subtok/train.hpp"
#include "subtok/unicode.hpp"

namespace fixtures {

/// The toy two-letter model used throughout: merges (a,b) then (ab,ab).
inline subtok::TokenizerModel toy_model() {
  return subtok::TokenizerModel::from_merges(subtok::ModelConfig{}, {"a", "b"},
                                             {{"a", "b"}, {"ab", "ab"}});
}

struct MorphLanguage {
  std::string name;
  std::vector<std::string> consonants;
  std::vector<std::string> vowels;
};

inline MorphLanguage language_a() {
  return {"ata",
          {"b", "d", "g", "k", "l", "m", "n", "p", "r", "s", "t"},
          {"a", "e", "i", "o", "u"}};
}

// Distinct inventory with two-byte letters so codepoint arithmetic is
// exercised on non-ASCII text.
inline MorphLanguage language_b() {
  return {"ilu", {"f", "h", "j", "v", "w", "z", "c", "q", "x"}, {"ö", "ü", "y", "á"}};
}

struct WordEntry {
  std::string word;
  std::vector<std::vector<int>> analyses;  // seam positions, codepoints
};

namespace detail {

inline const std::string& pick(subtok::Rng& rng, const std::vector<std::string>& pool) {
  return pool[rng.next_index(pool.size())];
}

inline std::string syllable(subtok::Rng& rng, const MorphLanguage& lang) {
  std::string s = pick(rng, lang.consonants) + pick(rng, lang.vowels);
  if (rng.next_double() < 0.3) s += pick(rng, lang.consonants);
  return s;
}

}  // namespace detail

/// A deterministic list of word types with their morphological analyses.
/// Words built twice with different seams keep both analyses.
inline std::vector<WordEntry> word_inventory(const MorphLanguage& lang, std::size_t count,
                                             std::uint64_t seed) {
  subtok::Rng rng(seed);

  std::vector<std::string> prefixes, stems, suffixes;
  for (int i = 0; i < 8; ++i) prefixes.push_back(detail::syllable(rng, lang));
  for (int i = 0; i < 48; ++i) {
    stems.push_back(detail::syllable(rng, lang) + detail::syllable(rng, lang));
  }
  for (int i = 0; i < 12; ++i) suffixes.push_back(detail::syllable(rng, lang));

  std::map<std::string, std::set<std::vector<int>>> built;
  while (built.size() < count) {
    const std::string& stem = detail::pick(rng, stems);
    std::string word;
    std::vector<int> seams;
    const double shape = rng.next_double();
    if (shape < 0.25) {
      word = stem;
    } else if (shape < 0.60) {
      const std::string& suffix = detail::pick(rng, suffixes);
      word = stem + suffix;
      seams = {static_cast<int>(subtok::codepoint_count(stem))};
    } else if (shape < 0.80) {
      const std::string& prefix = detail::pick(rng, prefixes);
      word = prefix + stem;
      seams = {static_cast<int>(subtok::codepoint_count(prefix))};
    } else {
      const std::string& prefix = detail::pick(rng, prefixes);
      const std::string& suffix = detail::pick(rng, suffixes);
      word = prefix + stem + suffix;
      const int at = static_cast<int>(subtok::codepoint_count(prefix));
      seams = {at, at + static_cast<int>(subtok::codepoint_count(stem))};
    }
    built[word].insert(seams);
  }

  std::vector<WordEntry> entries;
  entries.reserve(built.size());
  for (const auto& [word, seam_sets] : built) {
    WordEntry e;
    e.word = word;
    for (const std::vector<int>& s : seam_sets) e.analyses.push_back(s);
    entries.push_back(std::move(e));
  }
  return entries;
}

inline subtok::GoldLexicon gold_of(const std::vector<WordEntry>& inventory,
                                   const std::string& language) {
  subtok::GoldLexicon gold;
  gold.language = language;
  gold.source = "synthetic";
  for (const WordEntry& e : inventory) {
    for (const std::vector<int>& seams : e.analyses) {
      gold.entries[e.word].push_back(subtok::BoundarySet(seams));
    }
  }
  for (auto& [word, sets] : gold.entries) std::sort(sets.begin(), sets.end());
  return gold;
}

/// Corpus lines drawn from the inventory with a skewed frequency profile, so
/// some words are common enough to pass high count thresholds and others are
/// rare.
inline std::vector<std::string> corpus_lines(const std::vector<WordEntry>& inventory,
                                             std::size_t n_lines, std::uint64_t seed) {
  subtok::Rng rng(seed);
  std::vector<std::string> lines;
  lines.reserve(n_lines);
  for (std::size_t i = 0; i < n_lines; ++i) {
    const std::size_t n_words = 5 + rng.next_index(5);
    std::string line;
    for (std::size_t w = 0; w < n_words; ++w) {
      const double u = rng.next_double();
      const std::size_t idx = static_cast<std::size_t>(u * u * u *
                                                       static_cast<double>(inventory.size()));
      if (w > 0) line += ' ';
      line += inventory[idx].word;
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

inline subtok::TokenizerModel train_on_lines(const std::vector<std::string>& lines,
                                             int vocab_size) {
  std::ostringstream joined;
  for (const std::string& line : lines) joined << line << '\n';
  std::istringstream in(joined.str());
  subtok::TrainConfig config;
  config.vocab_size = vocab_size;
  return subtok::train_bpe(in, config);
}

}  // namespace fixtures

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
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "subtok/boundary.hpp"
#include "subtok/encode.hpp"
#include "subtok/gold.hpp"
#include "subtok/model.hpp"
#include "subtok/rng.hpp"
#include "subtok/sampling.hpp"

namespace subtok {

/// For each word, the token sequences that realize one of its gold analyses.
/// Only analyses whose every marked unit is a vocabulary token are kept; the
/// tokenizer could never emit anything else.
struct ReplacementTable {
  std::map<std::string, std::vector<std::vector<std::string>>> entries;
  std::uint64_t words_total = 0;
  std::uint64_t words_eligible = 0;
  std::uint64_t analyses_total = 0;
  std::uint64_t analyses_eligible = 0;

  const std::vector<std::vector<std::string>>* find(const std::string& word) const {
    const auto it = entries.find(word);
    return it == entries.end() ? nullptr : &it->second;
  }
};

inline ReplacementTable build_replacement_table(const TokenizerModel& model,
                                                const GoldLexicon& lexicon) {
  ReplacementTable table;
  table.words_total = lexicon.word_count();
  for (const auto& [word, gold_sets] : lexicon.entries) {
    std::vector<std::vector<std::string>> candidates;
    for (const BoundarySet& set : gold_sets) {
      ++table.analyses_total;
      const std::vector<std::string> pieces = split_at(word, set);
      std::vector<std::string> units;
      units.reserve(pieces.size());
      bool eligible = true;
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        std::string unit = model.marked(pieces[i], i > 0);
        if (!model.has_token(unit)) {
          eligible = false;
          break;
        }
        units.push_back(std::move(unit));
      }
      if (eligible) {
        ++table.analyses_eligible;
        candidates.push_back(std::move(units));
      }
    }
    if (!candidates.empty()) {
      ++table.words_eligible;
      table.entries.emplace(word, std::move(candidates));
    }
  }
  return table;
}

struct InjectionResult {
  Segmentation segmentation;
  std::uint64_t eligible_occurrences = 0;  // occurrences of table words
  std::uint64_t replaced_occurrences = 0;  // occurrences actually swapped
};

/// Tokenizes text deterministically, except that each occurrence of a table
/// word is, with probability replace_prob, swapped for one of its gold-aligned
/// token sequences (chosen uniformly). Pure function of (model, table, text,
/// replace_prob, seed); replace_prob 0 reproduces encode_deterministic and 1
/// swaps every eligible occurrence.
inline InjectionResult inject_replacements(const TokenizerModel& model,
                                           const ReplacementTable& table, std::string_view text,
                                           double replace_prob, std::uint64_t seed) {
  if (!(replace_prob >= 0.0 && replace_prob <= 1.0)) {
    throw ConfigError("replacement probability must lie in [0, 1]");
  }
  InjectionResult result;
  Segmentation& seg = result.segmentation;
  Rng rng(seed);
  const std::string normalized = model.normalize_text(text);
  const std::vector<std::string> words = split_words(normalized);
  for (std::size_t w = 0; w < words.size(); ++w) {
    const std::vector<std::vector<std::string>>* candidates = table.find(words[w]);
    const std::vector<std::string>* chosen = nullptr;
    if (candidates != nullptr) {
      ++result.eligible_occurrences;
      if (rng.next_double() < replace_prob) {
        chosen = &(*candidates)[rng.next_index(candidates->size())];
        ++result.replaced_occurrences;
      }
    }
    const std::vector<std::string> units =
        chosen != nullptr ? *chosen : encode_word(model, words[w]);
    const bool unknown = units.size() == 1 && units[0] == model.unk_token();
    for (const std::string& unit : units) {
      seg.units.push_back(unit);
      seg.word_index.push_back(static_cast<int>(w));
      seg.is_unknown.push_back(unknown && chosen == nullptr);
    }
  }
  return result;
}

/// Text form of the table: one candidate per line, word then the space-joined
/// units, sorted by word with candidates in gold order. Round-trips exactly.
inline void write_replacement_table(const ReplacementTable& table, std::ostream& out) {
  for (const auto& [word, candidates] : table.entries) {
    for (const std::vector<std::string>& units : candidates) {
      out << word << '\t' << segmentation_key(units) << '\n';
    }
  }
}

inline void write_replacement_table_file(const ReplacementTable& table,
                                         const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write_replacement_table(table, out);
}

/// Reads the text form back. Only the entries survive a round trip; the
/// eligibility counters describe the original build and are reset here.
inline ReplacementTable read_replacement_table_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  ReplacementTable table;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": expected 'word<TAB>units'");
    }
    table.entries[line.substr(0, tab)].push_back(
        split_segmentation_key(line.substr(tab + 1)));
  }
  table.words_total = table.words_eligible = table.entries.size();
  for (const auto& [word, candidates] : table.entries) {
    table.analyses_total += candidates.size();
  }
  table.analyses_eligible = table.analyses_total;
  return table;
}

}  // namespace subtok

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
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "subtok/boundary.hpp"
#include "subtok/common.hpp"
#include "subtok/model.hpp"
#include "subtok/normalize.hpp"

namespace subtok {

/// Gold morphological segmentations: for each word, one or more boundary
/// sets. Words and analyses are kept sorted so iteration order is stable.
struct GoldLexicon {
  std::string language;
  std::string source;
  std::map<std::string, std::vector<BoundarySet>> entries;

  std::size_t word_count() const { return entries.size(); }

  std::size_t analysis_count() const {
    std::size_t n = 0;
    for (const auto& [word, sets] : entries) n += sets.size();
    return n;
  }
};

/// Bookkeeping from one parse: how many data rows were seen and why rows
/// were discarded. Reason strings double as report labels.
struct IngestReport {
  std::uint64_t rows_read = 0;
  std::map<std::string, std::uint64_t> rejected;
  std::uint64_t words = 0;
  std::uint64_t analyses = 0;

  std::uint64_t rejected_total() const {
    std::uint64_t n = 0;
    for (const auto& [reason, count] : rejected) n += count;
    return n;
  }

  double mean_analyses_per_word() const {
    return words == 0 ? 0.0 : static_cast<double>(analyses) / static_cast<double>(words);
  }
};

enum class GoldFormat {
  canonical,               // word<TAB>mor|phe|mes, '#' comments
  morphynet_inflectional,  // lemma, word, features, segmentation
  morphynet_derivational,  // base, derived, POS, POS, affix, strategy
};

inline GoldFormat parse_gold_format(std::string_view name) {
  if (name == "canonical") return GoldFormat::canonical;
  if (name == "morphynet-inflectional") return GoldFormat::morphynet_inflectional;
  if (name == "morphynet-derivational") return GoldFormat::morphynet_derivational;
  throw ConfigError("unknown gold format '" + std::string(name) +
                    "' (expected canonical, morphynet-inflectional or morphynet-derivational)");
}

struct ParsedGold {
  GoldLexicon lexicon;
  IngestReport report;
};

namespace detail {

inline std::vector<std::string> split_on(std::string_view text, char sep) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find(sep, start);
    if (end == std::string_view::npos) {
      fields.emplace_back(text.substr(start));
      break;
    }
    fields.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
  return fields;
}

/// Validates one (word, morphemes) row and files it into the lexicon, or
/// records the reason it was discarded.
inline void ingest_row(const std::string& raw_word, const std::vector<std::string>& raw_morphemes,
                       const NormalizeOptions& norm, GoldLexicon& lexicon, IngestReport& report) {
  const std::string word = normalize(raw_word, norm);
  if (word.empty()) {
    ++report.rejected["empty word"];
    return;
  }
  if (word.find(' ') != std::string::npos) {
    ++report.rejected["word contains whitespace"];
    return;
  }

  std::vector<std::string> morphemes;
  morphemes.reserve(raw_morphemes.size());
  std::string concatenated;
  for (const std::string& raw : raw_morphemes) {
    std::string m = normalize(raw, norm);
    if (m.empty()) {
      ++report.rejected["empty morpheme"];
      return;
    }
    concatenated += m;
    morphemes.push_back(std::move(m));
  }
  if (concatenated != word) {
    ++report.rejected["morphemes do not spell the word"];
    return;
  }
  if (codepoint_count(word) < 2) {
    // A one-character word admits only the empty boundary set, which carries
    // no segmentation signal.
    ++report.rejected["single character word"];
    return;
  }

  std::vector<int> positions;
  int offset = 0;
  for (std::size_t i = 0; i + 1 < morphemes.size(); ++i) {
    offset += static_cast<int>(codepoint_count(morphemes[i]));
    positions.push_back(offset);
  }
  BoundarySet set(std::move(positions));

  std::vector<BoundarySet>& sets = lexicon.entries[word];
  if (std::find(sets.begin(), sets.end(), set) != sets.end()) {
    ++report.rejected["duplicate analysis"];
    return;
  }
  sets.push_back(std::move(set));
}

}  // namespace detail

/// Reads a gold lexicon in any supported format. Every data row is either
/// ingested or counted under a rejection reason; a file yielding no usable
/// rows is an error.
inline ParsedGold parse_gold_stream(std::istream& in, GoldFormat format,
                                    const NormalizeOptions& norm = {},
                                    const std::string& origin = "<stream>") {
  ParsedGold out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (format == GoldFormat::canonical) {
        constexpr std::string_view kLang = "# language: ";
        constexpr std::string_view kSource = "# source: ";
        if (line.rfind(kLang, 0) == 0) out.lexicon.language = line.substr(kLang.size());
        if (line.rfind(kSource, 0) == 0) out.lexicon.source = line.substr(kSource.size());
      }
      continue;
    }
    ++out.report.rows_read;

    const std::vector<std::string> fields = detail::split_on(line, '\t');
    switch (format) {
      case GoldFormat::canonical: {
        if (fields.size() != 2) {
          ++out.report.rejected["malformed row"];
          break;
        }
        detail::ingest_row(fields[0], detail::split_on(fields[1], '|'), norm, out.lexicon,
                           out.report);
        break;
      }
      case GoldFormat::morphynet_inflectional: {
        // lemma, inflected form, morphological features, segmentation
        if (fields.size() < 4) {
          ++out.report.rejected["malformed row"];
          break;
        }
        detail::ingest_row(fields[1], detail::split_on(fields[3], '|'), norm, out.lexicon,
                           out.report);
        break;
      }
      case GoldFormat::morphynet_derivational: {
        // base, derived form, base POS, derived POS, affix, strategy
        if (fields.size() < 6) {
          ++out.report.rejected["malformed row"];
          break;
        }
        const std::string& strategy = fields[5];
        std::vector<std::string> morphemes;
        if (strategy == "prefix") {
          morphemes = {fields[4], fields[0]};
        } else if (strategy == "suffix") {
          morphemes = {fields[0], fields[4]};
        } else {
          ++out.report.rejected["unknown affix strategy"];
          break;
        }
        detail::ingest_row(fields[1], morphemes, norm, out.lexicon, out.report);
        break;
      }
    }
  }

  for (auto& [word, sets] : out.lexicon.entries) std::sort(sets.begin(), sets.end());
  out.report.words = out.lexicon.word_count();
  out.report.analyses = out.lexicon.analysis_count();
  if (out.report.analyses == 0) {
    throw DataError("no usable gold rows in " + origin + " (" +
                    std::to_string(out.report.rows_read) + " rows, all rejected)");
  }
  return out;
}

inline ParsedGold parse_gold_file(const std::filesystem::path& path, GoldFormat format,
                                  const NormalizeOptions& norm = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  return parse_gold_stream(in, format, norm, path.string());
}

/// Canonical on-disk form: header comments, then one analysis per line,
/// sorted by word and boundary set. Reading it back reproduces the lexicon
/// and rewriting reproduces the file byte for byte.
inline void write_gold_stream(const GoldLexicon& lexicon, std::ostream& out) {
  out << "# gold segmentation lexicon\n";
  out << "# language: " << lexicon.language << '\n';
  out << "# source: " << lexicon.source << '\n';
  for (const auto& [word, sets] : lexicon.entries) {
    for (const BoundarySet& set : sets) {
      out << word << '\t';
      const std::vector<std::string> pieces = split_at(word, set);
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (i > 0) out << '|';
        out << pieces[i];
      }
      out << '\n';
    }
  }
}

inline void write_gold_file(const GoldLexicon& lexicon, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write_gold_stream(lexicon, out);
}

/// Drops words containing characters outside the model alphabet (those the
/// tokenizer could only map to the unknown token). Returns the number of
/// words removed.
inline std::uint64_t restrict_to_alphabet(GoldLexicon& lexicon, const TokenizerModel& model) {
  std::uint64_t dropped = 0;
  for (auto it = lexicon.entries.begin(); it != lexicon.entries.end();) {
    bool covered = true;
    for (const std::string& c : split_codepoints(it->first)) {
      if (!model.in_alphabet(c)) {
        covered = false;
        break;
      }
    }
    if (covered) {
      ++it;
    } else {
      ++dropped;
      it = lexicon.entries.erase(it);
    }
  }
  return dropped;
}

}  // namespace subtok

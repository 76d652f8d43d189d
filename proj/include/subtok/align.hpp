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
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "subtok/boundary.hpp"
#include "subtok/encode.hpp"
#include "subtok/gold.hpp"
#include "subtok/sampling.hpp"

namespace subtok {

/// F1 between two boundary sets. Two empty sets agree perfectly; an empty
/// set against a non-empty one scores zero. With precision s/|P| and recall
/// s/|G|, their harmonic mean simplifies to 2s/(|P|+|G|), which needs only
/// one rounding step.
inline double boundary_f1(const BoundarySet& predicted, const BoundarySet& gold) {
  if (predicted.empty() && gold.empty()) return 1.0;
  if (predicted.empty() || gold.empty()) return 0.0;
  const std::size_t shared = predicted.intersection_size(gold);
  return 2.0 * static_cast<double>(shared) /
         static_cast<double>(predicted.size() + gold.size());
}

/// Score of a predicted split against a word's gold analyses: the best F1
/// over all of them.
inline double alignment_score(const BoundarySet& predicted,
                              const std::vector<BoundarySet>& gold_sets) {
  if (gold_sets.empty()) throw std::invalid_argument("word has no gold analyses");
  double best = 0.0;
  for (const BoundarySet& gold : gold_sets) {
    best = std::max(best, boundary_f1(predicted, gold));
  }
  return best;
}

/// Alignment of the sampled distribution in expectation: the count-weighted
/// mean score over observed segmentations. The mean is accumulated as the
/// shortfall below the best observed score, so rounding can never push the
/// result above that maximum.
inline double expected_alignment(const TokenizerModel& model, const SegmentationDistribution& dist,
                                 const std::vector<BoundarySet>& gold_sets) {
  if (dist.total_samples == 0) throw std::invalid_argument("empty segmentation distribution");
  std::vector<std::pair<double, std::uint64_t>> scored;
  scored.reserve(dist.counts.size());
  double best = 0.0;
  for (const auto& [key, count] : dist.counts) {
    const BoundarySet b = boundaries_of(model, split_segmentation_key(key));
    const double score = alignment_score(b, gold_sets);
    best = std::max(best, score);
    scored.emplace_back(score, count);
  }
  double shortfall = 0.0;
  for (const auto& [score, count] : scored) {
    shortfall += static_cast<double>(count) * (best - score);
  }
  return best - shortfall / static_cast<double>(dist.total_samples);
}

/// Best score among segmentations observed at least k times, or nullopt when
/// nothing was sampled that often.
inline std::optional<double> best_alignment_at(const TokenizerModel& model,
                                               const SegmentationDistribution& dist,
                                               std::uint64_t k,
                                               const std::vector<BoundarySet>& gold_sets) {
  std::optional<double> best;
  for (const auto& [key, count] : dist.counts) {
    if (count < k) continue;
    const BoundarySet b = boundaries_of(model, split_segmentation_key(key));
    const double score = alignment_score(b, gold_sets);
    if (!best || score > *best) best = score;
  }
  return best;
}

// --- per-language evaluation -------------------------------------------------

struct EvalConfig {
  double dropout_p = 0.1;
  std::uint64_t samples = 2000;
  std::vector<std::uint64_t> thresholds = {100, 10};
  std::uint64_t seed = 0;
};

struct WordAlignmentRecord {
  std::string word;
  double regular = 0.0;  // deterministic segmentation
  double dropout = 0.0;  // expectation over sampled segmentations
  std::vector<std::optional<double>> best;  // parallel to EvalConfig::thresholds
  std::uint64_t distinct = 0;               // distinct segmentations observed
  std::uint64_t analyses = 0;               // gold analyses for this word
};

struct ThresholdSummary {
  std::uint64_t k = 0;
  double mean_present = 0.0;    // mean over words where some segmentation reached k
  std::uint64_t present = 0;    // words contributing to mean_present
  std::uint64_t absent = 0;     // words where no segmentation reached k
  double mean_zerofill = 0.0;   // absent words scored as zero
};

struct AlignmentReport {
  std::string language;
  double dropout_p = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> thresholds;
  std::vector<WordAlignmentRecord> records;  // sorted by word
  std::uint64_t evaluated = 0;
  std::uint64_t skipped = 0;  // words with characters outside the alphabet
  double mean_regular = 0.0;
  double mean_dropout = 0.0;
  std::vector<ThresholdSummary> threshold_summaries;
};

/// Per-word seed, stable across word subsets: depends only on the master
/// seed and the word itself, never on evaluation order or batching.
inline std::uint64_t word_seed(std::uint64_t master, std::string_view word) {
  return derive_seed(master, fnv1a64(word));
}

/// Scores every gold word under the deterministic and the dropout
/// segmenter. Words whose characters fall outside the model alphabet are
/// skipped and counted; everything else is deterministic in (model, lexicon,
/// config).
inline AlignmentReport evaluate_language(const TokenizerModel& model, const GoldLexicon& lexicon,
                                         const EvalConfig& config) {
  if (!(config.dropout_p >= 0.0 && config.dropout_p <= 1.0)) {
    throw ConfigError("dropout probability must lie in [0, 1]");
  }
  if (config.samples == 0) throw ConfigError("need at least one sample per word");

  AlignmentReport report;
  report.language = lexicon.language;
  report.dropout_p = config.dropout_p;
  report.samples = config.samples;
  report.seed = config.seed;
  report.thresholds = config.thresholds;

  for (const auto& [word, gold_sets] : lexicon.entries) {
    if (!covers_word(model, word)) {
      ++report.skipped;
      continue;
    }

    WordAlignmentRecord rec;
    rec.word = word;
    rec.analyses = gold_sets.size();

    const std::vector<std::string> det_units = encode_word(model, word);
    rec.regular = alignment_score(boundaries_of(model, det_units), gold_sets);

    const std::optional<SegmentationDistribution> dist = sample_distribution(
        model, word, config.dropout_p, config.samples, word_seed(config.seed, word));
    rec.dropout = expected_alignment(model, *dist, gold_sets);
    rec.distinct = dist->counts.size();
    for (std::uint64_t k : config.thresholds) {
      rec.best.push_back(best_alignment_at(model, *dist, k, gold_sets));
    }
    report.records.push_back(std::move(rec));
  }

  report.evaluated = report.records.size();
  if (report.evaluated == 0) {
    throw DataError("no gold word is covered by the model alphabet");
  }

  double sum_regular = 0.0, sum_dropout = 0.0;
  std::vector<double> sum_best(config.thresholds.size(), 0.0);
  std::vector<std::uint64_t> n_best(config.thresholds.size(), 0);
  for (const WordAlignmentRecord& rec : report.records) {
    sum_regular += rec.regular;
    sum_dropout += rec.dropout;
    for (std::size_t t = 0; t < rec.best.size(); ++t) {
      if (rec.best[t]) {
        sum_best[t] += *rec.best[t];
        ++n_best[t];
      }
    }
  }
  const double n = static_cast<double>(report.evaluated);
  report.mean_regular = sum_regular / n;
  report.mean_dropout = sum_dropout / n;
  for (std::size_t t = 0; t < config.thresholds.size(); ++t) {
    ThresholdSummary s;
    s.k = config.thresholds[t];
    s.present = n_best[t];
    s.absent = report.evaluated - n_best[t];
    s.mean_present = n_best[t] == 0 ? 0.0 : sum_best[t] / static_cast<double>(n_best[t]);
    s.mean_zerofill = sum_best[t] / n;
    report.threshold_summaries.push_back(s);
  }
  return report;
}

// --- report serialization ----------------------------------------------------

namespace detail {

inline std::string fixed4(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return buf;
}

}  // namespace detail

/// One JSON object per word, already sorted by word. Scores keep full double
/// precision so identical runs serialize identically.
inline void write_alignment_jsonl(const AlignmentReport& report, std::ostream& out) {
  for (const WordAlignmentRecord& rec : report.records) {
    nlohmann::ordered_json row;
    row["word"] = rec.word;
    row["regular"] = rec.regular;
    row["dropout"] = rec.dropout;
    nlohmann::ordered_json best = nlohmann::ordered_json::object();
    for (std::size_t t = 0; t < report.thresholds.size(); ++t) {
      const std::string key = "best>=" + std::to_string(report.thresholds[t]);
      if (rec.best[t]) {
        best[key] = *rec.best[t];
      } else {
        best[key] = nullptr;
      }
    }
    row["best"] = std::move(best);
    row["distinct"] = rec.distinct;
    row["analyses"] = rec.analyses;
    out << row.dump() << '\n';
  }
}

/// Summary table, one language per row: the deterministic score, the dropout
/// expectation, then one column per count threshold.
inline void write_alignment_summary_tsv(const std::vector<AlignmentReport>& reports,
                                        std::ostream& out) {
  if (reports.empty()) throw std::invalid_argument("no reports to summarize");
  const std::vector<std::uint64_t>& thresholds = reports.front().thresholds;
  out << "language\tregular\tdropout";
  for (std::uint64_t k : thresholds) out << "\tbest>=" << k;
  out << '\n';
  for (const AlignmentReport& report : reports) {
    if (report.thresholds != thresholds) {
      throw std::invalid_argument("reports use different threshold sets");
    }
    out << report.language << '\t' << detail::fixed4(report.mean_regular) << '\t'
        << detail::fixed4(report.mean_dropout);
    for (const ThresholdSummary& s : report.threshold_summaries) {
      out << '\t' << (s.present == 0 ? std::string("n/a") : detail::fixed4(s.mean_present));
    }
    out << '\n';
  }
}

/// One JSON object per observed segmentation, most frequent first, ties in
/// key order.
inline void write_distribution_jsonl(const SegmentationDistribution& dist, std::ostream& out) {
  for (const SegmentationDistribution::Entry& e : dist.sorted()) {
    nlohmann::ordered_json row;
    row["word"] = dist.word;
    row["segmentation"] = e.key;
    row["count"] = e.count;
    out << row.dump() << '\n';
  }
}

// --- corpus statistics -------------------------------------------------------

struct MultiTokenStats {
  double fraction = 0.0;        // word types split into more than one token
  std::uint64_t counted = 0;    // in-alphabet word types
  std::uint64_t unknown = 0;    // word types mapped to the UNK token
};

/// Share of word types that the deterministic segmenter splits into multiple
/// tokens. Unknown-character words are excluded from the ratio but reported.
inline MultiTokenStats multi_token_fraction(const TokenizerModel& model,
                                            const std::vector<std::string>& word_types) {
  MultiTokenStats stats;
  std::uint64_t multi = 0;
  for (const std::string& word : word_types) {
    if (!covers_word(model, word)) {
      ++stats.unknown;
      continue;
    }
    ++stats.counted;
    if (encode_word(model, word).size() > 1) ++multi;
  }
  if (stats.counted == 0) {
    throw DataError("every word type falls outside the model alphabet");
  }
  stats.fraction = static_cast<double>(multi) / static_cast<double>(stats.counted);
  return stats;
}

}  // namespace subtok

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

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "subtok/align.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace subtok;

namespace {

TokenizerModel five_letter_model() {
  return TokenizerModel::from_merges(ModelConfig{}, {"a", "b", "c", "d", "e"}, {});
}

SegmentationDistribution frozen_distribution() {
  SegmentationDistribution dist;
  dist.word = "abcde";
  dist.total_samples = 210;
  dist.counts["a ##bcde"] = 150;
  dist.counts["a ##b ##c ##d ##e"] = 60;
  return dist;
}

struct EvalFixture {
  TokenizerModel model;
  GoldLexicon gold;
};

EvalFixture eval_fixture() {
  const std::vector<fixtures::WordEntry> inventory =
      fixtures::word_inventory(fixtures::language_a(), 60, 7);
  std::vector<std::string> lines = fixtures::corpus_lines(inventory, 400, 3);
  std::string all_words;
  for (const fixtures::WordEntry& e : inventory) {
    if (!all_words.empty()) all_words += ' ';
    all_words += e.word;
  }
  lines.push_back(all_words);
  return {fixtures::train_on_lines(lines, 150), fixtures::gold_of(inventory, "ata")};
}

std::string jsonl_of(const AlignmentReport& report) {
  std::ostringstream out;
  write_alignment_jsonl(report, out);
  return out.str();
}

}  // namespace

TEST_CASE("boundary F1 follows the empty-set conventions") {
  CHECK(boundary_f1(BoundarySet{}, BoundarySet{}) == 1.0);
  CHECK(boundary_f1(BoundarySet{}, BoundarySet({2})) == 0.0);
  CHECK(boundary_f1(BoundarySet({2}), BoundarySet{}) == 0.0);
}

TEST_CASE("boundary F1 on worked examples") {
  CHECK(boundary_f1(BoundarySet({3}), BoundarySet({3, 5})) == Catch::Approx(2.0 / 3.0));
  CHECK(boundary_f1(BoundarySet({2, 4}), BoundarySet({2, 3})) == Catch::Approx(0.5));
  CHECK(boundary_f1(BoundarySet({1, 2}), BoundarySet({3, 4})) == 0.0);
  CHECK(boundary_f1(BoundarySet({2, 7}), BoundarySet({2, 7})) == 1.0);
}

TEST_CASE("boundary F1 matches the set-algebra oracle on every pair") {
  // Word length 8: every pair drawn from the 128 subsets of {1..7}.
  const std::vector<std::vector<int>> sets = oracle::all_boundary_sets(8);
  for (const std::vector<int>& pred : sets) {
    const BoundarySet p(pred);
    for (const std::vector<int>& gold : sets) {
      const double got = boundary_f1(p, BoundarySet(gold));
      const double want = oracle::boundary_f1(pred, gold);
      REQUIRE_THAT(got, Catch::Matchers::WithinAbs(want, 1e-12));
    }
  }
}

TEST_CASE("boundary F1 is symmetric") {
  const std::vector<std::vector<int>> sets = oracle::all_boundary_sets(7);
  for (const std::vector<int>& a : sets) {
    for (const std::vector<int>& b : sets) {
      REQUIRE(boundary_f1(BoundarySet(a), BoundarySet(b)) ==
              boundary_f1(BoundarySet(b), BoundarySet(a)));
    }
  }
}

TEST_CASE("alignment score takes the best gold analysis") {
  const std::vector<BoundarySet> gold = {BoundarySet({2}), BoundarySet({4})};
  CHECK(alignment_score(BoundarySet({2, 4}), gold) == Catch::Approx(2.0 / 3.0));
  CHECK(alignment_score(BoundarySet({2}), gold) == 1.0);
  CHECK(alignment_score(BoundarySet({3}), gold) == 0.0);
  CHECK_THROWS_AS(alignment_score(BoundarySet({2}), {}), std::invalid_argument);
}

TEST_CASE("alignment score matches the oracle over many gold collections") {
  const std::vector<std::vector<int>> sets = oracle::all_boundary_sets(6);
  const std::vector<std::vector<std::vector<int>>> collections = {
      {{1}, {2, 3}}, {{1, 2, 3, 4, 5}}, {{}, {3}}, {{2}, {4}, {2, 4}}};
  for (const std::vector<int>& pred : sets) {
    for (const auto& collection : collections) {
      std::vector<BoundarySet> gold;
      for (const std::vector<int>& g : collection) gold.emplace_back(g);
      REQUIRE_THAT(alignment_score(BoundarySet(pred), gold),
                   Catch::Matchers::WithinAbs(oracle::alignment_score(pred, collection), 1e-12));
    }
  }
}

TEST_CASE("expected alignment weights scores by observed counts") {
  const TokenizerModel m = five_letter_model();
  const SegmentationDistribution dist = frozen_distribution();
  const std::vector<BoundarySet> gold = {BoundarySet({1, 2, 3, 4})};
  // (150 * 0.4 + 60 * 1.0) / 210
  CHECK_THAT(expected_alignment(m, dist, gold),
             Catch::Matchers::WithinAbs(4.0 / 7.0, 1e-12));

  SegmentationDistribution empty;
  empty.word = "abcde";
  CHECK_THROWS_AS(expected_alignment(m, empty, gold), std::invalid_argument);
}

TEST_CASE("best alignment at a count threshold ignores rare segmentations") {
  const TokenizerModel m = five_letter_model();
  const SegmentationDistribution dist = frozen_distribution();
  const std::vector<BoundarySet> gold = {BoundarySet({1, 2, 3, 4})};

  const std::optional<double> at100 = best_alignment_at(m, dist, 100, gold);
  REQUIRE(at100.has_value());
  CHECK(*at100 == 0.4);

  const std::optional<double> at10 = best_alignment_at(m, dist, 10, gold);
  REQUIRE(at10.has_value());
  CHECK(*at10 == 1.0);

  CHECK(best_alignment_at(m, dist, 150, gold).value() == 0.4);
  CHECK_FALSE(best_alignment_at(m, dist, 151, gold).has_value());
}

TEST_CASE("word seeds depend only on the master seed and the word") {
  CHECK(word_seed(7, "walking") == word_seed(7, "walking"));
  CHECK(word_seed(7, "walking") != word_seed(8, "walking"));
  CHECK(word_seed(7, "walking") != word_seed(7, "talking"));
}

TEST_CASE("language evaluation is reproducible") {
  const EvalFixture fx = eval_fixture();
  EvalConfig config;
  config.dropout_p = 0.1;
  config.samples = 200;
  config.thresholds = {50, 5};
  config.seed = 9;

  const AlignmentReport first = evaluate_language(fx.model, fx.gold, config);
  const AlignmentReport second = evaluate_language(fx.model, fx.gold, config);
  CHECK(jsonl_of(first) == jsonl_of(second));
  CHECK(first.mean_regular == second.mean_regular);
  CHECK(first.mean_dropout == second.mean_dropout);
  CHECK(first.evaluated == fx.gold.word_count());
  CHECK(first.skipped == 0);
}

TEST_CASE("per-word results do not depend on which other words are evaluated") {
  const EvalFixture fx = eval_fixture();
  EvalConfig config;
  config.dropout_p = 0.2;
  config.samples = 150;
  config.thresholds = {50, 5};
  config.seed = 4;

  const AlignmentReport full = evaluate_language(fx.model, fx.gold, config);

  GoldLexicon subset;
  subset.language = fx.gold.language;
  std::size_t taken = 0;
  for (const auto& [word, sets] : fx.gold.entries) {
    subset.entries[word] = sets;
    if (++taken == 8) break;
  }
  const AlignmentReport part = evaluate_language(fx.model, subset, config);

  REQUIRE(part.records.size() == 8);
  for (const WordAlignmentRecord& rec : part.records) {
    const auto match = std::find_if(full.records.begin(), full.records.end(),
                                    [&](const WordAlignmentRecord& r) { return r.word == rec.word; });
    REQUIRE(match != full.records.end());
    CHECK(rec.regular == match->regular);
    CHECK(rec.dropout == match->dropout);
    CHECK(rec.best == match->best);
    CHECK(rec.distinct == match->distinct);
  }
}

TEST_CASE("words outside the model alphabet are skipped and counted") {
  const EvalFixture fx = eval_fixture();
  GoldLexicon gold = fx.gold;
  gold.entries["zzz"] = {BoundarySet({1})};

  EvalConfig config;
  config.samples = 20;
  const AlignmentReport report = evaluate_language(fx.model, gold, config);
  CHECK(report.skipped == 1);
  CHECK(report.evaluated == gold.word_count() - 1);
  for (const WordAlignmentRecord& rec : report.records) CHECK(rec.word != "zzz");
}

TEST_CASE("zero dropout collapses the evaluation onto the deterministic score") {
  const EvalFixture fx = eval_fixture();
  EvalConfig config;
  config.dropout_p = 0.0;
  config.samples = 50;
  config.thresholds = {50, 5};

  const AlignmentReport report = evaluate_language(fx.model, fx.gold, config);
  for (const WordAlignmentRecord& rec : report.records) {
    CHECK(rec.dropout == rec.regular);
    CHECK(rec.distinct == 1);
    for (const std::optional<double>& best : rec.best) {
      REQUIRE(best.has_value());
      CHECK(*best == rec.regular);
    }
  }
  CHECK(report.mean_dropout == Catch::Approx(report.mean_regular));
}

TEST_CASE("a stricter count threshold never reports a better score") {
  const EvalFixture fx = eval_fixture();
  EvalConfig config;
  config.dropout_p = 0.3;
  config.samples = 300;
  config.thresholds = {50, 5};  // best[0] uses the stricter threshold

  const AlignmentReport report = evaluate_language(fx.model, fx.gold, config);
  for (const WordAlignmentRecord& rec : report.records) {
    if (rec.best[0] && rec.best[1]) CHECK(*rec.best[1] >= *rec.best[0]);
    // Anything observed 50 times was observed 5 times.
    if (rec.best[0]) CHECK(rec.best[1].has_value());
  }
  REQUIRE(report.threshold_summaries.size() == 2);
  const ThresholdSummary& strict = report.threshold_summaries[0];
  const ThresholdSummary& loose = report.threshold_summaries[1];
  CHECK(loose.present >= strict.present);
  for (const ThresholdSummary& s : report.threshold_summaries) {
    CHECK(s.present + s.absent == report.evaluated);
    const double expected_zerofill =
        s.mean_present * static_cast<double>(s.present) / static_cast<double>(report.evaluated);
    CHECK_THAT(s.mean_zerofill, Catch::Matchers::WithinAbs(expected_zerofill, 1e-12));
  }
}

TEST_CASE("evaluation rejects bad configuration and uncovered lexicons") {
  const EvalFixture fx = eval_fixture();
  EvalConfig config;

  config.dropout_p = -0.1;
  CHECK_THROWS_AS(evaluate_language(fx.model, fx.gold, config), ConfigError);
  config.dropout_p = 1.5;
  CHECK_THROWS_AS(evaluate_language(fx.model, fx.gold, config), ConfigError);
  config.dropout_p = std::nan("");
  CHECK_THROWS_AS(evaluate_language(fx.model, fx.gold, config), ConfigError);

  config = EvalConfig{};
  config.samples = 0;
  CHECK_THROWS_AS(evaluate_language(fx.model, fx.gold, config), ConfigError);

  GoldLexicon uncovered;
  uncovered.entries["zzz"] = {BoundarySet({1})};
  CHECK_THROWS_AS(evaluate_language(fx.model, uncovered, EvalConfig{}), DataError);
}

TEST_CASE("per-word records serialize to one JSON object per line") {
  AlignmentReport report;
  report.language = "demo";
  report.thresholds = {100, 10};

  WordAlignmentRecord rec;
  rec.word = "abcde";
  rec.regular = 0.5;
  rec.dropout = 0.25;
  rec.best = {std::nullopt, 0.75};
  rec.distinct = 3;
  rec.analyses = 2;
  report.records.push_back(rec);

  CHECK(jsonl_of(report) ==
        "{\"word\":\"abcde\",\"regular\":0.5,\"dropout\":0.25,"
        "\"best\":{\"best>=100\":null,\"best>=10\":0.75},\"distinct\":3,\"analyses\":2}\n");
}

TEST_CASE("the summary table prints one language per row") {
  AlignmentReport a;
  a.language = "aa";
  a.thresholds = {100, 10};
  a.mean_regular = 0.5;
  a.mean_dropout = 0.625;
  a.threshold_summaries = {{100, 0.75, 2, 1, 0.5}, {10, 0.8125, 3, 0, 0.8125}};

  AlignmentReport b;
  b.language = "bb";
  b.thresholds = {100, 10};
  b.mean_regular = 0.25;
  b.mean_dropout = 0.5;
  b.threshold_summaries = {{100, 0.0, 0, 1, 0.0}, {10, 1.0, 1, 0, 1.0}};

  std::ostringstream out;
  write_alignment_summary_tsv({a, b}, out);
  CHECK(out.str() ==
        "language\tregular\tdropout\tbest>=100\tbest>=10\n"
        "aa\t0.5000\t0.6250\t0.7500\t0.8125\n"
        "bb\t0.2500\t0.5000\tn/a\t1.0000\n");

  AlignmentReport c;
  c.language = "cc";
  c.thresholds = {100};
  std::ostringstream sink;
  CHECK_THROWS_AS(write_alignment_summary_tsv({a, c}, sink), std::invalid_argument);
  CHECK_THROWS_AS(write_alignment_summary_tsv({}, sink), std::invalid_argument);
}

TEST_CASE("distribution rows are written most frequent first") {
  SegmentationDistribution dist = frozen_distribution();
  std::ostringstream out;
  write_distribution_jsonl(dist, out);
  CHECK(out.str() ==
        "{\"word\":\"abcde\",\"segmentation\":\"a ##bcde\",\"count\":150}\n"
        "{\"word\":\"abcde\",\"segmentation\":\"a ##b ##c ##d ##e\",\"count\":60}\n");
}

TEST_CASE("multi-token fraction counts word types split into several units") {
  const TokenizerModel m = fixtures::toy_model();
  const MultiTokenStats stats =
      multi_token_fraction(m, {"aab", "ab", "abab", "ba", "xa"});
  CHECK(stats.counted == 4);
  CHECK(stats.unknown == 1);
  CHECK(stats.fraction == Catch::Approx(0.5));

  CHECK_THROWS_AS(multi_token_fraction(m, {"xy", "qq"}), DataError);
}

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

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "subtok/sampling.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace subtok;

TEST_CASE("distribution counts add up to the number of draws") {
  const TokenizerModel m = fixtures::toy_model();
  const auto dist = sample_distribution(m, "abab", 0.5, 500, 1);
  REQUIRE(dist.has_value());
  std::uint64_t total = 0;
  for (const auto& [key, count] : dist->counts) total += count;
  CHECK(total == 500);
  CHECK(dist->total_samples == 500);
  CHECK(dist->word == "abab");
}

TEST_CASE("sampling the same word twice gives identical distributions") {
  const TokenizerModel m = fixtures::toy_model();
  const auto a = sample_distribution(m, "abab", 0.5, 800, 9);
  const auto b = sample_distribution(m, "abab", 0.5, 800, 9);
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(a->counts == b->counts);
}

TEST_CASE("per-draw seeding makes longer runs extensions of shorter ones") {
  // Draw i depends only on (seed, i), so the first 300 draws of an 800-draw
  // run are exactly the 300-draw run.
  const TokenizerModel m = fixtures::toy_model();
  const auto small = sample_distribution(m, "abab", 0.5, 300, 9);
  const auto large = sample_distribution(m, "abab", 0.5, 800, 9);
  for (const auto& [key, count] : small->counts) {
    CHECK(large->counts.at(key) >= count);
  }
}

TEST_CASE("zero dropout concentrates the distribution on one segmentation") {
  const TokenizerModel m = fixtures::toy_model();
  const auto dist = sample_distribution(m, "abab", 0.0, 100, 4);
  REQUIRE(dist.has_value());
  REQUIRE(dist->counts.size() == 1);
  CHECK(dist->counts.begin()->first == "abab");
  CHECK(dist->counts.begin()->second == 100);
}

TEST_CASE("words outside the alphabet are signalled, not sampled") {
  const TokenizerModel m = fixtures::toy_model();
  CHECK_FALSE(sample_distribution(m, "abq", 0.5, 10, 0).has_value());
}

TEST_CASE("invalid probabilities are rejected") {
  const TokenizerModel m = fixtures::toy_model();
  CHECK_THROWS_AS(sample_distribution(m, "ab", -0.5, 10, 0), ConfigError);
  CHECK_THROWS_AS(sample_distribution(m, "ab", 1.5, 10, 0), ConfigError);
}

TEST_CASE("sorted entries order by count, then key") {
  SegmentationDistribution dist;
  dist.word = "w";
  dist.total_samples = 10;
  dist.counts = {{"b", 3}, {"a", 3}, {"c", 4}};
  const auto sorted = dist.sorted();
  REQUIRE(sorted.size() == 3);
  CHECK(sorted[0].key == "c");
  CHECK(sorted[1].key == "a");
  CHECK(sorted[2].key == "b");
}

TEST_CASE("count filtering keeps entries at or above the threshold") {
  SegmentationDistribution dist;
  dist.word = "w";
  dist.total_samples = 215;
  dist.counts = {{"x", 150}, {"y", 60}, {"z", 5}};
  CHECK(filter_by_count(dist, 100).size() == 1);
  CHECK(filter_by_count(dist, 10).size() == 2);
  CHECK(filter_by_count(dist, 1).size() == 3);
  CHECK(filter_by_count(dist, 200).empty());
}

TEST_CASE("segmentation keys split back into their units") {
  CHECK(split_segmentation_key("a ##b ##ab") ==
        std::vector<std::string>{"a", "##b", "##ab"});
  CHECK(split_segmentation_key("abab") == std::vector<std::string>{"abab"});
  CHECK(segmentation_key({"a", "##b"}) == "a ##b");
}

TEST_CASE("empirical frequencies match exact enumeration within three sigma") {
  const TokenizerModel m = fixtures::toy_model();
  const double p = 0.5;
  const std::uint64_t n = 2000;
  const std::map<std::string, double> exact = oracle::exact_dropout_distribution(m, "abab", p);

  // hand-checked exact probabilities for the toy model
  CHECK(exact.at("abab") == 3.0 / 16.0);
  CHECK(exact.at("ab ##ab") == 3.0 / 16.0);
  CHECK(exact.at("ab ##a ##b") == 4.0 / 16.0);
  CHECK(exact.at("a ##b ##ab") == 2.0 / 16.0);
  CHECK(exact.at("a ##b ##a ##b") == 4.0 / 16.0);

  const auto dist = sample_distribution(m, "abab", p, n, 123);
  REQUIRE(dist.has_value());
  for (const auto& [key, prob] : exact) {
    const double sigma = std::sqrt(prob * (1.0 - prob) / static_cast<double>(n));
    const auto it = dist->counts.find(key);
    const double freq =
        it == dist->counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(n);
    INFO("segmentation " << key);
    CHECK(std::abs(freq - prob) <= 3.0 * sigma);
  }
  for (const auto& [key, count] : dist->counts) {
    INFO("sampled " << key);
    CHECK(exact.count(key) == 1);  // nothing outside the reachable set
  }
}

TEST_CASE("longer fixture words also match their exact distributions") {
  const std::vector<fixtures::WordEntry> inventory =
      fixtures::word_inventory(fixtures::language_a(), 150, 21);
  const std::vector<std::string> lines = fixtures::corpus_lines(inventory, 250, 22);
  const TokenizerModel m = fixtures::train_on_lines(lines, 260);

  int tested = 0;
  for (const fixtures::WordEntry& entry : inventory) {
    if (codepoint_count(entry.word) > 6) continue;
    if (++tested > 5) break;
    const auto exact = oracle::exact_dropout_distribution(m, entry.word, 0.5);
    const auto dist = sample_distribution(m, entry.word, 0.5, 2000, 77);
    REQUIRE(dist.has_value());
    for (const auto& [key, prob] : exact) {
      const double sigma = std::sqrt(prob * (1.0 - prob) / 2000.0);
      const auto it = dist->counts.find(key);
      const double freq = it == dist->counts.end()
                              ? 0.0
                              : static_cast<double>(it->second) / 2000.0;
      INFO("word " << entry.word << " segmentation " << key);
      CHECK(std::abs(freq - prob) <= 3.0 * sigma + 1e-9);
    }
  }
  REQUIRE(tested > 0);
}

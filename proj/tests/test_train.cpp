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
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "subtok/encode.hpp"
#include "subtok/train.hpp"
#include "support/fixtures.hpp"

using namespace subtok;

namespace {

TokenizerModel train_text(const std::string& text, int vocab_size) {
  std::istringstream in(text);
  TrainConfig config;
  config.vocab_size = vocab_size;
  return train_bpe(in, config);
}

std::vector<std::pair<std::string, std::string>> merge_pairs(const TokenizerModel& m) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const MergeRule& r : m.merges()) out.emplace_back(r.left, r.right);
  return out;
}

}  // namespace

TEST_CASE("repeated word learns its merges in frequency order") {
  const TokenizerModel m = train_text("abab abab abab\n", 13);
  CHECK(merge_pairs(m) ==
        std::vector<std::pair<std::string, std::string>>{{"a", "b"}, {"ab", "ab"}});
  // the merges file spells the right sides with the continuation prefix
  const std::filesystem::path path =
      std::filesystem::temp_directory_path() / "subtok_train_merges.txt";
  write_merges_file(m, path);
  std::ifstream back(path, std::ios::binary);
  const std::string all((std::istreambuf_iterator<char>(back)), std::istreambuf_iterator<char>());
  CHECK(all == "#version: 1\na ##b\nab ##ab\n");
}

TEST_CASE("single-character words produce no merges") {
  const TokenizerModel m = train_text("a b c a b c\n", 100);
  CHECK(m.merges().empty());
  CHECK(m.vocab_size() == 5 + 6);  // specials plus both forms of a, b, c
}

TEST_CASE("pairs below two occurrences are never merged") {
  const TokenizerModel m = train_text("xy\n", 100);
  CHECK(m.merges().empty());
}

TEST_CASE("equal counts break ties toward the smaller surface pair") {
  // (x,y) and (z,w) both occur twice; lexicographic order decides.
  const TokenizerModel m = train_text("xy xy zw zw\n", 100);
  REQUIRE(m.merges().size() == 2);
  CHECK(m.merges()[0].left == "x");
  CHECK(m.merges()[0].right == "y");
  CHECK(m.merges()[1].left == "z");
  CHECK(m.merges()[1].right == "w");
}

TEST_CASE("counts weight by word frequency") {
  // (a,a) appears in one word type of frequency 3, (b,b) in one of 2.
  const TokenizerModel m = train_text("aa bb aa bb aa\n", 100);
  REQUIRE_FALSE(m.merges().empty());
  CHECK(m.merges()[0].left == "a");
  CHECK(m.merges()[0].right == "a");
}

TEST_CASE("pair counting includes overlapping positions and replacement is leftmost greedy") {
  // "aaa": (a,a) counts twice per occurrence; after the merge the word is
  // [aa, a], so (aa, a) is learnable next.
  const TokenizerModel m = train_text("aaa aaa aaa\n", 100);
  REQUIRE(m.merges().size() >= 2);
  CHECK(m.merges()[0].left == "a");
  CHECK(m.merges()[0].right == "a");
  CHECK(m.merges()[1].left == "aa");
  CHECK(m.merges()[1].right == "a");
  CHECK(encode_deterministic(m, "aaa").units == std::vector<std::string>{"aaa"});
}

TEST_CASE("vocabulary budget caps how many merges fit") {
  // 5 specials + both forms of a and b = 9 tokens. Each merge adds both
  // forms of its output, so one merge fits at 11 and the second needs 13.
  CHECK(train_text("abab abab abab\n", 9).merges().empty());
  CHECK(train_text("abab abab abab\n", 11).merges().size() == 1);
  CHECK(train_text("abab abab abab\n", 12).merges().size() == 1);
  CHECK(train_text("abab abab abab\n", 13).merges().size() == 2);
}

TEST_CASE("a vocab size that cannot hold the alphabet is a config error") {
  CHECK_THROWS_AS(train_text("abc\n", 8), ConfigError);
}

TEST_CASE("an empty corpus is a data error") {
  CHECK_THROWS_AS(train_text("", 100), DataError);
  CHECK_THROWS_AS(train_text("   \n\t\n", 100), DataError);
}

TEST_CASE("training normalizes text first") {
  const TokenizerModel upper = train_text("ABAB ABAB ABAB\n", 13);
  const TokenizerModel lower = train_text("abab abab abab\n", 13);
  CHECK(upper.vocab() == lower.vocab());
  CHECK(merge_pairs(upper) == merge_pairs(lower));
}

TEST_CASE("line order does not affect the result") {
  const TokenizerModel a = train_text("dog cat\ncat dog dog\nbird\n", 60);
  const TokenizerModel b = train_text("bird\ncat dog dog\ndog cat\n", 60);
  CHECK(a.vocab() == b.vocab());
  CHECK(merge_pairs(a) == merge_pairs(b));
}

TEST_CASE("trained models segment any in-alphabet word into vocabulary tokens") {
  const std::vector<fixtures::WordEntry> inventory =
      fixtures::word_inventory(fixtures::language_a(), 300, 5);
  const std::vector<std::string> lines = fixtures::corpus_lines(inventory, 400, 6);
  const TokenizerModel m = fixtures::train_on_lines(lines, 400);

  Rng rng(17);
  for (const double drop : {0.0, 0.3, 1.0}) {
    for (int i = 0; i < 200; ++i) {
      const std::string& word = inventory[rng.next_index(inventory.size())].word;
      Rng draw(derive_seed(99, static_cast<std::uint64_t>(i)));
      for (const std::string& unit : encode_word(m, word, drop, &draw)) {
        INFO("word " << word << " unit " << unit);
        REQUIRE(m.has_token(unit));
      }
    }
  }
}

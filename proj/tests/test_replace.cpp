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
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "subtok/align.hpp"
#include "subtok/replace.hpp"
#include "support/fixtures.hpp"

using namespace subtok;
namespace fs = std::filesystem;

namespace {

GoldLexicon toy_gold() {
  GoldLexicon gold;
  gold.entries["abab"] = {BoundarySet({1}), BoundarySet({2})};
  gold.entries["ab"] = {BoundarySet({1})};
  gold.entries["aab"] = {BoundarySet{}};
  return gold;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("subtok_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("the replacement table keeps only vocabulary-realizable analyses") {
  const TokenizerModel m = fixtures::toy_model();
  const ReplacementTable table = build_replacement_table(m, toy_gold());

  CHECK(table.words_total == 3);
  CHECK(table.words_eligible == 2);
  CHECK(table.analyses_total == 4);
  CHECK(table.analyses_eligible == 2);

  // "abab" split at 1 needs the token "##bab"; only the split at 2 survives.
  REQUIRE(table.find("abab") != nullptr);
  CHECK(*table.find("abab") ==
        std::vector<std::vector<std::string>>{{"ab", "##ab"}});
  REQUIRE(table.find("ab") != nullptr);
  CHECK(*table.find("ab") == std::vector<std::vector<std::string>>{{"a", "##b"}});
  // "aab" unsplit needs the token "aab", which is not in the vocabulary.
  CHECK(table.find("aab") == nullptr);
}

TEST_CASE("zero replacement probability reproduces deterministic encoding") {
  const TokenizerModel m = fixtures::toy_model();
  const ReplacementTable table = build_replacement_table(m, toy_gold());
  const std::string text = "abab ab ba abab aab";

  for (std::uint64_t seed : {0u, 1u, 77u}) {
    const InjectionResult result = inject_replacements(m, table, text, 0.0, seed);
    CHECK(result.segmentation == encode_deterministic(m, text));
    CHECK(result.eligible_occurrences == 3);
    CHECK(result.replaced_occurrences == 0);
  }
}

TEST_CASE("replacement probability one swaps every table occurrence") {
  const TokenizerModel m = fixtures::toy_model();
  const ReplacementTable table = build_replacement_table(m, toy_gold());
  const std::string text = "abab ab abab aab ba";

  const InjectionResult result = inject_replacements(m, table, text, 1.0, 5);
  CHECK(result.eligible_occurrences == 3);
  CHECK(result.replaced_occurrences == 3);

  const Segmentation& seg = result.segmentation;
  // Occurrences of "abab" (words 0 and 2) carry the table candidate, not the
  // deterministic single token.
  for (int w : {0, 2}) {
    CHECK(seg.word_units(w) == std::vector<std::string>{"ab", "##ab"});
  }
  CHECK(seg.word_units(1) == std::vector<std::string>{"a", "##b"});
  // Non-table words fall back to the deterministic segmentation.
  CHECK(seg.word_units(3) == encode_word(m, "aab"));
  CHECK(seg.word_units(4) == encode_word(m, "ba"));
}

TEST_CASE("candidates are chosen uniformly when a word has several") {
  const TokenizerModel m = fixtures::toy_model();
  GoldLexicon gold;
  gold.entries["abab"] = {BoundarySet({2}), BoundarySet({1, 2, 3})};
  const ReplacementTable table = build_replacement_table(m, gold);
  REQUIRE(table.find("abab") != nullptr);
  REQUIRE(table.find("abab")->size() == 2);

  std::string text;
  const std::size_t occurrences = 400;
  for (std::size_t i = 0; i < occurrences; ++i) {
    if (i > 0) text += ' ';
    text += "abab";
  }

  const InjectionResult result = inject_replacements(m, table, text, 1.0, 21);
  CHECK(result.eligible_occurrences == occurrences);
  CHECK(result.replaced_occurrences == occurrences);

  std::size_t coarse = 0, fine = 0;
  for (std::size_t w = 0; w < occurrences; ++w) {
    const std::vector<std::string> units = result.segmentation.word_units(static_cast<int>(w));
    if (units == std::vector<std::string>{"ab", "##ab"}) {
      ++coarse;
    } else if (units == std::vector<std::string>{"a", "##b", "##a", "##b"}) {
      ++fine;
    } else {
      FAIL("unexpected units for an occurrence that must use a table candidate");
    }
  }
  CHECK(coarse + fine == occurrences);
  // Each candidate has probability one half; 4 sigma ~ 40 of 400.
  CHECK(coarse > 140);
  CHECK(fine > 140);
}

TEST_CASE("intermediate replacement rates hit the expected share of occurrences") {
  const TokenizerModel m = fixtures::toy_model();
  const ReplacementTable table = build_replacement_table(m, toy_gold());

  std::string text;
  const std::size_t occurrences = 1000;
  for (std::size_t i = 0; i < occurrences; ++i) {
    if (i > 0) text += ' ';
    text += (i % 2 == 0) ? "abab" : "ab";
  }

  const InjectionResult result = inject_replacements(m, table, text, 0.25, 3);
  CHECK(result.eligible_occurrences == occurrences);
  // Binomial(1000, 0.25): about 4.4 sigma of slack on each side.
  CHECK(result.replaced_occurrences > 190);
  CHECK(result.replaced_occurrences < 310);
}

TEST_CASE("injection is deterministic in the seed") {
  const TokenizerModel m = fixtures::toy_model();
  const ReplacementTable table = build_replacement_table(m, toy_gold());
  const std::string text = "abab ab abab ab abab ab abab ab";

  const InjectionResult a = inject_replacements(m, table, text, 0.5, 11);
  const InjectionResult b = inject_replacements(m, table, text, 0.5, 11);
  CHECK(a.segmentation == b.segmentation);
  CHECK(a.replaced_occurrences == b.replaced_occurrences);

  bool differed = false;
  for (std::uint64_t seed = 0; seed < 16 && !differed; ++seed) {
    differed = !(inject_replacements(m, table, text, 0.5, seed).segmentation == a.segmentation);
  }
  CHECK(differed);
}

TEST_CASE("decoding an injected stream recovers the normalized text") {
  const TokenizerModel m = fixtures::toy_model();
  const ReplacementTable table = build_replacement_table(m, toy_gold());
  const std::string text = "ABAB  ab\tba abab aab ab";

  for (const double rate : {0.0, 0.25, 1.0}) {
    const InjectionResult result = inject_replacements(m, table, text, rate, 13);
    CHECK(decode(m, result.segmentation) == m.normalize_text(text));
  }
}

TEST_CASE("replaced units always realize a gold analysis") {
  const std::vector<fixtures::WordEntry> inventory =
      fixtures::word_inventory(fixtures::language_a(), 50, 19);
  std::vector<std::string> lines = fixtures::corpus_lines(inventory, 300, 23);
  const TokenizerModel m = fixtures::train_on_lines(lines, 140);
  GoldLexicon gold = fixtures::gold_of(inventory, "ata");
  restrict_to_alphabet(gold, m);
  const ReplacementTable table = build_replacement_table(m, gold);
  REQUIRE(table.words_eligible > 0);

  const InjectionResult result = inject_replacements(m, table, lines[0] + " " + lines[1], 1.0, 2);
  const Segmentation& seg = result.segmentation;
  std::uint64_t checked = 0;
  for (int w = 0; w < static_cast<int>(seg.word_count()); ++w) {
    const std::vector<std::string> units = seg.word_units(w);
    std::string word;
    for (const std::string& unit : units) word += std::string(m.surface_of(unit));
    const std::vector<std::vector<std::string>>* candidates = table.find(word);
    if (candidates == nullptr) continue;
    ++checked;
    const bool is_candidate =
        std::find(candidates->begin(), candidates->end(), units) != candidates->end();
    CHECK(is_candidate);
    // A candidate realizes a gold analysis exactly, so its score is perfect.
    CHECK(alignment_score(boundaries_of(m, units), gold.entries.at(word)) == 1.0);
  }
  CHECK(checked == result.replaced_occurrences);
}

TEST_CASE("unknown words pass through injection unchanged") {
  const TokenizerModel m = fixtures::toy_model();
  const ReplacementTable table = build_replacement_table(m, toy_gold());

  const InjectionResult result = inject_replacements(m, table, "abab xy ab", 1.0, 1);
  const Segmentation& seg = result.segmentation;
  CHECK(seg.word_units(1) == std::vector<std::string>{m.unk_token()});
  CHECK(seg.is_unknown[seg.word_units(0).size()]);
  CHECK(result.eligible_occurrences == 2);
}

TEST_CASE("replacement probabilities outside the unit interval are rejected") {
  const TokenizerModel m = fixtures::toy_model();
  const ReplacementTable table = build_replacement_table(m, toy_gold());
  CHECK_THROWS_AS(inject_replacements(m, table, "abab", -0.1, 0), ConfigError);
  CHECK_THROWS_AS(inject_replacements(m, table, "abab", 1.1, 0), ConfigError);
  CHECK_THROWS_AS(inject_replacements(m, table, "abab", std::nan(""), 0), ConfigError);
}

TEST_CASE("the table file round-trips its entries") {
  const TokenizerModel m = fixtures::toy_model();
  const ReplacementTable table = build_replacement_table(m, toy_gold());
  const fs::path dir = fresh_dir("replace_table");

  write_replacement_table_file(table, dir / "table.tsv");
  {
    std::ifstream in(dir / "table.tsv", std::ios::binary);
    std::string contents((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
    CHECK(contents == "ab\ta ##b\nabab\tab ##ab\n");
  }

  const ReplacementTable back = read_replacement_table_file(dir / "table.tsv");
  CHECK(back.entries == table.entries);

  std::ofstream bad(dir / "bad.tsv", std::ios::binary);
  bad << "word-without-units\n";
  bad.close();
  CHECK_THROWS_AS(read_replacement_table_file(dir / "bad.tsv"), DataError);
  CHECK_THROWS_AS(read_replacement_table_file(dir / "missing.tsv"), DataError);
}

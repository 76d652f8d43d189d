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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "subtok/encode.hpp"
#include "subtok/model.hpp"
#include "subtok/model_store.hpp"
#include "support/fixtures.hpp"

using namespace subtok;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("subtok_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("vocabulary layout puts specials first, then both forms of each unit") {
  const TokenizerModel m = fixtures::toy_model();
  const std::vector<std::string> expected = {"[PAD]", "[UNK]", "[CLS]",  "[SEP]",   "[MASK]",
                                             "a",     "##a",   "b",      "##b",     "ab",
                                             "##ab",  "abab",  "##abab"};
  CHECK(m.vocab() == expected);
  CHECK(m.vocab_size() == 13);
  CHECK(m.token_id("[PAD]") == 0);
  CHECK(m.token_id("##ab") == 10);
  CHECK(m.token_id("zzz") == -1);
  CHECK(m.has_token("abab"));
  CHECK(m.token(5) == "a");
  CHECK(m.unk_id() == 1);
  CHECK(m.unk_token() == "[UNK]");
}

TEST_CASE("merge ranks follow learning order and unknown pairs get -1") {
  const TokenizerModel m = fixtures::toy_model();
  CHECK(m.merge_rank("a", "b") == 0);
  CHECK(m.merge_rank("ab", "ab") == 1);
  CHECK(m.merge_rank("b", "a") == -1);
  CHECK(m.merge_rank("ab", "a") == -1);
}

TEST_CASE("marking and surface stripping are inverse on word-internal units") {
  const TokenizerModel m = fixtures::toy_model();
  CHECK(m.marked("ab", true) == "##ab");
  CHECK(m.marked("ab", false) == "ab");
  CHECK(m.surface_of("##ab") == "ab");
  CHECK(m.surface_of("ab") == "ab");
  CHECK(m.surface_of("[UNK]") == "[UNK]");
  // "##" alone is not a marked token, there is nothing after the prefix
  CHECK(m.surface_of("##") == "##");
}

TEST_CASE("alphabet membership is per codepoint") {
  const TokenizerModel m = fixtures::toy_model();
  CHECK(m.in_alphabet("a"));
  CHECK(m.in_alphabet("b"));
  CHECK_FALSE(m.in_alphabet("c"));
}

TEST_CASE("constructor rejects inconsistent inputs") {
  ModelConfig config;

  SECTION("unk token missing from specials") {
    config.special_tokens = {"[PAD]"};
    CHECK_THROWS_AS(TokenizerModel::from_merges(config, {"a"}, {}), ConfigError);
  }
  SECTION("duplicate merge pair") {
    CHECK_THROWS_AS(
        TokenizerModel::from_merges(config, {"a", "b"}, {{"a", "b"}, {"a", "b"}}),
        DataError);
  }
  SECTION("specials must lead the vocabulary") {
    std::vector<std::string> vocab = {"a", "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]", "##a"};
    CHECK_THROWS_AS(TokenizerModel(config, {"a"}, {}, vocab), DataError);
  }
  SECTION("merge output must be in the vocabulary in both forms") {
    std::vector<std::string> vocab = {"[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
                                      "a",     "##a",   "b",     "##b",   "ab"};
    CHECK_THROWS_AS(TokenizerModel(config, {"a", "b"}, {{"a", "b"}}, vocab), DataError);
  }
  SECTION("duplicate token") {
    std::vector<std::string> vocab = {"[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
                                      "a",     "##a",   "a"};
    CHECK_THROWS_AS(TokenizerModel(config, {"a"}, {}, vocab), DataError);
  }
}

TEST_CASE("vocab and merges files round-trip byte for byte") {
  const TokenizerModel m = fixtures::toy_model();
  const fs::path dir = fresh_dir("model_files");

  write_vocab_file(m, dir / "vocab.txt");
  write_merges_file(m, dir / "merges.txt");

  CHECK(slurp(dir / "vocab.txt") ==
        "[PAD]\n[UNK]\n[CLS]\n[SEP]\n[MASK]\na\n##a\nb\n##b\nab\n##ab\nabab\n##abab\n");
  CHECK(slurp(dir / "merges.txt") == "#version: 1\na ##b\nab ##ab\n");

  const std::vector<std::string> vocab = read_vocab_file(dir / "vocab.txt");
  CHECK(vocab == m.vocab());
  const std::vector<MergeRule> merges = read_merges_file(dir / "merges.txt", "##");
  REQUIRE(merges.size() == 2);
  CHECK(merges[0].left == "a");
  CHECK(merges[0].right == "b");
  CHECK(merges[1].left == "ab");
  CHECK(merges[1].right == "ab");
}

TEST_CASE("merges reader enforces the version line and the two-field shape") {
  const fs::path dir = fresh_dir("merges_bad");
  {
    std::ofstream out(dir / "noversion.txt");
    out << "a ##b\n";
  }
  CHECK_THROWS_AS(read_merges_file(dir / "noversion.txt", "##"), DataError);
  {
    std::ofstream out(dir / "threefields.txt");
    out << "#version: 1\na ##b extra\n";
  }
  CHECK_THROWS_AS(read_merges_file(dir / "threefields.txt", "##"), DataError);
  CHECK_THROWS_AS(read_merges_file(dir / "missing.txt", "##"), DataError);
}

TEST_CASE("a saved model loads back identically") {
  const std::vector<std::string> lines = {"the cat sat on the mat",
                                          "the hat of the cat",
                                          "matters of the art"};
  const TokenizerModel m = fixtures::train_on_lines(lines, 40);
  const fs::path dir = fresh_dir("model_store");

  save_model(m, dir);
  const TokenizerModel loaded = load_model(dir);

  CHECK(loaded.vocab() == m.vocab());
  CHECK(loaded.merges().size() == m.merges().size());
  CHECK(loaded.alphabet() == m.alphabet());
  CHECK(loaded.config().unk_token == m.config().unk_token);
  CHECK(loaded.config().continuation_prefix == m.config().continuation_prefix);
  CHECK(loaded.config().normalization.lowercase == m.config().normalization.lowercase);

  const std::string text = "the mat sat";
  CHECK(encode_deterministic(loaded, text).units == encode_deterministic(m, text).units);

  SECTION("model.json is required and validated") {
    fs::remove(dir / "model.json");
    CHECK_THROWS_AS(load_model(dir), DataError);
  }
}

TEST_CASE("loading rejects a different format version") {
  const fs::path dir = fresh_dir("model_version");
  save_model(fixtures::toy_model(), dir);
  {
    std::ofstream out(dir / "model.json");
    out << R"({"format_version": 99, "name": "bpe", "special_tokens": ["[UNK]"],)"
        << R"( "unk_token": "[UNK]", "continuation_prefix": "##", "lowercase": true})" << '\n';
  }
  CHECK_THROWS_AS(load_model(dir), DataError);
}

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

#include <stdexcept>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "subtok/boundary.hpp"
#include "support/fixtures.hpp"

using namespace subtok;

TEST_CASE("boundary sets sort and deduplicate their positions") {
  const BoundarySet set({5, 2, 5, 3});
  CHECK(set.positions() == std::vector<int>{2, 3, 5});
  CHECK(set.size() == 3);
  CHECK_FALSE(set.empty());
  CHECK(BoundarySet{}.empty());
  CHECK(BoundarySet({1, 2}) == BoundarySet({2, 1}));
}

TEST_CASE("intersection size counts shared positions") {
  CHECK(BoundarySet({1, 3, 5}).intersection_size(BoundarySet({3, 5, 7})) == 2);
  CHECK(BoundarySet({1}).intersection_size(BoundarySet({2})) == 0);
  CHECK(BoundarySet{}.intersection_size(BoundarySet({1})) == 0);
  CHECK(BoundarySet({1, 2, 3}).intersection_size(BoundarySet({1, 2, 3})) == 3);
}

TEST_CASE("unit lists convert to split positions in codepoints") {
  const TokenizerModel m = fixtures::toy_model();
  CHECK(boundaries_of(m, {"un", "##happi", "##ness"}) == BoundarySet({2, 7}));
  CHECK(boundaries_of(m, {"unhappiness"}) == BoundarySet{});
  CHECK(boundaries_of(m, {"a", "##b", "##a", "##b"}) == BoundarySet({1, 2, 3}));
}

TEST_CASE("continuation prefixes do not count toward positions") {
  const TokenizerModel m = fixtures::toy_model();
  // ü is one codepoint, two bytes
  CHECK(boundaries_of(m, {"t\xc3\xbc", "##ren"}) == BoundarySet({2}));
}

TEST_CASE("unit lists that do not form one word are rejected") {
  const TokenizerModel m = fixtures::toy_model();
  CHECK_THROWS_AS(boundaries_of(m, {}), std::invalid_argument);
  CHECK_THROWS_AS(boundaries_of(m, {"ab", "ab"}), std::invalid_argument);
  CHECK_THROWS_AS(boundaries_of(m, {"ab", "##a", "b"}), std::invalid_argument);
}

TEST_CASE("splitting a word at boundary positions yields the pieces") {
  CHECK(split_at("unhappiness", BoundarySet({2, 7})) ==
        std::vector<std::string>{"un", "happi", "ness"});
  CHECK(split_at("cat", BoundarySet{}) == std::vector<std::string>{"cat"});
  CHECK(split_at("t\xc3\xbcren", BoundarySet({2})) ==
        std::vector<std::string>{"t\xc3\xbc", "ren"});
}

TEST_CASE("split positions outside the word are rejected") {
  CHECK_THROWS_AS(split_at("cat", BoundarySet({3})), std::invalid_argument);
  CHECK_THROWS_AS(split_at("cat", BoundarySet({4})), std::invalid_argument);
}

TEST_CASE("split and boundary extraction are inverse") {
  const TokenizerModel m = fixtures::toy_model();
  const std::string word = "segmentation";
  for (const std::vector<int>& positions :
       {std::vector<int>{}, std::vector<int>{3}, std::vector<int>{3, 7}, std::vector<int>{1, 2, 11}}) {
    const BoundarySet set(positions);
    const std::vector<std::string> pieces = split_at(word, set);
    std::vector<std::string> units;
    for (std::size_t i = 0; i < pieces.size(); ++i) units.push_back(m.marked(pieces[i], i > 0));
    CHECK(boundaries_of(m, units) == set);
  }
}

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

#include "subtok/mixture.hpp"

using namespace subtok;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("subtok_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  out << contents;
  return path;
}

}  // namespace

TEST_CASE("byte sizes accept plain numbers and binary suffixes") {
  CHECK(parse_byte_size("0") == 0);
  CHECK(parse_byte_size("4096") == 4096);
  CHECK(parse_byte_size("100K") == 100 * 1024ull);
  CHECK(parse_byte_size("100k") == 100 * 1024ull);
  CHECK(parse_byte_size("10M") == 10 * 1024ull * 1024);
  CHECK(parse_byte_size("1G") == 1024ull * 1024 * 1024);
  CHECK(parse_byte_size("2KB") == 2048);
  CHECK(parse_byte_size("16B") == 16);
}

TEST_CASE("malformed byte sizes are a config error") {
  CHECK_THROWS_AS(parse_byte_size(""), ConfigError);
  CHECK_THROWS_AS(parse_byte_size("K"), ConfigError);
  CHECK_THROWS_AS(parse_byte_size("10T"), ConfigError);
  CHECK_THROWS_AS(parse_byte_size("ten"), ConfigError);
  CHECK_THROWS_AS(parse_byte_size("-5"), ConfigError);
  CHECK_THROWS_AS(parse_byte_size("1.5K"), ConfigError);
}

TEST_CASE("a file is cut at the last whole line inside its budget") {
  const fs::path dir = fresh_dir("mixture_cut");
  const fs::path file = write_file(dir / "a.txt", "aaaa\nbb\ncccc\n");

  // "aaaa\n" costs 5 and "bb\n" costs 3; budget 8 takes both, 7 only the first.
  std::ostringstream both;
  const MixtureManifest at8 = build_mixture({{file, 8}}, both);
  CHECK(both.str() == "aaaa\nbb\n");
  CHECK(at8.components.size() == 1);
  CHECK(at8.components[0].bytes == 8);
  CHECK(at8.components[0].lines == 2);
  CHECK(at8.total_bytes == 8);
  CHECK(at8.total_lines == 2);

  std::ostringstream first;
  const MixtureManifest at7 = build_mixture({{file, 7}}, first);
  CHECK(first.str() == "aaaa\n");
  CHECK(at7.components[0].bytes == 5);
  CHECK(at7.components[0].lines == 1);

  std::ostringstream none;
  const MixtureManifest at4 = build_mixture({{file, 4}}, none);
  CHECK(none.str().empty());
  CHECK(at4.components[0].bytes == 0);
  CHECK(at4.components[0].lines == 0);
}

TEST_CASE("components are concatenated in the order given") {
  const fs::path dir = fresh_dir("mixture_order");
  const fs::path a = write_file(dir / "a.txt", "one\ntwo\n");
  const fs::path b = write_file(dir / "b.txt", "three\n");

  std::ostringstream out;
  const MixtureManifest manifest = build_mixture({{b, 1024}, {a, 1024}}, out);
  CHECK(out.str() == "three\none\ntwo\n");
  REQUIRE(manifest.components.size() == 2);
  CHECK(manifest.components[0].file == b.string());
  CHECK(manifest.components[0].lines == 1);
  CHECK(manifest.components[1].file == a.string());
  CHECK(manifest.components[1].lines == 2);
  CHECK(manifest.total_lines == 3);
  CHECK(manifest.total_bytes == 14);
}

TEST_CASE("the same file may appear twice with separate budgets") {
  const fs::path dir = fresh_dir("mixture_twice");
  const fs::path a = write_file(dir / "a.txt", "xx\nyy\n");

  std::ostringstream out;
  const MixtureManifest manifest = build_mixture({{a, 3}, {a, 1024}}, out);
  CHECK(out.str() == "xx\nxx\nyy\n");
  CHECK(manifest.components[0].bytes == 3);
  CHECK(manifest.components[1].bytes == 6);
}

TEST_CASE("carriage returns are stripped and do not count toward the budget") {
  const fs::path dir = fresh_dir("mixture_crlf");
  const fs::path a = write_file(dir / "a.txt", "ab\r\ncd\r\n");

  std::ostringstream out;
  const MixtureManifest manifest = build_mixture({{a, 6}}, out);
  CHECK(out.str() == "ab\ncd\n");
  CHECK(manifest.components[0].bytes == 6);
  CHECK(manifest.components[0].lines == 2);
}

TEST_CASE("a missing component file is a data error") {
  const fs::path dir = fresh_dir("mixture_missing");
  std::ostringstream out;
  CHECK_THROWS_AS(build_mixture({{dir / "nope.txt", 1024}}, out), DataError);
}

TEST_CASE("a final line without a newline still costs one newline byte") {
  const fs::path dir = fresh_dir("mixture_tail");
  const fs::path a = write_file(dir / "a.txt", "ab\ncd");

  std::ostringstream out;
  const MixtureManifest manifest = build_mixture({{a, 1024}}, out);
  CHECK(out.str() == "ab\ncd\n");
  CHECK(manifest.components[0].bytes == 6);
  CHECK(manifest.components[0].lines == 2);
}

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

#include <filesystem>
#include <fstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "subtok/common.hpp"
#include "subtok/model.hpp"
#include "subtok/unicode.hpp"

namespace subtok {

inline constexpr int kModelFormatVersion = 1;

/// Writes vocab.txt, merges.txt and model.json into the directory, creating
/// it if needed. load_model reads the same layout back.
inline void save_model(const TokenizerModel& model, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_vocab_file(model, dir / "vocab.txt");
  write_merges_file(model, dir / "merges.txt");

  nlohmann::ordered_json meta;
  meta["format_version"] = kModelFormatVersion;
  meta["name"] = model.name();
  meta["special_tokens"] = model.config().special_tokens;
  meta["unk_token"] = model.config().unk_token;
  meta["continuation_prefix"] = model.config().continuation_prefix;
  meta["lowercase"] = model.config().normalization.lowercase;

  std::ofstream out(dir / "model.json", std::ios::binary);
  if (!out) throw DataError("cannot write " + (dir / "model.json").string());
  out << meta.dump(2) << '\n';
}

inline TokenizerModel load_model(const std::filesystem::path& dir) {
  const std::filesystem::path meta_path = dir / "model.json";
  std::ifstream meta_in(meta_path, std::ios::binary);
  if (!meta_in) throw DataError("cannot read " + meta_path.string());
  nlohmann::json meta;
  try {
    meta_in >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(meta_path.string() + ": " + e.what());
  }

  ModelConfig config;
  try {
    if (meta.at("format_version").get<int>() != kModelFormatVersion) {
      throw DataError(meta_path.string() + ": unsupported format_version");
    }
    config.name = meta.at("name").get<std::string>();
    config.special_tokens = meta.at("special_tokens").get<std::vector<std::string>>();
    config.unk_token = meta.at("unk_token").get<std::string>();
    config.continuation_prefix = meta.at("continuation_prefix").get<std::string>();
    config.normalization.lowercase = meta.at("lowercase").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(meta_path.string() + ": " + e.what());
  }

  std::vector<std::string> vocab = read_vocab_file(dir / "vocab.txt");
  std::vector<MergeRule> merges =
      read_merges_file(dir / "merges.txt", config.continuation_prefix);

  // The alphabet is recoverable from the vocabulary: every single-codepoint
  // surface of a non-special token is an alphabet character.
  const std::unordered_set<std::string> specials(config.special_tokens.begin(),
                                                 config.special_tokens.end());
  std::vector<std::string> alphabet;
  std::unordered_set<std::string> seen;
  for (const std::string& token : vocab) {
    if (specials.count(token)) continue;
    const std::string& p = config.continuation_prefix;
    std::string surface = token;
    if (!p.empty() && token.size() > p.size() && token.compare(0, p.size(), p) == 0) {
      surface = token.substr(p.size());
    }
    if (codepoint_count(surface) == 1 && seen.insert(surface).second) {
      alphabet.push_back(surface);
    }
  }
  std::sort(alphabet.begin(), alphabet.end());

  return TokenizerModel(std::move(config), std::move(alphabet), std::move(merges),
                        std::move(vocab));
}

}  // namespace subtok

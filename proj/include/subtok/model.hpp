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
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "subtok/common.hpp"
#include "subtok/normalize.hpp"

namespace subtok {

/// One learned merge, stored as surface forms (continuation prefixes
/// stripped). A rule applies wherever the two surfaces are adjacent within a
/// word, at word-initial and word-internal positions alike; the fused unit
/// inherits the left unit's position marking.
struct MergeRule {
  std::string left;
  std::string right;
  bool operator==(const MergeRule&) const = default;
};

struct ModelConfig {
  std::vector<std::string> special_tokens{"[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"};
  std::string unk_token = "[UNK]";
  std::string continuation_prefix = "##";
  NormalizeOptions normalization{};
  std::string name = "bpe";
};

/// Immutable after construction; safe for concurrent reads.
class TokenizerModel {
 public:
  /// `vocab` must hold the full token list in id order: special tokens
  /// first, then both marked forms of every alphabet character and merge
  /// output (the trainer and from_merges produce exactly this layout).
  TokenizerModel(ModelConfig config, std::vector<std::string> alphabet,
                 std::vector<MergeRule> merges, std::vector<std::string> vocab)
      : config_(std::move(config)),
        alphabet_list_(std::move(alphabet)),
        merges_(std::move(merges)),
        id_to_token_(std::move(vocab)) {
    validate_and_index();
  }

  /// Builds the canonical vocabulary implied by an alphabet and a merge
  /// list: specials, then per alphabet character (sorted) its initial and
  /// continued forms, then per merge its output's two forms.
  static TokenizerModel from_merges(ModelConfig config, std::vector<std::string> alphabet,
                                    std::vector<MergeRule> merges) {
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
    std::vector<std::string> vocab = config.special_tokens;
    std::unordered_set<std::string> seen(vocab.begin(), vocab.end());
    const auto add_forms = [&](const std::string& surface) {
      for (const std::string& form : {surface, config.continuation_prefix + surface}) {
        if (seen.insert(form).second) vocab.push_back(form);
      }
    };
    for (const std::string& c : alphabet) add_forms(c);
    for (const MergeRule& m : merges) add_forms(m.left + m.right);
    return TokenizerModel(std::move(config), std::move(alphabet), std::move(merges),
                          std::move(vocab));
  }

  int vocab_size() const { return static_cast<int>(id_to_token_.size()); }

  const std::vector<std::string>& vocab() const { return id_to_token_; }

  int token_id(std::string_view token) const {
    auto it = token_to_id_.find(token);
    return it == token_to_id_.end() ? -1 : it->second;
  }

  bool has_token(std::string_view token) const { return token_id(token) >= 0; }

  const std::string& token(int id) const { return id_to_token_.at(static_cast<std::size_t>(id)); }

  const std::string& unk_token() const { return config_.unk_token; }
  int unk_id() const { return unk_id_; }
  int special_count() const { return static_cast<int>(config_.special_tokens.size()); }

  const std::vector<MergeRule>& merges() const { return merges_; }

  /// Rank (priority; lower applies first) of the merge joining two surface
  /// forms, or -1 if no such merge exists.
  int merge_rank(std::string_view left_surface, std::string_view right_surface) const {
    auto outer = merge_rank_.find(left_surface);
    if (outer == merge_rank_.end()) return -1;
    auto inner = outer->second.find(right_surface);
    return inner == outer->second.end() ? -1 : inner->second;
  }

  bool in_alphabet(std::string_view codepoint) const {
    return alphabet_.find(codepoint) != alphabet_.end();
  }

  const std::vector<std::string>& alphabet() const { return alphabet_list_; }

  const std::string& continuation_prefix() const { return config_.continuation_prefix; }
  const ModelConfig& config() const { return config_; }
  const std::string& name() const { return config_.name; }

  std::string marked(std::string_view surface, bool continued) const {
    return continued ? config_.continuation_prefix + std::string(surface)
                     : std::string(surface);
  }

  /// Strips the continuation prefix, if any, from a token string.
  std::string_view surface_of(std::string_view token) const {
    const std::string& p = config_.continuation_prefix;
    if (!p.empty() && token.size() > p.size() && token.substr(0, p.size()) == p) {
      return token.substr(p.size());
    }
    return token;
  }

  std::string normalize_text(std::string_view text) const {
    return normalize(text, config_.normalization);
  }

 private:
  template <typename V>
  using StringMap = std::unordered_map<std::string, V, StringHash, std::equal_to<>>;

  void validate_and_index() {
    if (config_.special_tokens.empty()) {
      throw ConfigError("special token list must not be empty");
    }
    if (std::find(config_.special_tokens.begin(), config_.special_tokens.end(),
                  config_.unk_token) == config_.special_tokens.end()) {
      throw ConfigError("unk token '" + config_.unk_token + "' missing from special tokens");
    }
    if (id_to_token_.size() < config_.special_tokens.size()) {
      throw DataError("vocabulary smaller than its special token list");
    }
    for (std::size_t i = 0; i < config_.special_tokens.size(); ++i) {
      if (id_to_token_[i] != config_.special_tokens[i]) {
        throw DataError("special tokens must occupy the leading vocabulary ids");
      }
    }
    token_to_id_.reserve(id_to_token_.size());
    for (std::size_t i = 0; i < id_to_token_.size(); ++i) {
      if (id_to_token_[i].empty()) throw DataError("empty vocabulary token");
      if (!token_to_id_.emplace(id_to_token_[i], static_cast<int>(i)).second) {
        throw DataError("duplicate vocabulary token '" + id_to_token_[i] + "'");
      }
    }
    unk_id_ = token_id(config_.unk_token);

    for (const std::string& c : alphabet_list_) alphabet_.insert(c);

    merge_rank_.reserve(merges_.size());
    for (std::size_t r = 0; r < merges_.size(); ++r) {
      const MergeRule& m = merges_[r];
      if (m.left.empty() || m.right.empty()) throw DataError("merge with empty side");
      auto [it, fresh] = merge_rank_[m.left].emplace(m.right, static_cast<int>(r));
      if (!fresh) {
        throw DataError("merge pair (" + m.left + ", " + m.right + ") appears twice");
      }
      const std::string out = m.left + m.right;
      if (!has_token(out) || !has_token(config_.continuation_prefix + out)) {
        throw DataError("merge output '" + out + "' missing from vocabulary");
      }
    }
  }

  ModelConfig config_;
  std::vector<std::string> alphabet_list_;
  std::vector<MergeRule> merges_;
  std::vector<std::string> id_to_token_;
  StringMap<int> token_to_id_;
  StringMap<StringMap<int>> merge_rank_;
  std::unordered_set<std::string, StringHash, std::equal_to<>> alphabet_;
  int unk_id_ = -1;
};

// --- model files -----------------------------------------------------------
//
// vocab.txt : one token per line, id = 0-based line number, specials first.
// merges.txt: "#version: 1" then one merge per line, "LEFT RIGHT", the right
//             side written with the continuation prefix; line order = rank.
// Both round-trip bit-exactly.

inline constexpr std::string_view kMergesVersionLine = "#version: 1";

inline void write_vocab_file(const TokenizerModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (const std::string& token : model.vocab()) out << token << '\n';
}

inline void write_merges_file(const TokenizerModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << kMergesVersionLine << '\n';
  for (const MergeRule& m : model.merges()) {
    out << m.left << ' ' << model.continuation_prefix() << m.right << '\n';
  }
}

inline std::vector<std::string> read_vocab_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::vector<std::string> vocab;
  std::string line;
  while (std::getline(in, line)) vocab.push_back(line);
  return vocab;
}

inline std::vector<MergeRule> read_merges_file(const std::filesystem::path& path,
                                               std::string_view continuation_prefix) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kMergesVersionLine) {
    throw DataError(path.string() + ": expected version line '" +
                    std::string(kMergesVersionLine) + "'");
  }
  std::vector<MergeRule> merges;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::size_t sep = line.find(' ');
    if (sep == std::string::npos || sep == 0 || sep + 1 == line.size() ||
        line.find(' ', sep + 1) != std::string::npos) {
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": malformed merge line");
    }
    // The writer marks the right side with the continuation prefix; strip
    // exactly one occurrence so surfaces that themselves start with the
    // prefix survive a round trip.
    std::string_view right = std::string_view(line).substr(sep + 1);
    if (!continuation_prefix.empty()) {
      if (right.substr(0, continuation_prefix.size()) != continuation_prefix ||
          right.size() <= continuation_prefix.size()) {
        throw DataError(path.string() + ":" + std::to_string(lineno) +
                        ": right side must carry the continuation prefix");
      }
      right.remove_prefix(continuation_prefix.size());
    }
    merges.push_back({line.substr(0, sep), std::string(right)});
  }
  return merges;
}

}  // namespace subtok

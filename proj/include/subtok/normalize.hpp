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

#include <string>
#include <string_view>
#include <vector>

#include "subtok/unicode.hpp"

namespace subtok {

struct NormalizeOptions {
  bool lowercase = true;
};

/// Canonical text normalization applied before any training or encoding:
/// NFC, lowercase (when enabled), whitespace runs collapsed to single
/// spaces, leading/trailing whitespace removed. Idempotent.
inline std::string normalize(std::string_view text, const NormalizeOptions& opts = {}) {
  std::u32string cps = to_nfc(decode_utf8(text));
  if (opts.lowercase) {
    std::u32string lowered;
    lowered.reserve(cps.size());
    for (char32_t cp : cps) lowercase_into(cp, lowered);
    cps = std::move(lowered);
  }

  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char32_t cp : cps) {
    if (is_unicode_space(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    append_utf8(out, cp);
  }
  return out;
}

/// Splits normalized text into its space-separated words.
inline std::vector<std::string> split_words(std::string_view normalized) {
  std::vector<std::string> words;
  std::size_t start = 0;
  while (start < normalized.size()) {
    std::size_t end = normalized.find(' ', start);
    if (end == std::string_view::npos) end = normalized.size();
    if (end > start) words.emplace_back(normalized.substr(start, end - start));
    start = end + 1;
  }
  return words;
}

/// Splits a word into single-codepoint strings.
inline std::vector<std::string> split_codepoints(std::string_view word) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < word.size()) {
    const std::size_t begin = i;
    decode_utf8(word, i);
    out.emplace_back(word.substr(begin, i - begin));
  }
  return out;
}

}  // namespace subtok

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
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "subtok/common.hpp"
#include "subtok/unicode_data.hpp"

namespace subtok {

/// Decodes one UTF-8 sequence starting at `i`, advancing `i` past it.
/// Rejects truncated, overlong, surrogate, and out-of-range sequences.
inline char32_t decode_utf8(std::string_view s, std::size_t& i) {
  const auto bad = [&](const char* what) -> char32_t {
    throw EncodingError(std::string("invalid UTF-8 (") + what + ") at byte " +
                        std::to_string(i));
  };
  const unsigned char b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  if ((b0 & 0xe0) == 0xc0) {
    len = 2;
    cp = b0 & 0x1f;
  } else if ((b0 & 0xf0) == 0xe0) {
    len = 3;
    cp = b0 & 0x0f;
  } else if ((b0 & 0xf8) == 0xf0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return bad("bad lead byte");
  }
  if (i + len > s.size()) return bad("truncated sequence");
  for (int k = 1; k < len; ++k) {
    const unsigned char b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xc0) != 0x80) return bad("bad continuation byte");
    cp = (cp << 6) | (b & 0x3f);
  }
  static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len]) return bad("overlong encoding");
  if (cp >= 0xd800 && cp <= 0xdfff) return bad("surrogate");
  if (cp > 0x10ffff) return bad("out of range");
  i += len;
  return cp;
}

inline void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else {
    out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
}

inline std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) out.push_back(decode_utf8(s, i));
  return out;
}

inline std::string encode_utf8(const std::u32string& cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) append_utf8(out, cp);
  return out;
}

/// Number of codepoints in a valid UTF-8 string (continuation bytes skipped).
inline std::size_t codepoint_count(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xc0) != 0x80) ++n;
  }
  return n;
}

/// Unicode White_Space property.
inline bool is_unicode_space(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0a: case 0x0b: case 0x0c: case 0x0d:
    case 0x20: case 0x85: case 0xa0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202f: case 0x205f: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200a;
  }
}

namespace detail {

inline std::uint8_t combining_class(char32_t cp) {
  using unicode_data::kCombiningClass;
  const auto* end = std::end(kCombiningClass);
  const auto* it = std::lower_bound(
      std::begin(kCombiningClass), end, cp,
      [](const unicode_data::CccEntry& e, char32_t c) { return e.cp < c; });
  return (it != end && it->cp == cp) ? it->ccc : 0;
}

inline const unicode_data::DecompEntry* find_decomp(char32_t cp) {
  using unicode_data::kCanonicalDecomp;
  const auto* end = std::end(kCanonicalDecomp);
  const auto* it = std::lower_bound(
      std::begin(kCanonicalDecomp), end, cp,
      [](const unicode_data::DecompEntry& e, char32_t c) { return e.cp < c; });
  return (it != end && it->cp == cp) ? it : nullptr;
}

inline char32_t compose_pair(char32_t a, char32_t b) {
  using unicode_data::kComposition;
  const auto* end = std::end(kComposition);
  const auto* it = std::lower_bound(
      std::begin(kComposition), end, std::pair<char32_t, char32_t>{a, b},
      [](const unicode_data::ComposeEntry& e, const std::pair<char32_t, char32_t>& k) {
        return e.first != k.first ? e.first < k.first : e.second < k.second;
      });
  return (it != end && it->first == a && it->second == b) ? it->composed : 0;
}

inline void decompose_into(char32_t cp, std::u32string& out) {
  if (cp < unicode_data::kTableLimit) {
    if (const auto* d = find_decomp(cp)) {
      decompose_into(d->first, out);
      if (d->second) decompose_into(d->second, out);
      return;
    }
  }
  out.push_back(cp);
}

}  // namespace detail

/// Canonical composition (NFC) for codepoints below the generated table
/// limit; codepoints outside that range pass through untouched.
inline std::u32string to_nfc(const std::u32string& in) {
  std::u32string cps;
  cps.reserve(in.size());
  for (char32_t cp : in) detail::decompose_into(cp, cps);

  // Canonical ordering: stable sort of each nonzero-ccc run.
  for (std::size_t i = 1; i < cps.size(); ++i) {
    const std::uint8_t ccc = detail::combining_class(cps[i]);
    if (ccc == 0) continue;
    std::size_t j = i;
    while (j > 0 && detail::combining_class(cps[j - 1]) > ccc) {
      std::swap(cps[j - 1], cps[j]);
      --j;
    }
  }

  // Recomposition per UAX #15.
  std::u32string out;
  out.reserve(cps.size());
  std::ptrdiff_t starter = -1;
  std::uint8_t last_ccc = 0;
  for (char32_t cp : cps) {
    const std::uint8_t ccc = detail::combining_class(cp);
    if (starter >= 0 && (last_ccc < ccc || (last_ccc == 0 && ccc == 0))) {
      if (const char32_t composed = detail::compose_pair(out[starter], cp)) {
        out[starter] = composed;
        continue;
      }
    }
    if (ccc == 0) {
      starter = static_cast<std::ptrdiff_t>(out.size());
      last_ccc = 0;
    } else {
      last_ccc = ccc;
    }
    out.push_back(cp);
  }
  return out;
}

/// Full lowercase mapping (one codepoint may expand to several).
inline void lowercase_into(char32_t cp, std::u32string& out) {
  using unicode_data::kLowercase;
  if (cp < unicode_data::kTableLimit) {
    const auto* end = std::end(kLowercase);
    const auto* it = std::lower_bound(
        std::begin(kLowercase), end, cp,
        [](const unicode_data::LowerEntry& e, char32_t c) { return e.cp < c; });
    if (it != end && it->cp == cp) {
      for (std::uint8_t k = 0; k < it->len; ++k) out.push_back(it->to[k]);
      return;
    }
  }
  out.push_back(cp);
}

}  // namespace subtok

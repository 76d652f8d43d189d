#!/usr/bin/env python3
"""Regenerates include/subtok/unicode_data.hpp from Python's unicodedata.

Covers codepoints below TABLE_LIMIT: full lowercase mappings, canonical
decompositions, combining classes, and the canonical composition pairs that
NFC actually recomposes (composition exclusions fall out automatically).
Codepoints at or above the limit pass through normalization unchanged.
"""

import sys
import unicodedata

TABLE_LIMIT = 0x3000

HEADER = """\
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

// Generated by scripts/gen_unicode_tables.py (Unicode data via Python
// unicodedata, UCD version %(ucd)s). Do not edit by hand.

#pragma once

#include <cstdint>

namespace subtok::unicode_data {

inline constexpr char32_t kTableLimit = 0x%(limit)X;
"""


def lowercase_entries():
    out = []
    for cp in range(TABLE_LIMIT):
        ch = chr(cp)
        low = ch.lower()
        if low != ch:
            cps = [ord(c) for c in low]
            assert 1 <= len(cps) <= 3, hex(cp)
            out.append((cp, cps))
    return out


def canonical_decomp_entries():
    out = []
    for cp in range(TABLE_LIMIT):
        d = unicodedata.decomposition(chr(cp))
        if not d or d.startswith("<"):
            continue  # no decomposition, or compatibility-only
        parts = [int(p, 16) for p in d.split()]
        assert 1 <= len(parts) <= 2, hex(cp)
        a = parts[0]
        b = parts[1] if len(parts) == 2 else 0
        out.append((cp, a, b))
    return out


def combining_class_entries():
    out = []
    for cp in range(TABLE_LIMIT):
        ccc = unicodedata.combining(chr(cp))
        if ccc:
            out.append((cp, ccc))
    return out


def composition_entries(decomps):
    out = []
    for cp, a, b in decomps:
        if b == 0:
            continue  # singleton decompositions never recompose
        pair = chr(a) + chr(b)
        if unicodedata.normalize("NFC", pair) == chr(cp):
            out.append((a, b, cp))
    out.sort()
    return out


def main():
    lower = lowercase_entries()
    decomp = canonical_decomp_entries()
    ccc = combining_class_entries()
    comp = composition_entries(decomp)

    w = sys.stdout.write
    w(HEADER % {"ucd": unicodedata.unidata_version, "limit": TABLE_LIMIT})

    w("\nstruct LowerEntry {\n  char32_t cp;\n  char32_t to[3];\n  std::uint8_t len;\n};\n")
    w("\n// Full lowercase mappings, sorted by codepoint.\n")
    w("inline constexpr LowerEntry kLowercase[] = {\n")
    for cp, cps in lower:
        padded = cps + [0] * (3 - len(cps))
        w("    {0x%X, {0x%X, 0x%X, 0x%X}, %d},\n" % (cp, *padded, len(cps)))
    w("};\n")

    w("\nstruct DecompEntry {\n  char32_t cp;\n  char32_t first;\n  char32_t second;  // 0 for singleton decompositions\n};\n")
    w("\n// Canonical decompositions, sorted by codepoint.\n")
    w("inline constexpr DecompEntry kCanonicalDecomp[] = {\n")
    for cp, a, b in decomp:
        w("    {0x%X, 0x%X, 0x%X},\n" % (cp, a, b))
    w("};\n")

    w("\nstruct CccEntry {\n  char32_t cp;\n  std::uint8_t ccc;\n};\n")
    w("\n// Nonzero canonical combining classes, sorted by codepoint.\n")
    w("inline constexpr CccEntry kCombiningClass[] = {\n")
    for cp, c in ccc:
        w("    {0x%X, %d},\n" % (cp, c))
    w("};\n")

    w("\nstruct ComposeEntry {\n  char32_t first;\n  char32_t second;\n  char32_t composed;\n};\n")
    w("\n// Primary composites, sorted by (first, second).\n")
    w("inline constexpr ComposeEntry kComposition[] = {\n")
    for a, b, cp in comp:
        w("    {0x%X, 0x%X, 0x%X},\n" % (a, b, cp))
    w("};\n")

    w("\n}  // namespace subtok::unicode_data\n")


if __name__ == "__main__":
    main()

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

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "subtok/common.hpp"

namespace subtok {

/// One corpus file and how many bytes of it may enter the mixture.
struct MixtureSpec {
  std::filesystem::path path;
  std::uint64_t budget_bytes = 0;
};

struct MixtureComponent {
  std::string file;
  std::uint64_t budget_bytes = 0;
  std::uint64_t bytes = 0;  // bytes actually taken, newlines included
  std::uint64_t lines = 0;
};

struct MixtureManifest {
  std::vector<MixtureComponent> components;
  std::uint64_t total_bytes = 0;
  std::uint64_t total_lines = 0;
};

/// Parses sizes like "4096", "100K", "10M" or "1G" (binary multipliers, an
/// optional trailing B is accepted).
inline std::uint64_t parse_byte_size(std::string_view text) {
  std::uint64_t value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr == begin) {
    throw ConfigError("cannot parse byte size '" + std::string(text) + "'");
  }
  std::string_view suffix(ptr, static_cast<std::size_t>(end - ptr));
  if (!suffix.empty() && (suffix.back() == 'B' || suffix.back() == 'b')) {
    suffix.remove_suffix(1);
  }
  std::uint64_t multiplier = 1;
  if (suffix == "K" || suffix == "k") {
    multiplier = 1024ull;
  } else if (suffix == "M" || suffix == "m") {
    multiplier = 1024ull * 1024;
  } else if (suffix == "G" || suffix == "g") {
    multiplier = 1024ull * 1024 * 1024;
  } else if (!suffix.empty()) {
    throw ConfigError("cannot parse byte size '" + std::string(text) + "'");
  }
  return value * multiplier;
}

/// Streams each component in order, feeding every taken line (without its
/// newline) to the sink. A file is cut at the last whole line that still fits
/// its byte budget, counting one newline byte per line. Missing files are
/// fatal.
template <typename LineFn>
MixtureManifest for_each_mixture_line(const std::vector<MixtureSpec>& specs, LineFn&& fn) {
  MixtureManifest manifest;
  for (const MixtureSpec& spec : specs) {
    std::ifstream in(spec.path, std::ios::binary);
    if (!in) throw DataError("cannot read corpus file " + spec.path.string());
    MixtureComponent component;
    component.file = spec.path.string();
    component.budget_bytes = spec.budget_bytes;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const std::uint64_t cost = line.size() + 1;
      if (component.bytes + cost > spec.budget_bytes) break;
      component.bytes += cost;
      ++component.lines;
      fn(line);
    }
    manifest.total_bytes += component.bytes;
    manifest.total_lines += component.lines;
    manifest.components.push_back(std::move(component));
  }
  return manifest;
}

/// Materializes the mixture as one stream of lines.
inline MixtureManifest build_mixture(const std::vector<MixtureSpec>& specs, std::ostream& out) {
  return for_each_mixture_line(specs, [&](const std::string& line) { out << line << '\n'; });
}

}  // namespace subtok

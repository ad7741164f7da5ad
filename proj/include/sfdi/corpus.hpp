// sfdi/corpus.hpp

// Copyright 2026  SFDI toolkit authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sfdi/errors.hpp"

namespace sfdi {

enum class SplitTag { Dev, Full, Custom };

inline const char* split_tag_name(SplitTag t) {
  switch (t) {
    case SplitTag::Dev: return "dev";
    case SplitTag::Full: return "full";
    case SplitTag::Custom: return "custom";
  }
  return "full";
}

/// One audio/label pair of a corpus.
struct CorpusEntry {
  std::filesystem::path audio_path;
  std::filesystem::path label_path;
  SplitTag split = SplitTag::Full;
};

/// FNV-1a, the stable 64-bit hash used for corpus digests and per-file
/// noise seeds (identical results regardless of platform or stdlib).
inline std::uint64_t fnv1a64(std::string_view data,
                             std::uint64_t seed = 0xcbf29ce484222325ull) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

/// Recursive walk pairing every *.wav (or *.WAV) with a sibling .phn file.
/// Audio files without a label sibling are skipped. Entries come back
/// sorted by audio path so downstream results never depend on directory
/// iteration order.
inline std::vector<CorpusEntry> scan_corpus_dir(const std::filesystem::path& root,
                                                SplitTag split = SplitTag::Full) {
  if (!std::filesystem::is_directory(root))
    throw Error("corpus root is not a directory: " + root.string());
  std::vector<CorpusEntry> entries;
  for (const auto& item : std::filesystem::recursive_directory_iterator(root)) {
    if (!item.is_regular_file()) continue;
    const std::filesystem::path& p = item.path();
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext != ".wav") continue;
    for (const char* label_ext : {".phn", ".PHN"}) {
      std::filesystem::path label = p;
      label.replace_extension(label_ext);
      if (std::filesystem::exists(label)) {
        entries.push_back({p, label, split});
        break;
      }
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const CorpusEntry& a, const CorpusEntry& b) {
              return a.audio_path.string() < b.audio_path.string();
            });
  return entries;
}

/// Manifest rows: "audio_path<TAB>label_path<TAB>split", split one of
/// dev/full/custom. Relative paths resolve against the manifest's
/// directory.
inline std::vector<CorpusEntry> read_manifest(const std::filesystem::path& manifest) {
  std::ifstream in(manifest, std::ios::binary);
  if (!in) throw Error("cannot open manifest " + manifest.string());
  const std::filesystem::path base = manifest.parent_path();

  std::vector<CorpusEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (cols.size() != 3)
      throw ParseError("expected 'audio<TAB>label<TAB>split'", line_no);

    CorpusEntry entry;
    entry.audio_path = std::filesystem::path(cols[0]);
    entry.label_path = std::filesystem::path(cols[1]);
    if (entry.audio_path.is_relative()) entry.audio_path = base / entry.audio_path;
    if (entry.label_path.is_relative()) entry.label_path = base / entry.label_path;

    std::string split = cols[2];
    std::transform(split.begin(), split.end(), split.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (split == "dev") entry.split = SplitTag::Dev;
    else if (split == "full") entry.split = SplitTag::Full;
    else if (split == "custom") entry.split = SplitTag::Custom;
    else throw ParseError("unknown split '" + cols[2] + "'", line_no);
    entries.push_back(std::move(entry));
  }
  return entries;
}

/// Order-independent fingerprint of the corpus composition, embedded in
/// report metadata.
inline std::string corpus_digest(const std::vector<CorpusEntry>& entries) {
  std::vector<std::string> keys;
  keys.reserve(entries.size());
  for (const CorpusEntry& e : entries)
    keys.push_back(e.audio_path.string() + "\t" + e.label_path.string() + "\t" +
                   split_tag_name(e.split));
  std::sort(keys.begin(), keys.end());
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const std::string& k : keys) h = fnv1a64(k + "\n", h);
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

}  // namespace sfdi

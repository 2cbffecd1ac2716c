// Copyright 2026 The zharec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "zharec/errors.hpp"
#include "zharec/synth.hpp"

namespace zharec {

// Reads a `path,label` manifest (header required). Relative paths are kept
// as written; resolve_manifest_paths joins them onto the manifest's own
// directory.
inline std::vector<ManifestEntry> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("read_manifest: cannot open file: " + path);

  std::vector<ManifestEntry> entries;
  std::string line;
  bool first = true;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t comma = line.rfind(',');
    if (comma == std::string::npos) {
      throw ManifestError("read_manifest: " + path + ":" + std::to_string(line_no) +
                          ": expected \"path,label\"");
    }
    if (first) {
      first = false;
      if (line == "path,label") continue;  // header
    }
    ManifestEntry e{line.substr(0, comma), line.substr(comma + 1)};
    if (e.path.empty() || e.label.empty()) {
      throw ManifestError("read_manifest: " + path + ":" + std::to_string(line_no) +
                          ": empty path or label");
    }
    entries.push_back(std::move(e));
  }
  if (entries.empty()) throw ManifestError("read_manifest: " + path + ": no entries");
  return entries;
}

inline std::string resolve_manifest_path(const std::string& manifest_path,
                                         const std::string& entry_path) {
  const std::filesystem::path p(entry_path);
  if (p.is_absolute()) return entry_path;
  return (std::filesystem::path(manifest_path).parent_path() / p).string();
}

}  // namespace zharec

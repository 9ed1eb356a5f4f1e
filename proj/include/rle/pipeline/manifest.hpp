// Copyright 2026 The RLE Authors. All Rights Reserved.
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
#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rle/core/error.hpp"

namespace rle::pipeline {

namespace fs = std::filesystem;

enum class Modality { visible, infrared };

inline std::string_view to_string(Modality m) { return m == Modality::visible ? "visible" : "infrared"; }

inline std::optional<Modality> parse_modality(std::string_view text) {
  std::string s(text);
  std::ranges::transform(s, s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "visible" || s == "vis" || s == "rgb") return Modality::visible;
  if (s == "infrared" || s == "ir" || s == "nir") return Modality::infrared;
  return std::nullopt;
}

/// One input image. `path` is relative to the input set's base directory
/// unless absolute. An unset modality is inferred from the decoded channels.
struct ManifestRecord {
  fs::path path;
  std::optional<Modality> modality;
  std::string identifier;
};

struct InputSet {
  fs::path base;
  std::vector<ManifestRecord> records;

  fs::path resolve(const ManifestRecord& r) const { return r.path.is_absolute() ? r.path : base / r.path; }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

// Comma-separated fields with optional double-quoting ("" escapes a quote).
inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(trim(cur));
  return fields;
}

}  // namespace detail

/// Reads a manifest with header `path,modality,identifier`. Relative paths
/// resolve against the manifest's directory.
inline InputSet read_manifest(const fs::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw IoError("cannot open manifest " + manifest.string());
  InputSet set{manifest.parent_path(), {}};
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    auto fields = detail::split_csv_line(line);
    const std::string where = manifest.string() + ":" + std::to_string(line_no);
    if (!header_seen) {
      for (auto& f : fields) std::ranges::transform(f, f.begin(), [](unsigned char c) { return std::tolower(c); });
      if (fields != std::vector<std::string>{"path", "modality", "identifier"}) {
        throw ParseError(where + ": header must be 'path,modality,identifier'");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 3) throw ParseError(where + ": expected 3 fields, got " + std::to_string(fields.size()));
    if (fields[0].empty()) throw ParseError(where + ": empty path");
    const auto modality = parse_modality(fields[1]);
    if (!modality) throw ParseError(where + ": unknown modality '" + fields[1] + "'");
    if (!seen.insert(fields[0]).second) throw ParseError(where + ": duplicate path '" + fields[0] + "'");
    set.records.push_back({fs::path(fields[0]), modality, fields[2].empty() ? fields[0] : fields[2]});
  }
  if (!header_seen) throw ParseError(manifest.string() + ": missing header row");
  return set;
}

inline bool has_image_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::ranges::transform(ext, ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

/// Every PNG/JPEG under `dir`, in lexicographic order of relative path. The
/// relative path doubles as the identifier.
inline InputSet scan_directory(const fs::path& dir) {
  InputSet set{dir, {}};
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file() || !has_image_extension(entry.path())) continue;
    const fs::path rel = fs::relative(entry.path(), dir);
    set.records.push_back({rel, std::nullopt, rel.generic_string()});
  }
  std::ranges::sort(set.records, {}, [](const ManifestRecord& r) { return r.path.generic_string(); });
  return set;
}

/// Writes records in the format read_manifest() accepts.
inline void write_manifest(const fs::path& manifest, const std::vector<ManifestRecord>& records) {
  std::ofstream out(manifest, std::ios::trunc);
  if (!out) throw IoError("cannot write manifest " + manifest.string());
  auto field = [](const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string q = "\"";
    for (const char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  out << "path,modality,identifier\n";
  for (const auto& r : records) {
    out << field(r.path.generic_string()) << ',' << to_string(r.modality.value_or(Modality::visible)) << ','
        << field(r.identifier) << '\n';
  }
}

/// A directory is scanned; anything else is read as a manifest.
inline InputSet collect_inputs(const fs::path& input) {
  if (!fs::exists(input)) throw IoError("input " + input.string() + " does not exist");
  InputSet set = fs::is_directory(input) ? scan_directory(input) : read_manifest(input);
  if (set.records.empty()) throw Error("no input images found in " + input.string());
  return set;
}

}  // namespace rle::pipeline

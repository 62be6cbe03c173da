#pragma once

// Labeled image manifests: CSV with header `path,label,dataset`; paths are
// relative to the image directory.

#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "glaucad/features.hpp"
#include "glaucad/image_io.hpp"

namespace glaucad {

struct ManifestEntry {
  std::string path;  ///< as written in the manifest
  int label = 0;     ///< 1 = glaucoma
  std::string dataset;
  std::filesystem::path resolved;

  /// Record id: the manifest path without extension.
  std::string id() const { return std::filesystem::path(path).replace_extension().generic_string(); }
};

struct DatasetManifest {
  std::vector<ManifestEntry> entries;
  std::size_t normal = 0, glaucoma = 0;
};

inline DatasetManifest parse_manifest(std::istream& in, const std::filesystem::path& dir, bool check_images = true) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("manifest: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "path,label,dataset") throw InputError("manifest: header must be 'path,label,dataset'");
  DatasetManifest m;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = "manifest row " + std::to_string(row);
    const auto f = split_csv(line);
    if (f.size() != 3) throw InputError(where + ": expected 3 fields");
    ManifestEntry e;
    e.path = std::string(f[0]);
    e.dataset = std::string(f[2]);
    try {
      e.label = parse_label(f[1]);
    } catch (const InputError& err) {
      throw InputError(where + ": " + err.what());
    }
    e.resolved = dir / e.path;
    if (check_images) {
      if (!std::filesystem::exists(e.resolved)) throw InputError(where + ": missing file " + e.resolved.string());
      try {
        (void)read_png(e.resolved);
      } catch (const InputError& err) {
        throw InputError(where + ": " + err.what());
      }
    }
    ++(e.label == 1 ? m.glaucoma : m.normal);
    m.entries.push_back(std::move(e));
  }
  std::map<std::string, std::size_t> seen;
  for (const auto& e : m.entries)
    if (++seen[e.id()] > 1) throw InputError("manifest: duplicate id " + e.id());
  return m;
}

inline DatasetManifest ingest(const std::filesystem::path& dir, const std::filesystem::path& manifest_path,
                              bool check_images = true) {
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) throw InputError("cannot open manifest " + manifest_path.string());
  return parse_manifest(in, dir, check_images);
}

inline void write_manifest(std::ostream& out, const std::vector<ManifestEntry>& entries) {
  out << "path,label,dataset\n";
  for (const auto& e : entries) out << e.path << ',' << label_name(e.label) << ',' << e.dataset << '\n';
}

}  // namespace glaucad

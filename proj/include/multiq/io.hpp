// File formats: profile CSVs, dataset manifests, feature and scatter tables.
// Output files are written atomically (temp file + rename) so partially
// written results never appear under the final name.

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "multiq/entropy.hpp"
#include "multiq/profile.hpp"

namespace multiq {

struct ManifestEntry {
  std::string path;
  std::string label;
};

// Manifest rows are `path,label`; relative paths resolve against the manifest
// file's directory. Blank lines, '#' comments, and a literal `path,label`
// header are skipped.
inline std::vector<ManifestEntry> load_manifest(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw std::runtime_error("cannot open manifest: " + manifest_path);
  const std::filesystem::path base =
      std::filesystem::path(manifest_path).parent_path();

  std::vector<ManifestEntry> entries;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = detail::strip_line(raw);
    if (line.empty() || line[0] == '#' || line == "path,label") continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == line.size())
      throw std::runtime_error(manifest_path + ":" + std::to_string(lineno) +
                               ": expected 'path,label'");
    ManifestEntry e;
    std::filesystem::path p(line.substr(0, comma));
    e.path = p.is_absolute() ? p.string() : (base / p).string();
    e.label = line.substr(comma + 1);
    entries.push_back(std::move(e));
  }
  if (entries.empty())
    throw std::runtime_error(manifest_path + ": empty manifest");
  return entries;
}

inline std::vector<Profile> load_dataset(const std::string& manifest_path) {
  std::vector<Profile> profiles;
  for (const ManifestEntry& e : load_manifest(manifest_path))
    profiles.push_back(load_profile(e.path, e.label));
  return profiles;
}

inline void atomic_write_text(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + tmp);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

namespace detail {

// %.17g restores doubles exactly on reload; profile files round-trip bit for
// bit, which end-to-end determinism depends on.
inline std::string exact(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string compact(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace detail

inline std::string profile_csv(const Profile& p) {
  std::string out = "potential,amplitude\n";
  for (const Sample& s : p.samples) {
    out += detail::exact(s.potential);
    out += ',';
    out += detail::exact(s.amplitude);
    out += '\n';
  }
  return out;
}

// Writes one `<id>.csv` per profile plus `manifest.csv`; returns the manifest
// path. Profiles must carry labels and distinct ids.
inline std::string write_dataset(const std::vector<Profile>& profiles,
                                 const std::string& dir) {
  if (profiles.empty())
    throw std::invalid_argument("write_dataset: no profiles");
  std::filesystem::create_directories(dir);
  std::string manifest;
  for (const Profile& p : profiles) {
    if (p.id.empty() || p.label.empty())
      throw std::invalid_argument("write_dataset: profile missing id or label");
    const std::string name = p.id + ".csv";
    atomic_write_text((std::filesystem::path(dir) / name).string(), profile_csv(p));
    manifest += name + "," + p.label + "\n";
  }
  const std::string manifest_path =
      (std::filesystem::path(dir) / "manifest.csv").string();
  atomic_write_text(manifest_path, manifest);
  return manifest_path;
}

inline std::string features_csv(const std::vector<FeatureVector>& features,
                                const std::vector<std::string>& column_names) {
  std::string out = "profile_id,label";
  for (const std::string& name : column_names) out += "," + name;
  out += '\n';
  for (const FeatureVector& f : features) {
    if (f.values.size() != column_names.size())
      throw std::invalid_argument("features_csv: width mismatch for '" +
                                  f.profile_id + "'");
    out += f.profile_id + "," + f.label;
    for (double v : f.values) {
      out += ',';
      out += detail::compact(v);
    }
    out += '\n';
  }
  return out;
}

struct ScatterRow {
  std::string profile_id;
  std::string label;
  double pc1 = 0.0;
  double pc2 = 0.0;
};

inline std::string scatter_csv(const std::vector<ScatterRow>& rows) {
  std::string out = "profile_id,label,pc1,pc2\n";
  for (const ScatterRow& r : rows) {
    out += r.profile_id + "," + r.label + "," + detail::compact(r.pc1) + "," +
           detail::compact(r.pc2) + "\n";
  }
  return out;
}

}  // namespace multiq

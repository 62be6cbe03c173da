#pragma once

// The 55-element feature record and its CSV persistence.
//
// Order: 7 first-order, 4 GLCM, 5 HOC, 5 HOS (DWT level-2 sub-band
// averages), 6 LGS, 28 GSP (7 per direction 0, 45, 90, 135).

#include <algorithm>
#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "glaucad/graphfeat.hpp"
#include "glaucad/neural.hpp"
#include "glaucad/statfeat.hpp"

namespace glaucad {

inline constexpr std::size_t kFeatureCount = kStatFeatureCount + 6 + kGspFeatureCount;
static_assert(kFeatureCount == 55);

inline constexpr std::string_view kFeatureSchema = "# glaucad-features v1";

inline const std::array<std::string, kFeatureCount>& feature_names() {
  static const std::array<std::string, kFeatureCount> names = [] {
    std::array<std::string, kFeatureCount> n;
    const std::vector<std::string> fixed = {
        "mean", "standard_deviation", "entropy", "variance", "smoothness", "kurtosis", "skewness",
        "idm", "contrast", "energy", "homogeneity",
        "hoc_10", "hoc_50", "hoc_90", "hoc_130", "hoc_180",
        "entropy_hos", "mean_hos", "ent_dg1", "ent_dg2", "ent_dg3",
        "mean_lgs", "variance_lgs", "skewness_lgs", "kurtosis_lgs", "energy_lgs", "entropy_lgs"};
    std::ranges::copy(fixed, n.begin());
    std::size_t i = fixed.size();
    for (int d : kGspDirections)
      for (const char* stat : {"kurtosis", "skewness", "sd_mean", "q25_mean", "q50_mean", "q75_mean", "q100_mean"})
        n[i++] = std::string(stat) + "_" + std::to_string(d);
    return n;
  }();
  return names;
}

enum class Stage { Raw, Preprocessed, Enhanced };

inline std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::Raw: return "raw";
    case Stage::Preprocessed: return "preprocessed";
    case Stage::Enhanced: return "enhanced";
  }
  return "?";
}

inline Stage parse_stage(std::string_view s) {
  for (Stage st : {Stage::Raw, Stage::Preprocessed, Stage::Enhanced})
    if (to_string(st) == s) return st;
  throw InputError("unknown stage '" + std::string(s) + "'");
}

using FeatureVector = std::array<double, kFeatureCount>;

struct FeatureRecord {
  std::string id;
  int label = 0;  ///< 1 = glaucoma
  Stage stage = Stage::Enhanced;
  FeatureVector values{};
};

struct FeatureConfig {
  StatFeatureConfig stat{};
  GspConfig gsp{};
};

inline FeatureVector extract_features(const GrayImage& img, const FeatureConfig& cfg = {}) {
  if (img.empty()) throw InputError("empty input");
  FeatureVector v{};
  const auto st = statistical_features(img, cfg.stat);
  std::ranges::copy(st, v.begin());
  const LgsFeatures l = lgs_features(lgs_transform(img));
  const std::array<double, 6> lgs{l.mean, l.variance, l.skewness, l.kurtosis, l.energy, l.entropy};
  std::ranges::copy(lgs, v.begin() + kStatFeatureCount);
  const auto g = gsp_features(img, cfg.gsp);
  std::ranges::copy(g, v.begin() + kStatFeatureCount + 6);
  if (!std::ranges::all_of(v, [](double x) { return std::isfinite(x); }))
    throw NumericError("feature vector contains non-finite values");
  return v;
}

// ------------------------------------------------------------- CSV I/O

inline std::string format_double(double v) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

inline std::string_view label_name(int label) { return label == 1 ? "glaucoma" : "normal"; }

inline int parse_label(std::string_view s) {
  if (s == "glaucoma") return 1;
  if (s == "normal") return 0;
  throw InputError("unknown label '" + std::string(s) + "'");
}

/// Schema line, header, then one row per record sorted by id.
inline void write_features(std::ostream& out, std::vector<FeatureRecord> records) {
  std::ranges::sort(records, {}, &FeatureRecord::id);
  out << kFeatureSchema << '\n' << "id,label,stage";
  for (const auto& n : feature_names()) out << ',' << n;
  out << '\n';
  for (const auto& r : records) {
    out << r.id << ',' << label_name(r.label) << ',' << to_string(r.stage);
    for (double v : r.values) out << ',' << format_double(v);
    out << '\n';
  }
}

inline void write_features(const std::filesystem::path& path, std::vector<FeatureRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  write_features(out, std::move(records));
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> f;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    f.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return f;
}

inline std::vector<FeatureRecord> read_features(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kFeatureSchema)
    throw InputError("feature file: missing schema line '" + std::string(kFeatureSchema) + "'");
  if (!std::getline(in, line)) throw InputError("feature file: missing header");
  const auto header = split_csv(line);
  if (header.size() != 3 + kFeatureCount || header[0] != "id" || header[1] != "label" || header[2] != "stage")
    throw InputError("feature file: unexpected header");
  for (std::size_t i = 0; i < kFeatureCount; ++i)
    if (header[3 + i] != feature_names()[i])
      throw InputError("feature file: column " + std::to_string(3 + i) + " is '" + std::string(header[3 + i]) +
                       "', expected '" + feature_names()[i] + "'");
  std::vector<FeatureRecord> out;
  std::size_t row = 2;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 3 + kFeatureCount) throw InputError("feature file row " + std::to_string(row) + ": wrong field count");
    FeatureRecord r;
    r.id = std::string(f[0]);
    r.label = parse_label(f[1]);
    r.stage = parse_stage(f[2]);
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      const auto s = f[3 + i];
      const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), r.values[i]);
      if (ec != std::errc{} || p != s.data() + s.size() || !std::isfinite(r.values[i]))
        throw InputError("feature file row " + std::to_string(row) + ": bad value in column " + feature_names()[i]);
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<FeatureRecord> read_features(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return read_features(in);
}

inline Dataset to_dataset(const std::vector<FeatureRecord>& records) {
  Dataset d;
  for (const auto& r : records) d.push_back(std::vector<double>(r.values.begin(), r.values.end()), r.label);
  return d;
}

}  // namespace glaucad

#pragma once

// Flat key = value configuration. '#' starts a comment; unknown keys are
// rejected so typos never silently fall back to defaults.

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include "glaucad/enhance.hpp"
#include "glaucad/graphfeat.hpp"
#include "glaucad/neural.hpp"
#include "glaucad/preprocess.hpp"
#include "glaucad/statfeat.hpp"

namespace glaucad {

struct ExperimentConfig {
  TrainConfig train{};
  double train_fraction = 0.75;
  WaveletKind wavelet = WaveletKind::MexicanHat;
};

struct PipelineConfig {
  PreprocessConfig pre{};
  EnhanceConfig enh{};
  StatFeatureConfig stat{};
  GspConfig gsp{};
  ExperimentConfig experiment{};

  void validate() const {
    pre.validate();
    enh.validate();
    stat.glcm.validate();
    stat.hoc.validate();
    gsp.validate();
    experiment.train.validate();
    if (!(experiment.train_fraction > 0 && experiment.train_fraction < 1))
      throw InputError("train.fraction must lie in (0,1)");
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_double(std::string_view key, std::string_view v) {
  if (v == "inf") return std::numeric_limits<double>::infinity();
  double out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size() || std::isnan(out))
    throw InputError("config: " + std::string(key) + " expects a number, got '" + std::string(v) + "'");
  return out;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view v) {
  Int out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw InputError("config: " + std::string(key) + " expects an integer, got '" + std::string(v) + "'");
  return out;
}

inline bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "on") return true;
  if (v == "false" || v == "0" || v == "off") return false;
  throw InputError("config: " + std::string(key) + " expects true/false, got '" + std::string(v) + "'");
}

using Setter = std::function<void(PipelineConfig&, std::string_view key, std::string_view value)>;

inline const std::map<std::string, Setter, std::less<>>& config_setters() {
  static const std::map<std::string, Setter, std::less<>> setters = {
      {"pre.alpha", [](PipelineConfig& c, auto k, auto v) {
         if (v == "auto") c.pre.alpha.reset();
         else c.pre.alpha = parse_double(k, v);
       }},
      {"pre.delta", [](PipelineConfig& c, auto k, auto v) { c.pre.delta = parse_double(k, v); }},
      {"pre.theta", [](PipelineConfig& c, auto k, auto v) { c.pre.theta = parse_double(k, v); }},
      {"pre.quantiles", [](PipelineConfig& c, auto k, auto v) { c.pre.quantiles = parse_int<int>(k, v); }},
      {"enh.k", [](PipelineConfig& c, auto k, auto v) { c.enh.k = parse_double(k, v); }},
      {"enh.diff_max", [](PipelineConfig& c, auto k, auto v) { c.enh.diff_max = parse_double(k, v); }},
      {"enh.se0", [](PipelineConfig& c, auto, auto v) { c.enh.se0 = parse_se_shape(v); }},
      {"enh.t_cap", [](PipelineConfig& c, auto k, auto v) { c.enh.t_cap = parse_int<int>(k, v); }},
      {"enh.window", [](PipelineConfig& c, auto k, auto v) { c.enh.window = parse_int<int>(k, v); }},
      {"dtcwt.levels", [](PipelineConfig& c, auto k, auto v) { c.enh.dtcwt_levels = parse_int<int>(k, v); }},
      {"denoise.enabled", [](PipelineConfig& c, auto k, auto v) { c.enh.denoise.enabled = parse_bool(k, v); }},
      {"denoise.window", [](PipelineConfig& c, auto k, auto v) { c.enh.denoise.window = parse_int<int>(k, v); }},
      {"denoise.beta", [](PipelineConfig& c, auto k, auto v) { c.enh.denoise.beta = parse_double(k, v); }},
      {"denoise.pyramid_levels",
       [](PipelineConfig& c, auto k, auto v) { c.enh.denoise.contourlet.pyramid_levels = parse_int<int>(k, v); }},
      {"denoise.directions",
       [](PipelineConfig& c, auto k, auto v) { c.enh.denoise.contourlet.directions = parse_int<int>(k, v); }},
      {"glcm.levels", [](PipelineConfig& c, auto k, auto v) { c.stat.glcm.levels = parse_int<int>(k, v); }},
      {"hoc.max_lag", [](PipelineConfig& c, auto k, auto v) { c.stat.hoc.max_lag = parse_int<int>(k, v); }},
      {"gsp.grid", [](PipelineConfig& c, auto k, auto v) { c.gsp.grid = parse_int<int>(k, v); }},
      {"gsp.t_e", [](PipelineConfig& c, auto k, auto v) { c.gsp.t_e = parse_int<int>(k, v); }},
      {"train.epochs", [](PipelineConfig& c, auto k, auto v) { c.experiment.train.epochs = parse_int<int>(k, v); }},
      {"train.batch_size",
       [](PipelineConfig& c, auto k, auto v) { c.experiment.train.batch_size = parse_int<std::size_t>(k, v); }},
      {"train.lr", [](PipelineConfig& c, auto k, auto v) { c.experiment.train.learning_rate = parse_double(k, v); }},
      {"train.lambda", [](PipelineConfig& c, auto k, auto v) { c.experiment.train.lambda = parse_double(k, v); }},
      {"train.seed", [](PipelineConfig& c, auto k, auto v) { c.experiment.train.seed = parse_int<std::uint64_t>(k, v); }},
      {"train.fraction", [](PipelineConfig& c, auto k, auto v) { c.experiment.train_fraction = parse_double(k, v); }},
      {"train.wavelet", [](PipelineConfig& c, auto, auto v) { c.experiment.wavelet = parse_wavelet(v); }},
  };
  return setters;
}

}  // namespace detail

inline void set_config_value(PipelineConfig& cfg, std::string_view key, std::string_view value) {
  const auto& setters = detail::config_setters();
  const auto it = setters.find(key);
  if (it == setters.end()) throw InputError("config: unknown key '" + std::string(key) + "'");
  it->second(cfg, key, value);
}

inline PipelineConfig parse_config(std::string_view text, PipelineConfig cfg = {}) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw InputError("config line " + std::to_string(line_no) + ": expected key = value");
    set_config_value(cfg, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
  }
  cfg.validate();
  return cfg;
}

inline PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace glaucad

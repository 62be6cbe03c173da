#pragma once

// Versioned plain-text model files:
//
//   glaucad-model v1
//   kind wnn|mlp
//   activation <wavelet>        (wnn)
//   input_dim D
//   hidden H [H2 ...]
//   params N
//   <N values, one per line>
//   normalizer D
//   <D lines "mean scale">

#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <variant>

#include "glaucad/features.hpp"
#include "glaucad/neural.hpp"

namespace glaucad {

inline constexpr std::string_view kModelSchema = "glaucad-model v1";

using AnyModel = std::variant<WnnModel, MlpModel>;

struct SavedModel {
  AnyModel model;
  Normalizer normalizer;
};

inline void save_model(std::ostream& out, const SavedModel& m) {
  out << kModelSchema << '\n';
  const std::vector<double>* params = nullptr;
  std::size_t input_dim = 0;
  if (const auto* w = std::get_if<WnnModel>(&m.model)) {
    out << "kind wnn\nactivation " << to_string(w->kind()) << "\ninput_dim " << w->input_dim() << "\nhidden "
        << w->hidden() << '\n';
    params = &w->params();
    input_dim = w->input_dim();
  } else {
    const auto& p = std::get<MlpModel>(m.model);
    out << "kind mlp\ninput_dim " << p.input_dim() << "\nhidden";
    for (std::size_t h : p.hidden()) out << ' ' << h;
    out << '\n';
    params = &p.params();
    input_dim = p.input_dim();
  }
  out << "params " << params->size() << '\n';
  for (double v : *params) out << format_double(v) << '\n';
  if (m.normalizer.mean.size() != input_dim && !m.normalizer.mean.empty())
    throw InputError("save_model: normalizer dimension mismatch");
  out << "normalizer " << m.normalizer.mean.size() << '\n';
  for (std::size_t i = 0; i < m.normalizer.mean.size(); ++i)
    out << format_double(m.normalizer.mean[i]) << ' ' << format_double(m.normalizer.scale[i]) << '\n';
}

namespace detail {

inline std::string expect_key(std::istream& in, std::string_view key) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("model file: missing '" + std::string(key) + "'");
  if (line.rfind(std::string(key) + " ", 0) != 0 && line != key)
    throw InputError("model file: expected '" + std::string(key) + "', got '" + line + "'");
  return line.size() > key.size() ? line.substr(key.size() + 1) : std::string{};
}

inline double read_value(std::istream& in) {
  std::string tok;
  if (!(in >> tok)) throw InputError("model file: truncated");
  double v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) throw InputError("model file: bad number '" + tok + "'");
  return v;
}

}  // namespace detail

inline SavedModel load_model(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kModelSchema) throw InputError("model file: missing schema line");
  const std::string kind = detail::expect_key(in, "kind");
  SavedModel out;
  std::vector<double>* params = nullptr;
  if (kind == "wnn") {
    const WaveletKind act = parse_wavelet(detail::expect_key(in, "activation"));
    const auto dim = std::stoul(detail::expect_key(in, "input_dim"));
    const auto hidden = std::stoul(detail::expect_key(in, "hidden"));
    out.model = WnnModel(dim, hidden, act);
    params = &std::get<WnnModel>(out.model).params();
  } else if (kind == "mlp") {
    const auto dim = std::stoul(detail::expect_key(in, "input_dim"));
    std::istringstream hs(detail::expect_key(in, "hidden"));
    std::vector<std::size_t> hidden;
    for (std::size_t h; hs >> h;) hidden.push_back(h);
    out.model = MlpModel(dim, hidden);
    params = &std::get<MlpModel>(out.model).params();
  } else {
    throw InputError("model file: unknown kind '" + kind + "'");
  }
  const auto n = std::stoul(detail::expect_key(in, "params"));
  if (n != params->size()) throw InputError("model file: parameter count does not match the architecture");
  for (double& v : *params) v = detail::read_value(in);
  in >> std::ws;
  const auto d = std::stoul(detail::expect_key(in, "normalizer"));
  out.normalizer.mean.resize(d);
  out.normalizer.scale.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    out.normalizer.mean[i] = detail::read_value(in);
    out.normalizer.scale[i] = detail::read_value(in);
  }
  return out;
}

inline void save_model(const std::filesystem::path& path, const SavedModel& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  save_model(out, m);
}

inline SavedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return load_model(in);
}

}  // namespace glaucad

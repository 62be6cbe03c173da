#pragma once

// Experiment orchestration: per-image stages over a manifest, feature
// tables, WNN/MLP grid training and report files.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "glaucad/config.hpp"
#include "glaucad/dataset.hpp"
#include "glaucad/enhance.hpp"
#include "glaucad/features.hpp"
#include "glaucad/image_io.hpp"
#include "glaucad/model_io.hpp"
#include "glaucad/neural.hpp"
#include "glaucad/parallel.hpp"
#include "glaucad/preprocess.hpp"

namespace glaucad {

struct GridCell {
  std::size_t hidden_units;
  std::size_t batch_size;
};

/// (HU, BS) pairs of the reference grid.
inline const std::vector<GridCell>& preset_grid() {
  static const std::vector<GridCell> g{{5, 113}, {10, 56}, {15, 37}, {24, 23}};
  return g;
}

/// "HU:BS,HU:BS,..."
inline std::vector<GridCell> parse_grid(std::string_view spec) {
  if (spec == "preset") return preset_grid();
  std::vector<GridCell> out;
  for (std::string_view item : split_csv(spec)) {
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) throw InputError("grid cell '" + std::string(item) + "' must be HU:BS");
    out.push_back({detail::parse_int<std::size_t>("grid", item.substr(0, colon)),
                   detail::parse_int<std::size_t>("grid", item.substr(colon + 1))});
    if (out.back().hidden_units == 0 || out.back().batch_size == 0) throw InputError("grid values must be >= 1");
  }
  if (out.empty()) throw InputError("empty grid");
  return out;
}

inline FeatureConfig feature_config(const PipelineConfig& cfg) { return {cfg.stat, cfg.gsp}; }

// --------------------------------------------------------- per image

struct ImageStages {
  GrayImage original, preprocessed, enhanced;
  double alpha = 0;
  int t_final = 0;
};

inline ImageStages run_stages(const GrayImage& img, const PipelineConfig& cfg) {
  ImageStages s;
  s.original = img;
  const PreprocessResult pre = preprocess_with_alpha(img, cfg.pre);
  s.preprocessed = pre.image;
  s.alpha = pre.alpha;
  const EnhanceResult enh = enhance_image(s.preprocessed, cfg.enh);
  s.enhanced = enh.image;
  s.t_final = enh.t_final.front();
  return s;
}

// ----------------------------------------------------------- training

struct CellResult {
  std::string model;  ///< "wnn" or "mlp"
  GridCell cell;
  std::vector<EpochRecord> history;
  Metrics test;        ///< final-epoch test metrics
  int best_epoch = 0;  ///< first epoch with the minimum testing error
};

struct TrainingReport {
  std::vector<CellResult> cells;
  std::size_t train = 0, validation = 0, test = 0;
};

inline int first_min_epoch(const std::vector<EpochRecord>& h) {
  if (h.empty()) return 0;
  const auto it = std::ranges::min_element(h, {}, &EpochRecord::t_error);
  return it->epoch;
}

struct TrainedModels {
  TrainingReport report;
  std::vector<SavedModel> models;  ///< parallel to report.cells
};

/// Trains WNN and MLP at every grid cell on one stratified split of `data`.
inline TrainedModels train_grid(const Dataset& data, const std::vector<GridCell>& grid, const ExperimentConfig& cfg) {
  if (data.empty()) throw InputError("no training data");
  for (int label : {0, 1})
    if (std::ranges::count(data.y, label) < 2) throw InputError("each class needs at least 2 samples");
  const Split raw = stratified_split(data, cfg.train_fraction, cfg.train.seed);
  const Normalizer norm = Normalizer::fit(raw.train);
  const Split split{norm.apply(raw.train), norm.apply(raw.validation), norm.apply(raw.test)};

  TrainedModels out;
  out.report.train = split.train.size();
  out.report.validation = split.validation.size();
  out.report.test = split.test.size();
  const std::size_t jobs = grid.size() * 2;
  std::vector<CellResult> cells(jobs);
  std::vector<SavedModel> models(jobs);
  parallel_for(jobs, [&](std::size_t j) {
    const GridCell cell = grid[j / 2];
    TrainConfig tc = cfg.train;
    tc.batch_size = cell.batch_size;
    std::mt19937_64 init(cfg.train.seed * 1000003ULL + j);
    CellResult r;
    r.cell = cell;
    if (j % 2 == 0) {
      WnnModel m(data.dim(), cell.hidden_units, cfg.wavelet);
      m.initialize(init);
      auto t = train(std::move(m), split, tc);
      r.model = "wnn";
      r.history = std::move(t.history);
      r.test = evaluate(t.model, split.test);
      models[j] = {std::move(t.model), norm};
    } else {
      MlpModel m(data.dim(), {cell.hidden_units});
      m.initialize(init);
      auto t = train(std::move(m), split, tc);
      r.model = "mlp";
      r.history = std::move(t.history);
      r.test = evaluate(t.model, split.test);
      models[j] = {std::move(t.model), norm};
    }
    r.best_epoch = first_min_epoch(r.history);
    cells[j] = std::move(r);
  });
  out.report.cells = std::move(cells);
  out.models = std::move(models);
  return out;
}

inline double best_accuracy(const TrainingReport& r, std::string_view model) {
  double best = 0.0;
  for (const auto& c : r.cells)
    if (c.model == model) best = std::max(best, c.test.accuracy());
  return best;
}

// ------------------------------------------------------------ reports

/// Final-epoch validation/testing error per cell (misclassification % and loss).
inline void write_error_table(std::ostream& out, const TrainingReport& r) {
  out << "model,hu,bs,v_error,t_error,v_loss,t_loss,best_epoch\n";
  for (const auto& c : r.cells) {
    const EpochRecord& e = c.history.back();
    out << c.model << ',' << c.cell.hidden_units << ',' << c.cell.batch_size << ',' << format_double(e.v_error) << ','
        << format_double(e.t_error) << ',' << format_double(e.v_loss) << ',' << format_double(e.t_loss) << ','
        << c.best_epoch << '\n';
  }
}

/// Per-regime test metrics of the best cell of each model.
inline void write_metric_rows(std::ostream& out, const std::map<std::string, TrainingReport>& regimes) {
  out << "regime,model,hu,bs,accuracy,sensitivity,specificity,tp_rate,fn_rate,tn_rate,fp_rate\n";
  for (const auto& [regime, r] : regimes)
    for (const char* model : {"wnn", "mlp"}) {
      const CellResult* best = nullptr;
      for (const auto& c : r.cells)
        if (c.model == model && (!best || c.test.accuracy() > best->test.accuracy())) best = &c;
      if (!best) continue;
      const Metrics& m = best->test;
      out << regime << ',' << model << ',' << best->cell.hidden_units << ',' << best->cell.batch_size << ','
          << format_double(m.accuracy()) << ',' << format_double(m.sensitivity()) << ','
          << format_double(m.specificity()) << ',' << format_double(m.tp_rate()) << ',' << format_double(m.fn_rate())
          << ',' << format_double(m.tn_rate()) << ',' << format_double(m.fp_rate()) << '\n';
    }
}

struct HistogramBins {
  std::vector<double> edges;  ///< bins + 1
  std::vector<std::size_t> counts;
};

inline HistogramBins histogram_of(const std::vector<double>& values, std::size_t bins = 10) {
  HistogramBins h;
  if (values.empty()) return h;
  const auto [lo_it, hi_it] = std::ranges::minmax_element(values);
  double lo = *lo_it, hi = *hi_it;
  if (!(hi > lo)) hi = lo + 1e-9;
  for (std::size_t i = 0; i <= bins; ++i) h.edges.push_back(lo + (hi - lo) * static_cast<double>(i) / bins);
  h.counts.assign(bins, 0);
  for (double v : values)
    ++h.counts[std::min(bins - 1, static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins)))];
  return h;
}

inline void write_histogram_csv(std::ostream& out, const HistogramBins& h) {
  out << "bin_lo,bin_hi,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i)
    out << format_double(h.edges[i]) << ',' << format_double(h.edges[i + 1]) << ',' << h.counts[i] << '\n';
}

inline void write_histogram_svg(std::ostream& out, const HistogramBins& h, std::string_view title) {
  const int w = 480, hgt = 320, left = 50, bottom = 40, top = 30;
  const std::size_t peak = h.counts.empty() ? 1 : std::max<std::size_t>(1, std::ranges::max(h.counts));
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << hgt << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << w / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
  const double plot_w = w - left - 20, plot_h = hgt - bottom - top;
  const double bar_w = h.counts.empty() ? 0 : plot_w / static_cast<double>(h.counts.size());
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const double bh = plot_h * static_cast<double>(h.counts[i]) / static_cast<double>(peak);
    out << "<rect x=\"" << format_double(left + bar_w * static_cast<double>(i)) << "\" y=\""
        << format_double(top + plot_h - bh) << "\" width=\"" << format_double(bar_w - 1) << "\" height=\""
        << format_double(bh) << "\" fill=\"steelblue\"/>\n";
  }
  out << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
      << top + plot_h << "\" stroke=\"black\"/>\n";
  if (!h.edges.empty()) {
    out << "<text x=\"" << left << "\" y=\"" << hgt - 12 << "\" font-size=\"10\">" << format_double(h.edges.front())
        << "</text>\n"
        << "<text x=\"" << left + plot_w << "\" y=\"" << hgt - 12 << "\" font-size=\"10\" text-anchor=\"end\">"
        << format_double(h.edges.back()) << "</text>\n";
  }
  out << "<text x=\"12\" y=\"" << top + 10 << "\" font-size=\"10\">" << peak << "</text>\n</svg>\n";
}

inline nlohmann::ordered_json cell_json(const CellResult& c) {
  nlohmann::ordered_json j;
  j["model"] = c.model;
  j["hu"] = c.cell.hidden_units;
  j["bs"] = c.cell.batch_size;
  j["accuracy"] = c.test.accuracy();
  j["sensitivity"] = c.test.sensitivity();
  j["specificity"] = c.test.specificity();
  j["confusion"] = {{"tp", c.test.tp}, {"fp", c.test.fp}, {"tn", c.test.tn}, {"fn", c.test.fn}};
  j["best_epoch"] = c.best_epoch;
  auto& curve = j["epochs"] = nlohmann::ordered_json::array();
  for (const auto& e : c.history)
    curve.push_back({{"epoch", e.epoch}, {"train_loss", e.train_loss}, {"v_error", e.v_error}, {"t_error", e.t_error},
                     {"v_loss", e.v_loss}, {"t_loss", e.t_loss}});
  return j;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError("cannot open " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::filesystem::path& p, std::string_view text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InputError("cannot write " + p.string());
  out << text;
}

// -------------------------------------------------------- full runner

struct ExperimentSummary {
  std::map<std::string, TrainingReport> regimes;  ///< "before" / "after"
  std::vector<double> mse;                        ///< enhanced vs original, per image (manifest order sorted by id)
  std::vector<int> t_final;
};

/// Runs every stage on every manifest image, writes the feature tables, trains
/// the grid on both regimes and writes the report files into run_dir:
/// features_before.csv, features_after.csv, mse.csv, mse_hist.csv, mse_hist.svg,
/// table3.csv, table4.csv, report.json (timings go to timings.json).
inline ExperimentSummary run_experiment(const DatasetManifest& manifest, const PipelineConfig& cfg,
                                        const std::vector<GridCell>& grid, const std::filesystem::path& run_dir) {
  cfg.validate();
  if (manifest.normal < 2 || manifest.glaucoma < 2) throw InputError("each class needs at least 2 samples");
  std::filesystem::create_directories(run_dir);
  using Clock = std::chrono::steady_clock;
  std::map<std::string, double> timings;
  auto tic = Clock::now();
  auto lap = [&](const std::string& name) {
    const auto now = Clock::now();
    timings[name] = std::chrono::duration<double>(now - tic).count();
    tic = now;
  };

  std::vector<ManifestEntry> entries = manifest.entries;
  std::ranges::sort(entries, {}, [](const ManifestEntry& e) { return e.id(); });
  const std::size_t n = entries.size();
  std::vector<FeatureRecord> before(n), after(n);
  std::vector<double> mse_values(n);
  std::vector<int> t_final(n), labels(n);
  const FeatureConfig fc = feature_config(cfg);
  parallel_for(n, [&](std::size_t i) {
    const ImageStages s = run_stages(read_png(entries[i].resolved), cfg);
    before[i] = {entries[i].id(), entries[i].label, Stage::Preprocessed, extract_features(s.preprocessed, fc)};
    after[i] = {entries[i].id(), entries[i].label, Stage::Enhanced, extract_features(s.enhanced, fc)};
    mse_values[i] = mse(s.enhanced, s.original);
    t_final[i] = s.t_final;
  });
  lap("stages_and_features");

  write_features(run_dir / "features_before.csv", before);
  write_features(run_dir / "features_after.csv", after);
  {
    std::ofstream out(run_dir / "mse.csv", std::ios::binary);
    out << "id,label,mse,t_final\n";
    for (std::size_t i = 0; i < n; ++i)
      out << entries[i].id() << ',' << label_name(entries[i].label) << ',' << format_double(mse_values[i]) << ','
          << t_final[i] << '\n';
  }
  const HistogramBins hist = histogram_of(mse_values);
  {
    std::ofstream csv(run_dir / "mse_hist.csv", std::ios::binary);
    write_histogram_csv(csv, hist);
    std::ofstream svg(run_dir / "mse_hist.svg", std::ios::binary);
    write_histogram_svg(svg, hist, "MSE histogram (enhanced vs original)");
  }

  ExperimentSummary summary;
  summary.mse = mse_values;
  summary.t_final = t_final;
  TrainedModels tb = train_grid(to_dataset(before), grid, cfg.experiment);
  summary.regimes["before"] = tb.report;
  TrainedModels ta = train_grid(to_dataset(after), grid, cfg.experiment);
  summary.regimes["after"] = ta.report;
  lap("training");

  {
    std::ofstream out(run_dir / "table3.csv", std::ios::binary);
    write_error_table(out, summary.regimes.at("after"));
    std::ofstream t4(run_dir / "table4.csv", std::ios::binary);
    write_metric_rows(t4, summary.regimes);
  }
  // Best WNN of the enhanced regime.
  std::size_t best = 0;
  for (std::size_t j = 0; j < ta.report.cells.size(); ++j)
    if (ta.report.cells[j].model == "wnn" &&
        (ta.report.cells[best].model != "wnn" || ta.report.cells[j].test.accuracy() > ta.report.cells[best].test.accuracy()))
      best = j;
  save_model(run_dir / "model_wnn.txt", ta.models[best]);

  nlohmann::ordered_json report;
  report["images"] = n;
  report["normal"] = manifest.normal;
  report["glaucoma"] = manifest.glaucoma;
  report["seed"] = cfg.experiment.train.seed;
  report["split"] = {{"train", tb.report.train}, {"validation", tb.report.validation}, {"test", tb.report.test}};
  report["mse"] = {{"mean", stats::mean(mse_values)}, {"min", std::ranges::min(mse_values)},
                   {"max", std::ranges::max(mse_values)}};
  std::map<int, int> tdist;
  for (int t : t_final) ++tdist[t];
  auto& td = report["t_final"] = nlohmann::ordered_json::object();
  for (auto [t, c] : tdist) td[std::to_string(t)] = c;
  for (const auto& [regime, r] : summary.regimes) {
    report["regimes"][regime]["best_accuracy"] = {{"wnn", best_accuracy(r, "wnn")}, {"mlp", best_accuracy(r, "mlp")}};
    auto& cells = report["regimes"][regime]["cells"] = nlohmann::ordered_json::array();
    for (const auto& c : r.cells) cells.push_back(cell_json(c));
  }
  write_text(run_dir / "report.json", report.dump(2) + "\n");
  lap("reports");
  nlohmann::ordered_json tj(timings);
  write_text(run_dir / "timings.json", tj.dump(2) + "\n");
  return summary;
}

}  // namespace glaucad

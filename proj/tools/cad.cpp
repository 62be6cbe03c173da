#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "glaucad.hpp"

namespace fs = std::filesystem;
using namespace glaucad;

namespace {

PipelineConfig config_from(const std::string& path) {
  PipelineConfig cfg = path.empty() ? PipelineConfig{} : load_config(path);
  cfg.validate();
  return cfg;
}

/// PNG files under dir, as sorted paths relative to dir.
std::vector<fs::path> list_pngs(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".png") out.push_back(fs::relative(e.path(), dir));
  std::ranges::sort(out);
  if (out.empty()) throw InputError("no PNG images in " + dir.string());
  return out;
}

void copy_manifest(const fs::path& in, const fs::path& out) {
  if (fs::exists(in / "manifest.csv")) fs::copy_file(in / "manifest.csv", out / "manifest.csv", fs::copy_options::overwrite_existing);
}

enum class ImageStage { Preprocess, Enhance };

void run_image_stage(const fs::path& in, const fs::path& out, const PipelineConfig& cfg, ImageStage stage) {
  const auto files = list_pngs(in);
  parallel_for(files.size(), [&](std::size_t i) {
    const GrayImage img = read_png(in / files[i]);
    const fs::path dst = out / files[i];
    fs::create_directories(dst.parent_path());
    if (stage == ImageStage::Preprocess) {
      write_png(dst, preprocess(img, cfg.pre));
      return;
    }
    const EnhanceResult r = enhance_image(img, cfg.enh);
    write_png(dst, r.image);
    nlohmann::ordered_json side;
    side["image"] = files[i].generic_string();
    side["t_final"] = r.t_final;
    fs::path json = dst;
    write_text(json.replace_extension(".json"), side.dump(2) + "\n");
  });
  copy_manifest(in, out);
  std::cout << files.size() << " image(s) written to " << out.string() << '\n';
}

void run_features(const fs::path& in, fs::path manifest_path, const fs::path& out, const std::string& stage,
                  const PipelineConfig& cfg) {
  if (manifest_path.empty()) manifest_path = in / "manifest.csv";
  const DatasetManifest m = ingest(in, manifest_path);
  const Stage st = parse_stage(stage);
  std::vector<FeatureRecord> records(m.entries.size());
  const FeatureConfig fc = feature_config(cfg);
  parallel_for(m.entries.size(), [&](std::size_t i) {
    const auto& e = m.entries[i];
    records[i] = {e.id(), e.label, st, extract_features(read_png(e.resolved), fc)};
  });
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  write_features(out, std::move(records));
  std::cout << m.entries.size() << " record(s) written to " << out.string() << '\n';
}

void run_train(const fs::path& features, const std::string& grid_spec, std::uint64_t seed, const fs::path& out,
               PipelineConfig cfg) {
  cfg.experiment.train.seed = seed;
  const auto records = read_features(features);
  if (records.empty()) throw InputError("no records in " + features.string());
  const std::string regime(to_string(records.front().stage));
  const TrainedModels t = train_grid(to_dataset(records), parse_grid(grid_spec), cfg.experiment);
  fs::create_directories(out);
  {
    std::ofstream t3(out / "table3.csv", std::ios::binary);
    write_error_table(t3, t.report);
    std::ofstream t4(out / "table4.csv", std::ios::binary);
    write_metric_rows(t4, {{regime, t.report}});
  }
  for (const char* model : {"wnn", "mlp"}) {
    std::size_t best = t.report.cells.size();
    for (std::size_t j = 0; j < t.report.cells.size(); ++j)
      if (t.report.cells[j].model == model &&
          (best == t.report.cells.size() || t.report.cells[j].test.accuracy() > t.report.cells[best].test.accuracy()))
        best = j;
    save_model(out / (std::string("model_") + model + ".txt"), t.models[best]);
  }
  nlohmann::ordered_json report;
  report["features"] = features.generic_string();
  report["records"] = records.size();
  report["seed"] = seed;
  report["split"] = {{"train", t.report.train}, {"validation", t.report.validation}, {"test", t.report.test}};
  report["regimes"][regime]["best_accuracy"] = {{"wnn", best_accuracy(t.report, "wnn")},
                                                {"mlp", best_accuracy(t.report, "mlp")}};
  auto& cells = report["regimes"][regime]["cells"] = nlohmann::ordered_json::array();
  for (const auto& c : t.report.cells) cells.push_back(cell_json(c));
  write_text(out / "report.json", report.dump(2) + "\n");
  std::cout << "wnn best " << best_accuracy(t.report, "wnn") << "%, mlp best " << best_accuracy(t.report, "mlp")
            << "%\n";
}

void run_report(const fs::path& run) {
  const auto j = nlohmann::ordered_json::parse(read_text(run / "report.json"));
  if (j.contains("images")) std::cout << "images    " << j["images"] << " (normal " << j["normal"] << ", glaucoma " << j["glaucoma"] << ")\n";
  std::cout << "seed      " << j["seed"] << "\nsplit     " << j["split"]["train"] << " / " << j["split"]["validation"]
            << " / " << j["split"]["test"] << '\n';
  if (j.contains("mse"))
    std::cout << "mse       mean " << j["mse"]["mean"].get<double>() << ", min " << j["mse"]["min"].get<double>()
              << ", max " << j["mse"]["max"].get<double>() << '\n';
  if (j.contains("t_final")) {
    std::cout << "t_final  ";
    for (const auto& [t, c] : j["t_final"].items()) std::cout << ' ' << t << ':' << c;
    std::cout << '\n';
  }
  for (const auto& [regime, r] : j["regimes"].items()) {
    std::cout << '\n' << regime << "\n  model  hu   bs    acc     sens    spec    best_epoch\n";
    for (const auto& c : r["cells"]) {
      char line[160];
      std::snprintf(line, sizeof line, "  %-5s %3d %4d  %6.2f  %6.2f  %6.2f  %d\n",
                    c["model"].get<std::string>().c_str(), c["hu"].get<int>(), c["bs"].get<int>(),
                    c["accuracy"].get<double>(), c["sensitivity"].get<double>(), c["specificity"].get<double>(),
                    c["best_epoch"].get<int>());
      std::cout << line;
    }
  }
}

void run_synth(const fs::path& out, std::size_t count, std::size_t size, std::uint64_t seed) {
  fs::create_directories(out);
  const auto set = synthetic::two_class_set(count, size, seed);
  std::vector<ManifestEntry> entries;
  for (std::size_t i = 0; i < set.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "img_%04zu.png", i);
    ManifestEntry e{name, set[i].label, "synthetic", {}};
    write_png(out / e.path, set[i].image);
    entries.push_back(std::move(e));
  }
  std::ofstream m(out / "manifest.csv", std::ios::binary);
  write_manifest(m, entries);
  std::cout << count << " phantom(s) written to " << out.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Glaucoma CAD pipeline: preprocessing, enhancement, texture features, WNN/MLP training"};
  app.require_subcommand(1);
  std::string in, out, config, manifest, stage = "enhanced", features, grid = "preset", run;
  std::uint64_t seed = 1;
  std::size_t count = 200, size = 128;

  auto* pre = app.add_subcommand("preprocess", "Brightness and contrast preprocessing of every PNG in a directory");
  auto* enh = app.add_subcommand("enhance", "Morphological enhancement; writes a JSON sidecar with t_final per image");
  for (auto* sc : {pre, enh}) {
    sc->add_option("--in", in, "Input image directory")->required()->check(CLI::ExistingDirectory);
    sc->add_option("--out", out, "Output image directory")->required();
    sc->add_option("--config", config, "Key-value config file")->check(CLI::ExistingFile);
  }

  auto* feat = app.add_subcommand("features", "Extract the 55-value feature record of every manifest image");
  feat->add_option("--in", in, "Image directory")->required()->check(CLI::ExistingDirectory);
  feat->add_option("--manifest", manifest, "Manifest CSV (default: <in>/manifest.csv)");
  feat->add_option("--out", out, "Output feature CSV")->required();
  feat->add_option("--stage", stage, "Provenance tag: raw, preprocessed or enhanced");
  feat->add_option("--config", config, "Key-value config file")->check(CLI::ExistingFile);

  auto* tr = app.add_subcommand("train", "Train WNN and MLP over a (HU, BS) grid");
  tr->add_option("--features", features, "Feature CSV")->required()->check(CLI::ExistingFile);
  tr->add_option("--grid", grid, "'preset' or HU:BS,HU:BS,...");
  tr->add_option("--seed", seed, "Split, initialization and shuffle seed");
  tr->add_option("--out", out, "Output directory")->required();
  tr->add_option("--config", config, "Key-value config file")->check(CLI::ExistingFile);

  auto* rep = app.add_subcommand("report", "Summarize the report.json of a run directory");
  rep->add_option("--run", run, "Run directory")->required()->check(CLI::ExistingDirectory);

  auto* full = app.add_subcommand("run", "Full experiment: stages, before/after features, training, reports");
  full->add_option("--in", in, "Image directory")->required()->check(CLI::ExistingDirectory);
  full->add_option("--manifest", manifest, "Manifest CSV (default: <in>/manifest.csv)");
  full->add_option("--out", out, "Run directory")->required();
  full->add_option("--grid", grid, "'preset' or HU:BS,HU:BS,...");
  full->add_option("--seed", seed, "Split, initialization and shuffle seed");
  full->add_option("--config", config, "Key-value config file")->check(CLI::ExistingFile);

  auto* syn = app.add_subcommand("synth", "Write a labeled two-class phantom set with its manifest");
  syn->add_option("--out", out, "Output directory")->required();
  syn->add_option("--count", count, "Number of images")->check(CLI::PositiveNumber);
  syn->add_option("--size", size, "Image side in pixels")->check(CLI::Range(32, 4096));
  syn->add_option("--seed", seed, "Generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (pre->parsed()) run_image_stage(in, out, config_from(config), ImageStage::Preprocess);
    else if (enh->parsed()) run_image_stage(in, out, config_from(config), ImageStage::Enhance);
    else if (feat->parsed()) run_features(in, manifest, out, stage, config_from(config));
    else if (tr->parsed()) run_train(features, grid, seed, out, config_from(config));
    else if (rep->parsed()) run_report(run);
    else if (full->parsed()) {
      PipelineConfig cfg = config_from(config);
      if (full->count("--seed")) cfg.experiment.train.seed = seed;
      const fs::path mpath = manifest.empty() ? fs::path(in) / "manifest.csv" : fs::path(manifest);
      run_experiment(ingest(in, mpath), cfg, parse_grid(grid), out);
      run_report(out);
    } else if (syn->parsed()) run_synth(out, count, size, seed);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed report: " << e.what() << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

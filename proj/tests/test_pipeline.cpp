#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "glaucad/dataset.hpp"
#include "glaucad/experiment.hpp"
#include "glaucad/synthetic.hpp"
#include "test_util.hpp"

using namespace glaucad;

namespace {

std::filesystem::path write_set(const std::string& name, std::size_t count, std::size_t size) {
  const auto dir = test::temp_dir(name);
  std::vector<ManifestEntry> entries;
  const auto set = synthetic::two_class_set(count, size, 3);
  for (std::size_t i = 0; i < set.size(); ++i) {
    ManifestEntry e;
    e.path = "img_" + std::to_string(i) + ".png";
    e.label = set[i].label;
    e.dataset = "synthetic";
    write_png(dir / e.path, set[i].image);
    entries.push_back(e);
  }
  std::ofstream out(dir / "manifest.csv");
  write_manifest(out, entries);
  return dir;
}

PipelineConfig quick_config() {
  PipelineConfig cfg;
  cfg.experiment.train.epochs = 3;
  cfg.experiment.train_fraction = 0.5;
  return cfg;
}

}  // namespace

TEST(Features, NamesAreUniqueAndOrdered) {
  const auto& n = feature_names();
  EXPECT_EQ(n.size(), 55u);
  EXPECT_EQ(std::set<std::string>(n.begin(), n.end()).size(), 55u);
  EXPECT_EQ(n[0], "mean");
  EXPECT_EQ(n[21], "mean_lgs");
  EXPECT_EQ(n[27], "kurtosis_0");
  EXPECT_EQ(n[54], "q100_mean_135");
}

TEST(Features, ConstantImageIsDegenerateButFinite) {
  const FeatureVector v = extract_features(GrayImage(64, 64, 100));
  for (double x : v) EXPECT_TRUE(std::isfinite(x));
  EXPECT_EQ(v[21], kLgsMaxValue);
  for (std::size_t i : {1, 2, 3, 22, 23, 24, 26}) EXPECT_EQ(v[i], 0.0) << i;
  EXPECT_DOUBLE_EQ(v[25], 1.0);
  for (std::size_t d = 0; d < 4; ++d) {
    EXPECT_EQ(v[27 + d * 7 + 2], 0.0);
    EXPECT_DOUBLE_EQ(v[27 + d * 7 + 6], 100.0);
  }
  EXPECT_THROW(extract_features(GrayImage{}), InputError);
}

TEST(Features, SmallPhantomIsModuleComposition) {
  const GrayImage g = synthetic::fundus(32, {}, 4);
  const FeatureVector v = extract_features(g);
  const auto st = statistical_features(g);
  const auto l = lgs_features(lgs_transform(g));
  const auto gsp = gsp_features(g);
  for (std::size_t i = 0; i < 21; ++i) EXPECT_EQ(v[i], st[i]);
  EXPECT_EQ(v[21], l.mean);
  EXPECT_EQ(v[26], l.entropy);
  for (std::size_t i = 0; i < 28; ++i) EXPECT_EQ(v[27 + i], gsp[i]);
  EXPECT_EQ(extract_features(g), v);
}

TEST(Features, CsvRoundTripIsExact) {
  std::mt19937_64 rng(12);
  std::vector<FeatureRecord> recs;
  for (int i = 0; i < 3; ++i)
    recs.push_back({"b/img" + std::to_string(2 - i), i % 2, Stage::Enhanced, extract_features(test::random_gray(48, 48, rng))});
  std::stringstream ss;
  write_features(ss, recs);
  const auto back = read_features(ss);
  ASSERT_EQ(back.size(), 3u);
  EXPECT_EQ(back[0].id, "b/img0");
  for (const auto& r : back) {
    const auto it = std::ranges::find(recs, r.id, &FeatureRecord::id);
    EXPECT_EQ(r.values, it->values);
    EXPECT_EQ(r.label, it->label);
    EXPECT_EQ(r.stage, Stage::Enhanced);
  }
}

TEST(Features, CsvRejectsBadInput) {
  std::stringstream no_schema("id,label,stage\n");
  EXPECT_THROW(read_features(no_schema), InputError);
  std::stringstream ok;
  write_features(ok, {{"a", 1, Stage::Raw, {}}});
  std::string text = ok.str();
  text.replace(text.rfind(",0"), 2, ",x");
  std::stringstream bad(text);
  EXPECT_THROW(read_features(bad), InputError);
}

TEST(Manifest, ParsesAndCounts) {
  std::stringstream in("path,label,dataset\na.png,normal,x\nsub/b.png,glaucoma,y\n\nc.png,glaucoma,x\n");
  const auto m = parse_manifest(in, "/data", false);
  EXPECT_EQ(m.entries.size(), 3u);
  EXPECT_EQ(m.normal, 1u);
  EXPECT_EQ(m.glaucoma, 2u);
  EXPECT_EQ(m.entries[1].id(), "sub/b");
  EXPECT_EQ(m.entries[1].resolved, std::filesystem::path("/data/sub/b.png"));
}

TEST(Manifest, ErrorsNameTheRow) {
  std::stringstream label("path,label,dataset\na.png,normal,x\nb.png,cat,x\n");
  try {
    parse_manifest(label, ".", false);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("manifest row 3"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("cat"), std::string::npos);
  }
  std::stringstream header("file,label\n");
  EXPECT_THROW(parse_manifest(header, ".", false), InputError);
  std::stringstream dup("path,label,dataset\na.png,normal,x\na.jpg,normal,x\n");
  EXPECT_THROW(parse_manifest(dup, ".", false), InputError);
  std::stringstream missing("path,label,dataset\nnope.png,normal,x\n");
  EXPECT_THROW(parse_manifest(missing, test::temp_dir("missing"), true), InputError);
}

TEST(Grid, PresetAndCustom) {
  EXPECT_EQ(parse_grid("preset").size(), 4u);
  const auto g = parse_grid("3:8,7:16");
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[1].hidden_units, 7u);
  EXPECT_EQ(g[1].batch_size, 16u);
  EXPECT_THROW(parse_grid("3"), InputError);
  EXPECT_THROW(parse_grid("0:4"), InputError);
  EXPECT_THROW(parse_grid("a:4"), InputError);
}

TEST(TrainGrid, NeedsTwoPerClass) {
  Dataset d;
  d.push_back({1.0}, 0);
  d.push_back({2.0}, 0);
  d.push_back({3.0}, 1);
  EXPECT_THROW(train_grid(d, parse_grid("2:2"), ExperimentConfig{}), InputError);
}

TEST(TrainGrid, ReportsBothModelsPerCell) {
  Dataset d;
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  for (int i = 0; i < 40; ++i) d.push_back({n(rng) + (i % 2), n(rng)}, i % 2);
  ExperimentConfig cfg;
  cfg.train.epochs = 5;
  const auto t = train_grid(d, parse_grid("2:4,3:8"), cfg);
  ASSERT_EQ(t.report.cells.size(), 4u);
  EXPECT_EQ(t.report.cells[0].model, "wnn");
  EXPECT_EQ(t.report.cells[1].model, "mlp");
  EXPECT_EQ(t.report.cells[2].cell.hidden_units, 3u);
  EXPECT_EQ(t.report.train + t.report.validation + t.report.test, 40u);
  for (const auto& c : t.report.cells) {
    EXPECT_EQ(c.history.size(), 5u);
    EXPECT_GE(c.best_epoch, 1);
  }
  const auto again = train_grid(d, parse_grid("2:4,3:8"), cfg);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(again.report.cells[j].test.accuracy(), t.report.cells[j].test.accuracy());
}

TEST(Histogram, BinsCoverValues) {
  const auto h = histogram_of({0.0, 0.1, 0.5, 1.0, 1.0}, 4);
  std::size_t total = 0;
  for (auto c : h.counts) total += c;
  EXPECT_EQ(total, 5u);
  EXPECT_EQ(h.counts.back(), 2u);
}

TEST(Experiment, RunIsDeterministic) {
  const auto dir = write_set("experiment", 12, 64);
  const auto manifest = ingest(dir, dir / "manifest.csv");
  const auto cfg = quick_config();
  const auto grid = parse_grid("3:4");
  run_experiment(manifest, cfg, grid, dir / "run1");
  const auto s = run_experiment(manifest, cfg, grid, dir / "run2");
  for (const char* f : {"features_before.csv", "features_after.csv", "mse.csv", "mse_hist.csv", "mse_hist.svg",
                        "table3.csv", "table4.csv", "report.json", "model_wnn.txt"})
    EXPECT_EQ(read_text(dir / "run1" / f), read_text(dir / "run2" / f)) << f;
  EXPECT_EQ(s.mse.size(), 12u);
  EXPECT_EQ(read_features(dir / "run1" / "features_after.csv").size(), 12u);
  const auto model = load_model(dir / "run1" / "model_wnn.txt");
  EXPECT_TRUE(std::holds_alternative<WnnModel>(model.model));
  EXPECT_TRUE(std::filesystem::exists(dir / "run1" / "timings.json"));
}

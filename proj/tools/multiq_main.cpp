// multiq command-line front end.
//
//   synth     generate a synthetic two-class polarization-curve dataset
//   features  extract feature vectors to features.csv
//   score     cross-validate one configuration (features.csv + report.txt)
//   table     run the five standard methods on full/low/high windows
//   scatter   emit first-vs-second principal component scatter data

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "multiq/io.hpp"
#include "multiq/pipeline.hpp"
#include "multiq/synth.hpp"

namespace {

struct CommonOpts {
  std::string data;
  std::string out = ".";
  double q_from = 0.1;
  double q_to = 2.0;
  double q_step = 0.1;
  bool raw = false;
  int bins = 100;
  std::string range = "full";
  double split_at = -0.2;
  int pca_k = 0;
  int folds = 10;
  std::uint64_t seed = 0;
  bool log_current = false;
};

void add_feature_flags(CLI::App& cmd, CommonOpts& o) {
  cmd.add_option("--data", o.data, "dataset manifest (rows: path,label)")
      ->required();
  cmd.add_option("--q-from", o.q_from, "first q value");
  cmd.add_option("--q-to", o.q_to, "last q value");
  cmd.add_option("--q-step", o.q_step, "q grid step");
  cmd.add_flag("--raw", o.raw, "use raw amplitudes instead of entropies");
  cmd.add_option("--bins", o.bins, "histogram bin count");
  cmd.add_option("--range", o.range, "potential window: full, low or high")
      ->check(CLI::IsMember({"full", "low", "high"}));
  cmd.add_option("--split-at", o.split_at, "low/high boundary in volts");
  cmd.add_flag("--log-current", o.log_current,
               "apply signed log10 to amplitudes first");
  cmd.add_option("--out", o.out, "output directory");
}

multiq::PipelineConfig to_config(const CommonOpts& o) {
  multiq::PipelineConfig cfg;
  cfg.raw = o.raw;
  if (!o.raw) cfg.q_grid = multiq::QGrid::linear(o.q_from, o.q_to, o.q_step);
  cfg.bin_count = o.bins;
  if (o.range == "low")
    cfg.window = multiq::PotentialWindow::low;
  else if (o.range == "high")
    cfg.window = multiq::PotentialWindow::high;
  else
    cfg.window = multiq::PotentialWindow::full;
  cfg.split_at = o.split_at;
  cfg.pca_k = o.pca_k;
  cfg.k_folds = o.folds;
  cfg.seed = o.seed;
  cfg.log_transform = o.log_current;
  return cfg;
}

std::string out_path(const CommonOpts& o, const std::string& name) {
  std::filesystem::create_directories(o.out);
  return (std::filesystem::path(o.out) / name).string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-q entropic-spectrum classification of 1-D profiles"};
  app.require_subcommand(1);

  // synth
  int n_per_class = 24;
  std::uint64_t synth_seed = 0;
  std::string synth_out = ".";
  bool identical = false;
  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic dataset");
  synth->add_option("--n-per-class", n_per_class, "curves per class");
  synth->add_option("--seed", synth_seed, "generator seed");
  synth->add_option("--out", synth_out, "output directory")->required();
  synth->add_flag("--identical-classes", identical,
                  "draw both classes from the same parameters (null dataset)");

  CommonOpts feat_opts, score_opts, scatter_opts, table_opts;

  CLI::App* features = app.add_subcommand("features", "extract feature vectors");
  add_feature_flags(*features, feat_opts);

  CLI::App* score = app.add_subcommand("score", "cross-validate one configuration");
  add_feature_flags(*score, score_opts);
  score->add_option("--pca", score_opts.pca_k, "project onto k components first");
  score->add_option("--folds", score_opts.folds, "cross-validation folds");
  score->add_option("--seed", score_opts.seed, "fold assignment seed");

  CLI::App* scatter = app.add_subcommand("scatter", "emit 2-component scatter data");
  add_feature_flags(*scatter, scatter_opts);

  CLI::App* table = app.add_subcommand("table", "run the five standard methods");
  table->add_option("--data", table_opts.data, "dataset manifest")->required();
  table->add_option("--bins", table_opts.bins, "histogram bin count");
  table->add_option("--split-at", table_opts.split_at, "low/high boundary in volts");
  table->add_option("--folds", table_opts.folds, "cross-validation folds");
  table->add_option("--seed", table_opts.seed, "fold assignment seed");
  table->add_flag("--log-current", table_opts.log_current,
                  "apply signed log10 to amplitudes first");
  table->add_option("--out", table_opts.out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) {
      const auto profiles =
          identical ? multiq::generate_dataset(n_per_class, synth_seed,
                                               multiq::params_class_316(),
                                               multiq::params_class_316())
                    : multiq::generate_dataset(n_per_class, synth_seed);
      const std::string manifest = multiq::write_dataset(profiles, synth_out);
      std::cout << "wrote " << profiles.size() << " profiles, manifest: " << manifest
                << "\n";
    } else if (features->parsed()) {
      const auto profiles = multiq::load_dataset(feat_opts.data);
      const auto cfg = to_config(feat_opts);
      const auto fv = multiq::extract_features(profiles, cfg);
      const std::string path = out_path(feat_opts, "features.csv");
      multiq::atomic_write_text(
          path, multiq::features_csv(fv, multiq::feature_column_names(cfg, fv)));
      std::cout << "wrote " << path << " (" << fv.size() << " x "
                << fv[0].values.size() << ")\n";
    } else if (score->parsed()) {
      const auto profiles = multiq::load_dataset(score_opts.data);
      const auto cfg = to_config(score_opts);
      const auto outcome = multiq::score_pipeline(profiles, cfg);
      multiq::atomic_write_text(
          out_path(score_opts, "features.csv"),
          multiq::features_csv(outcome.features,
                               multiq::feature_column_names(cfg, outcome.features)));
      if (cfg.pca_k >= 2)
        multiq::atomic_write_text(out_path(score_opts, "scatter.csv"),
                                  multiq::scatter_csv(multiq::scatter_rows(outcome.features)));
      multiq::atomic_write_text(out_path(score_opts, "report.txt"), outcome.report);
      std::cout << outcome.report;
    } else if (scatter->parsed()) {
      const auto profiles = multiq::load_dataset(scatter_opts.data);
      const auto cfg = to_config(scatter_opts);
      const auto fv = multiq::extract_features(profiles, cfg);
      const std::string path = out_path(scatter_opts, "scatter.csv");
      multiq::atomic_write_text(path,
                                multiq::scatter_csv(multiq::scatter_rows(fv)));
      std::cout << "wrote " << path << " (" << fv.size() << " rows)\n";
    } else if (table->parsed()) {
      const auto profiles = multiq::load_dataset(table_opts.data);
      multiq::PipelineConfig base = to_config(table_opts);
      const std::string report = multiq::table_report(profiles, base);
      multiq::atomic_write_text(out_path(table_opts, "report.txt"), report);
      std::cout << report;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

// End-to-end batch pipeline: window selection, feature extraction (multi-q
// entropic spectrum or raw amplitudes), optional PCA, cross-validated scoring
// and the five-method comparison report.

#pragma once

#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "multiq/cross_validation.hpp"
#include "multiq/entropy.hpp"
#include "multiq/io.hpp"
#include "multiq/naive_bayes.hpp"
#include "multiq/pca.hpp"
#include "multiq/profile.hpp"

namespace multiq {

enum class PotentialWindow { full, low, high, custom };

struct PipelineConfig {
  bool raw = false;                            // raw amplitudes instead of entropies
  QGrid q_grid = QGrid::linear(0.1, 2.0, 0.1); // ignored when raw
  int bin_count = 100;
  PotentialWindow window = PotentialWindow::full;
  double split_at = -0.2;  // low/high boundary, volts
  double custom_lo = 0.0;
  double custom_hi = 0.0;
  int pca_k = 0;  // 0 disables projection before scoring
  int k_folds = 10;
  std::uint64_t seed = 0;
  bool log_transform = false;  // signed log10 on amplitudes before anything else
};

inline Profile apply_window(const Profile& p, const PipelineConfig& cfg) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (cfg.window) {
    case PotentialWindow::full:
      return p;
    case PotentialWindow::low:
      return slice_by_potential(p, {-inf, cfg.split_at});
    case PotentialWindow::high:
      return slice_by_potential(p, {cfg.split_at, inf});
    case PotentialWindow::custom:
      return slice_by_potential(p, {cfg.custom_lo, cfg.custom_hi});
  }
  throw std::logic_error("apply_window: unknown window");
}

inline FeatureVector extract_features(const Profile& p, const PipelineConfig& cfg) {
  const Profile transformed = cfg.log_transform ? log_current_transform(p) : p;
  const Profile windowed = apply_window(transformed, cfg);
  FeatureVector f;
  if (cfg.raw) {
    f.values.reserve(windowed.samples.size());
    for (const Sample& s : windowed.samples) f.values.push_back(s.amplitude);
  } else {
    f = multiq_vector(quantize_histogram(windowed, cfg.bin_count), cfg.q_grid);
  }
  f.profile_id = p.id;
  f.label = p.label;
  return f;
}

inline std::vector<FeatureVector> extract_features(
    const std::vector<Profile>& profiles, const PipelineConfig& cfg) {
  std::vector<FeatureVector> out;
  out.reserve(profiles.size());
  for (const Profile& p : profiles) out.push_back(extract_features(p, cfg));
  return out;
}

inline std::string format_q(double q) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", q);
  return buf;
}

inline std::vector<std::string> feature_column_names(
    const PipelineConfig& cfg, const std::vector<FeatureVector>& features) {
  std::vector<std::string> names;
  if (cfg.raw) {
    const std::size_t width = features.empty() ? 0 : features[0].values.size();
    names.reserve(width);
    for (std::size_t i = 0; i < width; ++i) names.push_back("s" + std::to_string(i));
  } else {
    names.reserve(cfg.q_grid.values.size());
    for (double q : cfg.q_grid.values) names.push_back("q_" + format_q(q));
  }
  return names;
}

// Fits PCA on all rows and replaces each vector by its first k coordinates.
inline std::vector<FeatureVector> project_features(
    const std::vector<FeatureVector>& features, int k,
    PcaModel* fitted = nullptr) {
  std::vector<std::vector<double>> rows;
  rows.reserve(features.size());
  for (const FeatureVector& f : features) rows.push_back(f.values);
  PcaModel model = fit_pca(rows);
  std::vector<FeatureVector> out;
  out.reserve(features.size());
  for (const FeatureVector& f : features) {
    FeatureVector g;
    g.profile_id = f.profile_id;
    g.label = f.label;
    g.values = project(model, f.values, k);
    out.push_back(std::move(g));
  }
  if (fitted) *fitted = std::move(model);
  return out;
}

inline std::vector<ScatterRow> scatter_rows(const std::vector<FeatureVector>& features) {
  const std::vector<FeatureVector> projected = project_features(features, 2);
  std::vector<ScatterRow> rows;
  rows.reserve(projected.size());
  for (const FeatureVector& f : projected)
    rows.push_back({f.profile_id, f.label, f.values[0], f.values[1]});
  return rows;
}

namespace detail {

inline std::string percent(double rate) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.1f", rate * 100.0);
  return buf;
}

inline std::string window_name(PotentialWindow w) {
  switch (w) {
    case PotentialWindow::full: return "full";
    case PotentialWindow::low: return "low";
    case PotentialWindow::high: return "high";
    case PotentialWindow::custom: return "custom";
  }
  return "?";
}

}  // namespace detail

struct ScoreOutcome {
  std::vector<FeatureVector> features;  // as extracted, pre-PCA
  CvResult cv;
  std::string report;
};

// One configuration end to end: extract, optionally project, cross-validate,
// and render the verbose report (pooled and fold-averaged rates).
inline ScoreOutcome score_pipeline(const std::vector<Profile>& profiles,
                                   const PipelineConfig& cfg) {
  ScoreOutcome out;
  out.features = extract_features(profiles, cfg);
  const std::vector<FeatureVector>& scored =
      cfg.pca_k > 0 ? project_features(out.features, cfg.pca_k) : out.features;
  out.cv = cross_validate(scored, cfg.k_folds, cfg.seed);

  std::string& r = out.report;
  r += "method: ";
  r += cfg.raw ? "raw amplitudes"
               : "multi-q " + format_q(cfg.q_grid.values.front()) + ".." +
                     format_q(cfg.q_grid.values.back()) + " (" +
                     std::to_string(cfg.q_grid.values.size()) + " values)";
  r += "\n";
  r += "window: " + detail::window_name(cfg.window) +
       "  split_at: " + format_q(cfg.split_at) + " V\n";
  if (!cfg.raw) r += "bins: " + std::to_string(cfg.bin_count) + "\n";
  if (cfg.pca_k > 0) r += "pca: " + std::to_string(cfg.pca_k) + " components\n";
  r += "profiles: " + std::to_string(profiles.size()) +
       "  feature width: " + std::to_string(out.features[0].values.size()) + "\n";
  r += "folds: " + std::to_string(cfg.k_folds) +
       "  seed: " + std::to_string(cfg.seed) + "\n";
  r += "classification rate (pooled): " + detail::percent(out.cv.pooled_rate) + "%\n";
  r += "classification rate (fold mean): " + detail::percent(out.cv.mean_fold_rate) +
       "%\n";
  r += "per-fold:";
  for (std::size_t f = 0; f < out.cv.fold_rates.size(); ++f)
    r += " " + detail::percent(out.cv.fold_rates[f]) + "%(" +
         std::to_string(out.cv.fold_sizes[f]) + ")";
  r += "\n";
  return out;
}

// The five standard method rows scored on the full, low and high windows.
struct TableMethod {
  std::string name;
  bool raw = false;
  QGrid grid;
};

inline std::vector<TableMethod> table_methods() {
  return {
      {"Tsallis q = 1", false, QGrid{{1.0}}},
      {"Tsallis q = 0.1", false, QGrid{{0.1}}},
      {"Multi-q 0.1..1.0", false, QGrid::linear(0.1, 1.0, 0.1)},
      {"Multi-q 0.1..2.0", false, QGrid::linear(0.1, 2.0, 0.1)},
      {"Raw amplitudes", true, QGrid{{1.0}}},
  };
}

inline std::string table_report(const std::vector<Profile>& profiles,
                                const PipelineConfig& base) {
  const PotentialWindow windows[3] = {PotentialWindow::full, PotentialWindow::low,
                                      PotentialWindow::high};
  std::string r;
  r += "classification rate (%), pooled over " + std::to_string(base.k_folds) +
       " folds, seed " + std::to_string(base.seed) + "\n";
  r += "profiles: " + std::to_string(profiles.size()) +
       "  bins: " + std::to_string(base.bin_count) +
       "  split: " + format_q(base.split_at) + " V\n\n";
  char line[128];
  std::snprintf(line, sizeof line, "%-24s %8s %8s %8s\n", "method", "full", "low",
                "high");
  r += line;
  for (const TableMethod& method : table_methods()) {
    double rates[3];
    for (int w = 0; w < 3; ++w) {
      PipelineConfig cfg = base;
      cfg.raw = method.raw;
      cfg.q_grid = method.grid;
      cfg.window = windows[w];
      cfg.pca_k = 0;
      rates[w] = score_pipeline(profiles, cfg).cv.pooled_rate;
    }
    std::snprintf(line, sizeof line, "%-24s %8s %8s %8s\n", method.name.c_str(),
                  detail::percent(rates[0]).c_str(), detail::percent(rates[1]).c_str(),
                  detail::percent(rates[2]).c_str());
    r += line;
  }
  return r;
}

}  // namespace multiq

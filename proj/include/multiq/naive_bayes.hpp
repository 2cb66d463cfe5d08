// Gaussian naive Bayes over feature vectors: per-class, per-feature normal
// densities with floored variances, log-space scoring, plain-text model
// persistence.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "multiq/entropy.hpp"
#include "multiq/rng.hpp"

namespace multiq {

struct NbModel {
  std::vector<std::string> classes;  // declaration order, used for tie-breaks
  std::vector<double> priors;
  std::vector<std::vector<double>> means;      // [class][feature]
  std::vector<std::vector<double>> variances;  // [class][feature], floored
};

// Variance floor: 1e-9 of the largest pooled per-feature variance, never
// below 1e-12. Keeps constant features from producing zero divisors.
inline constexpr double kVarianceFloorRel = 1e-9;
inline constexpr double kVarianceFloorAbs = 1e-12;

inline NbModel train_nb(const std::vector<FeatureVector>& data) {
  if (data.empty()) throw std::invalid_argument("train_nb: empty training set");
  const std::size_t d = data[0].values.size();
  if (d == 0) throw std::invalid_argument("train_nb: empty feature vectors");

  NbModel m;
  std::vector<std::size_t> counts;
  std::vector<std::size_t> class_of(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const FeatureVector& f = data[i];
    if (f.values.size() != d)
      throw std::invalid_argument("train_nb: inconsistent feature lengths");
    if (f.label.empty())
      throw std::invalid_argument("train_nb: unlabeled sample '" + f.profile_id + "'");
    std::size_t c = 0;
    while (c < m.classes.size() && m.classes[c] != f.label) ++c;
    if (c == m.classes.size()) {
      m.classes.push_back(f.label);
      counts.push_back(0);
    }
    class_of[i] = c;
    ++counts[c];
  }
  if (m.classes.size() < 2)
    throw std::invalid_argument("train_nb: need at least 2 classes");
  for (std::size_t c = 0; c < m.classes.size(); ++c)
    if (counts[c] < 2)
      throw std::invalid_argument("train_nb: class '" + m.classes[c] +
                                  "' has fewer than 2 samples");

  const std::size_t nc = m.classes.size();
  m.means.assign(nc, std::vector<double>(d, 0.0));
  m.variances.assign(nc, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < data.size(); ++i)
    for (std::size_t j = 0; j < d; ++j)
      m.means[class_of[i]][j] += data[i].values[j];
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t j = 0; j < d; ++j)
      m.means[c][j] /= static_cast<double>(counts[c]);
  for (std::size_t i = 0; i < data.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double dev = data[i].values[j] - m.means[class_of[i]][j];
      m.variances[class_of[i]][j] += dev * dev;
    }
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t j = 0; j < d; ++j)
      m.variances[c][j] /= static_cast<double>(counts[c] - 1);

  // Pooled (class-blind) per-feature variance sets the floor scale.
  double largest_pooled = 0.0;
  {
    std::vector<double> mean(d, 0.0);
    for (const FeatureVector& f : data)
      for (std::size_t j = 0; j < d; ++j) mean[j] += f.values[j];
    for (double& x : mean) x /= static_cast<double>(data.size());
    std::vector<double> var(d, 0.0);
    for (const FeatureVector& f : data)
      for (std::size_t j = 0; j < d; ++j) {
        const double dev = f.values[j] - mean[j];
        var[j] += dev * dev;
      }
    for (double v : var)
      largest_pooled =
          std::max(largest_pooled, v / static_cast<double>(data.size() - 1));
  }
  const double floor = std::max(kVarianceFloorAbs, kVarianceFloorRel * largest_pooled);
  for (auto& row : m.variances)
    for (double& v : row) v = std::max(v, floor);

  m.priors.reserve(nc);
  for (std::size_t c = 0; c < nc; ++c)
    m.priors.push_back(static_cast<double>(counts[c]) /
                       static_cast<double>(data.size()));
  return m;
}

struct Prediction {
  std::string label;
  std::vector<double> posteriors;  // aligned with model.classes
};

inline Prediction predict_nb(const NbModel& m, const std::vector<double>& v) {
  const std::size_t nc = m.classes.size();
  if (nc == 0) throw std::invalid_argument("predict_nb: empty model");
  if (v.size() != m.means[0].size())
    throw std::invalid_argument("predict_nb: feature length mismatch");

  std::vector<double> score(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    double s = std::log(m.priors[c]);
    for (std::size_t j = 0; j < v.size(); ++j) {
      const double var = m.variances[c][j];
      const double dev = v[j] - m.means[c][j];
      s += -0.5 * std::log(detail::kTwoPi * var) - dev * dev / (2.0 * var);
    }
    score[c] = s;
  }

  std::size_t best = 0;
  for (std::size_t c = 1; c < nc; ++c)
    if (score[c] > score[best]) best = c;  // ties keep the earlier class

  Prediction out;
  out.label = m.classes[best];
  out.posteriors.resize(nc);
  double total = 0.0;
  for (std::size_t c = 0; c < nc; ++c) {
    out.posteriors[c] = std::exp(score[c] - score[best]);
    total += out.posteriors[c];
  }
  for (double& p : out.posteriors) p /= total;
  return out;
}

// --- persistence ------------------------------------------------------------
// Plain-text key/value lines; doubles printed with %.17g so a round trip
// restores them bit for bit (and therefore restores predictions exactly).

namespace detail {

inline std::string full_precision(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

inline void save_nb_model(const NbModel& m, std::ostream& out) {
  out << "multiq_nb_model v1\n";
  out << "classes " << m.classes.size() << "\n";
  out << "features " << (m.means.empty() ? 0 : m.means[0].size()) << "\n";
  for (std::size_t c = 0; c < m.classes.size(); ++c) {
    out << "class " << c << " " << m.classes[c] << "\n";
    out << "prior " << c << " " << detail::full_precision(m.priors[c]) << "\n";
    out << "mean " << c;
    for (double x : m.means[c]) out << " " << detail::full_precision(x);
    out << "\n";
    out << "var " << c;
    for (double x : m.variances[c]) out << " " << detail::full_precision(x);
    out << "\n";
  }
}

inline void save_nb_model(const NbModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  save_nb_model(m, out);
}

inline NbModel load_nb_model(std::istream& in) {
  auto fail = [](const std::string& why) -> NbModel {
    throw std::runtime_error("nb model: " + why);
  };
  std::string header;
  if (!std::getline(in, header) || header != "multiq_nb_model v1")
    return fail("unrecognized header");

  NbModel m;
  std::size_t nc = 0, nf = 0;
  std::string key;
  if (!(in >> key >> nc) || key != "classes") return fail("expected 'classes'");
  if (!(in >> key >> nf) || key != "features") return fail("expected 'features'");
  if (nc < 2 || nf < 1) return fail("degenerate dimensions");

  m.classes.resize(nc);
  m.priors.resize(nc);
  m.means.assign(nc, std::vector<double>(nf));
  m.variances.assign(nc, std::vector<double>(nf));
  for (std::size_t c = 0; c < nc; ++c) {
    std::size_t idx = 0;
    if (!(in >> key >> idx) || key != "class" || idx != c)
      return fail("expected 'class " + std::to_string(c) + "'");
    in >> std::ws;
    if (!std::getline(in, m.classes[c]) || m.classes[c].empty())
      return fail("missing class label");
    if (!(in >> key >> idx >> m.priors[c]) || key != "prior" || idx != c)
      return fail("expected 'prior'");
    if (!(in >> key >> idx) || key != "mean" || idx != c) return fail("expected 'mean'");
    for (double& x : m.means[c])
      if (!(in >> x)) return fail("truncated mean row");
    if (!(in >> key >> idx) || key != "var" || idx != c) return fail("expected 'var'");
    for (double& x : m.variances[c])
      if (!(in >> x)) return fail("truncated var row");
  }
  return m;
}

inline NbModel load_nb_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  return load_nb_model(in);
}

}  // namespace multiq

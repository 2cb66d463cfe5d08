// Tsallis entropy of a quantized amplitude distribution and the multi-q
// feature vector (the entropic spectrum of a profile).

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "multiq/profile.hpp"

namespace multiq {

// Strictly increasing positive q values.
struct QGrid {
  std::vector<double> values;

  static QGrid linear(double from, double to, double step);
};

inline void validate_qgrid(const QGrid& grid) {
  if (grid.values.empty()) throw std::invalid_argument("q grid: empty");
  double prev = 0.0;
  for (double q : grid.values) {
    if (!(q > prev))
      throw std::invalid_argument(
          "q grid: values must be positive and strictly increasing");
    prev = q;
  }
}

inline QGrid QGrid::linear(double from, double to, double step) {
  if (!(from > 0.0) || !(step > 0.0) || to < from)
    throw std::invalid_argument("q grid: need 0 < from <= to and step > 0");
  QGrid grid;
  const int count = static_cast<int>(std::floor((to - from) / step + 1e-9)) + 1;
  grid.values.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) grid.values.push_back(from + i * step);
  validate_qgrid(grid);
  return grid;
}

struct FeatureVector {
  std::string profile_id;
  std::string label;  // empty when unlabeled
  std::vector<double> values;
};

// Distance from q = 1 below which the Shannon limit replaces the generic
// formula, avoiding the 0/0 cancellation. Far below any practical grid step.
inline constexpr double kQLimitEps = 1e-9;

// S_q of the histogram: (1 - sum p_i^q) / (q - 1) with 0^q = 0, and the
// natural-log Shannon entropy -sum p_i ln p_i as the q -> 1 limit.
inline double tsallis_entropy(const Histogram& h, double q) {
  if (!(q > 0.0))
    throw std::invalid_argument("tsallis_entropy: q must be positive");
  validate_histogram(h);
  if (std::abs(q - 1.0) <= kQLimitEps) {
    double shannon = 0.0;
    for (double p : h.probs)
      if (p > 0.0) shannon -= p * std::log(p);
    return shannon;
  }
  double sum = 0.0;
  for (double p : h.probs)
    if (p > 0.0) sum += std::pow(p, q);
  return (1.0 - sum) / (q - 1.0);
}

// Entropy at every grid q, in grid order. Caller fills id/label.
inline FeatureVector multiq_vector(const Histogram& h, const QGrid& grid) {
  validate_qgrid(grid);
  FeatureVector out;
  out.values.reserve(grid.values.size());
  for (double q : grid.values) out.values.push_back(tsallis_entropy(h, q));
  return out;
}

}  // namespace multiq

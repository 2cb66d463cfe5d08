// Stratified k-fold cross-validation. Per class, indices are shuffled by the
// seeded generator and dealt to folds round-robin; the deal continues across
// classes so every fold is populated whenever k does not exceed the sample
// count. Deterministic for a fixed (labels, k, seed).

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "multiq/naive_bayes.hpp"
#include "multiq/rng.hpp"

namespace multiq {

struct FoldAssignment {
  std::vector<int> fold_of;  // per sample index, in [0, k)
  int k = 0;
  std::uint64_t seed = 0;
};

inline FoldAssignment stratified_folds(const std::vector<std::string>& labels,
                                       int k, std::uint64_t seed) {
  if (labels.empty()) throw std::invalid_argument("stratified_folds: no labels");
  if (k < 2) throw std::invalid_argument("stratified_folds: k must be >= 2");
  if (static_cast<std::size_t>(k) > labels.size())
    throw std::invalid_argument("stratified_folds: k exceeds sample count");

  // Classes in first-appearance order.
  std::vector<std::string> classes;
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].empty())
      throw std::invalid_argument("stratified_folds: unlabeled sample " +
                                  std::to_string(i));
    std::size_t c = 0;
    while (c < classes.size() && classes[c] != labels[i]) ++c;
    if (c == classes.size()) {
      classes.push_back(labels[i]);
      members.emplace_back();
    }
    members[c].push_back(i);
  }
  for (std::size_t c = 0; c < classes.size(); ++c)
    if (members[c].size() < 2)
      throw std::invalid_argument("stratified_folds: class '" + classes[c] +
                                  "' has fewer than 2 samples");

  FoldAssignment fa;
  fa.fold_of.assign(labels.size(), -1);
  fa.k = k;
  fa.seed = seed;
  Xoshiro256 rng(seed);
  int next_fold = 0;
  for (auto& idx : members) {
    shuffle(idx, rng);
    for (std::size_t i : idx) {
      fa.fold_of[i] = next_fold;
      next_fold = (next_fold + 1) % k;
    }
  }
  return fa;
}

struct CvResult {
  double pooled_rate = 0.0;     // total correct / total samples
  double mean_fold_rate = 0.0;  // unweighted average of per-fold rates
  std::vector<double> fold_rates;
  std::vector<int> fold_sizes;
};

// Train on each fold's complement, score the held-out fold, pool the counts.
inline CvResult cross_validate(const std::vector<FeatureVector>& data, int k,
                               std::uint64_t seed) {
  std::vector<std::string> labels;
  labels.reserve(data.size());
  for (const FeatureVector& f : data) labels.push_back(f.label);
  const FoldAssignment fa = stratified_folds(labels, k, seed);

  CvResult r;
  r.fold_rates.assign(static_cast<std::size_t>(k), 0.0);
  r.fold_sizes.assign(static_cast<std::size_t>(k), 0);
  std::size_t correct_total = 0;
  for (int fold = 0; fold < k; ++fold) {
    std::vector<FeatureVector> train;
    std::vector<const FeatureVector*> test;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (fa.fold_of[i] == fold)
        test.push_back(&data[i]);
      else
        train.push_back(data[i]);
    }
    const NbModel model = train_nb(train);
    std::size_t correct = 0;
    for (const FeatureVector* f : test)
      if (predict_nb(model, f->values).label == f->label) ++correct;
    correct_total += correct;
    r.fold_sizes[static_cast<std::size_t>(fold)] = static_cast<int>(test.size());
    r.fold_rates[static_cast<std::size_t>(fold)] =
        static_cast<double>(correct) / static_cast<double>(test.size());
  }
  r.pooled_rate =
      static_cast<double>(correct_total) / static_cast<double>(data.size());
  double acc = 0.0;
  for (double rate : r.fold_rates) acc += rate;
  r.mean_fold_rate = acc / static_cast<double>(k);
  return r;
}

}  // namespace multiq

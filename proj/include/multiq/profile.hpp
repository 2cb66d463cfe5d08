// 1-D profile handling: parsing, validation, potential-range slicing and
// amplitude quantization into equal-width histograms.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <istream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace multiq {

struct Sample {
  double potential = 0.0;  // volts vs. reference electrode
  double amplitude = 0.0;  // signal units (current or log-current)
};

struct Profile {
  std::string id;
  std::string label;  // empty when unlabeled
  std::vector<Sample> samples;
};

// Half-open [lo, hi); hi becomes inclusive when it reaches or exceeds the
// profile's last potential, so a range covering the full span keeps every
// sample.
struct PotentialRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct Histogram {
  int bin_count = 0;
  double lo = 0.0;  // amplitude range endpoints the bins were built on
  double hi = 0.0;
  std::vector<double> probs;
};

inline void validate_profile(const Profile& p) {
  if (p.samples.empty())
    throw std::runtime_error("profile '" + p.id + "': no samples");
  for (std::size_t i = 0; i < p.samples.size(); ++i) {
    const Sample& s = p.samples[i];
    if (!std::isfinite(s.potential) || !std::isfinite(s.amplitude))
      throw std::runtime_error("profile '" + p.id + "': non-finite sample " +
                               std::to_string(i + 1));
    if (i > 0 && !(s.potential > p.samples[i - 1].potential))
      throw std::runtime_error("profile '" + p.id +
                               "': potential not strictly increasing at sample " +
                               std::to_string(i + 1));
  }
}

inline void validate_histogram(const Histogram& h) {
  if (h.bin_count < 1 ||
      h.probs.size() != static_cast<std::size_t>(h.bin_count))
    throw std::invalid_argument("histogram: bin_count does not match probs");
  double sum = 0.0;
  for (double p : h.probs) {
    if (!(p >= 0.0) || !(p <= 1.0))
      throw std::invalid_argument("histogram: probability outside [0, 1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("histogram: probabilities do not sum to 1");
}

namespace detail {

inline std::string strip_line(std::string line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                           line.back() == '\t'))
    line.pop_back();
  std::size_t start = 0;
  while (start < line.size() && (line[start] == ' ' || line[start] == '\t'))
    ++start;
  return line.substr(start);
}

inline bool parse_double_field(const std::string& field, double& out) {
  const char* begin = field.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  if (end == begin) return false;
  while (*end == ' ' || *end == '\t') ++end;
  return *end == '\0';
}

}  // namespace detail

// Parses the two-column `potential,amplitude` format. Lines that are blank,
// start with '#', or start with the literal header word `potential` are
// skipped. Errors carry the origin (file name) and 1-based line number.
inline Profile parse_profile(std::istream& in, const std::string& origin,
                             std::string id, std::string label = "") {
  Profile p;
  p.id = std::move(id);
  p.label = std::move(label);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = detail::strip_line(raw);
    if (line.empty() || line[0] == '#' || line.rfind("potential", 0) == 0)
      continue;
    const std::size_t comma = line.find(',');
    const std::string where = origin + ":" + std::to_string(lineno);
    if (comma == std::string::npos)
      throw std::runtime_error(where + ": expected 'potential,amplitude'");
    double pot = 0.0, amp = 0.0;
    if (!detail::parse_double_field(line.substr(0, comma), pot) ||
        !detail::parse_double_field(line.substr(comma + 1), amp))
      throw std::runtime_error(where + ": malformed number");
    if (!std::isfinite(pot) || !std::isfinite(amp))
      throw std::runtime_error(where + ": non-finite value");
    if (!p.samples.empty() && !(pot > p.samples.back().potential))
      throw std::runtime_error(where + ": potential not strictly increasing");
    p.samples.push_back({pot, amp});
  }
  if (p.samples.empty())
    throw std::runtime_error(origin + ": no samples");
  return p;
}

inline Profile load_profile(const std::string& path, std::string label = "") {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile file: " + path);
  return parse_profile(in, path, std::filesystem::path(path).stem().string(),
                       std::move(label));
}

inline Profile slice_by_potential(const Profile& p, const PotentialRange& r) {
  if (!(r.lo < r.hi))
    throw std::invalid_argument("potential range: lo must be below hi");
  validate_profile(p);
  // hi >= last potential means no sample exceeds it; the bound turns inclusive
  const bool hi_inclusive = r.hi >= p.samples.back().potential;
  Profile out;
  out.id = p.id;
  out.label = p.label;
  for (const Sample& s : p.samples)
    if (s.potential >= r.lo && (hi_inclusive || s.potential < r.hi))
      out.samples.push_back(s);
  if (out.samples.empty())
    throw std::runtime_error("profile '" + p.id + "': no samples in range [" +
                             std::to_string(r.lo) + ", " +
                             std::to_string(r.hi) + ")");
  return out;
}

// Equal-width bins over the sample amplitude range [min, max]. Bin k covers
// [lo + k*w, lo + (k+1)*w); the global maximum is assigned to the last bin so
// every sample is counted exactly once. A constant profile collapses to a
// one-hot histogram with a warning instead of failing.
inline Histogram quantize_histogram(const Profile& p, int bin_count) {
  if (bin_count < 2)
    throw std::invalid_argument("quantize_histogram: bin_count must be >= 2");
  validate_profile(p);

  double lo = p.samples[0].amplitude;
  double hi = lo;
  for (const Sample& s : p.samples) {
    lo = std::min(lo, s.amplitude);
    hi = std::max(hi, s.amplitude);
  }

  Histogram h;
  h.bin_count = bin_count;
  h.lo = lo;
  h.hi = hi;
  h.probs.assign(static_cast<std::size_t>(bin_count), 0.0);

  if (lo == hi) {
    std::cerr << "warning: profile '" << p.id
              << "' has constant amplitude; histogram collapses to one bin\n";
    h.probs[0] = 1.0;
    return h;
  }

  const double width = (hi - lo) / bin_count;
  for (const Sample& s : p.samples) {
    int bin = static_cast<int>((s.amplitude - lo) / width);
    bin = std::clamp(bin, 0, bin_count - 1);
    h.probs[static_cast<std::size_t>(bin)] += 1.0;
  }
  const double n = static_cast<double>(p.samples.size());
  for (double& prob : h.probs) prob /= n;
  return h;
}

inline constexpr double kSignedLogEps = 1e-12;

inline double signed_log10(double x, double eps = kSignedLogEps) {
  const double mag = std::log10(1.0 + std::abs(x) / eps);
  return x < 0.0 ? -mag : mag;
}

// Optional amplitude transform for raw current data; the pipeline itself is
// transform-agnostic.
inline Profile log_current_transform(const Profile& p,
                                     double eps = kSignedLogEps) {
  Profile out = p;
  for (Sample& s : out.samples) s.amplitude = signed_log10(s.amplitude, eps);
  return out;
}

}  // namespace multiq

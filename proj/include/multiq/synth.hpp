// Synthetic two-class polarization-curve generator. Each curve is a V-shaped
// piecewise-linear log-current template centered on a per-curve corrosion
// potential, plus white noise, plus (above a pitting onset) a Poisson
// superposition of upward bursts that relax exponentially back to the
// template. One class pits earlier and harder than the other; below the
// cathodic/anodic split the classes overlap heavily.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "multiq/profile.hpp"
#include "multiq/rng.hpp"

namespace multiq {

struct CurveParams {
  double e_corr_mean = -0.265;  // corrosion potential, volts
  double e_corr_sd = 0.010;
  double cathodic_slope = 8.0;  // decades per volt
  double anodic_slope = 3.0;    // decades per volt
  double pit_onset = 0.1;       // volts; bursts only above this potential
  double pit_burst_rate = 0.0;  // expected bursts per volt above onset
  double pit_burst_scale = 0.0; // mean burst height, log-current decades
  double noise_sd = 0.0;        // white noise, log-current decades
};

// ---- generator defaults -----------------------------------------------------
// All tunables live here. Potentials are volts, amplitudes are log10(current)
// decades; the absolute current level is irrelevant downstream because the
// histogram is built on each profile's own amplitude range.
inline constexpr double kPotentialLo = -0.6;
inline constexpr double kPotentialHi = 0.2;
inline constexpr int kSamplesPerCurve = 800;
inline constexpr double kLogCurrentFloor = -8.0;  // template value at e_corr
inline constexpr double kBurstDecayVolts = 0.02;  // burst relaxation scale

// The low-resistance class: corrosion potential near -0.28 V, pitting from
// 0.0 V with frequent, tall bursts.
inline CurveParams params_class_304() {
  CurveParams p;
  p.e_corr_mean = -0.28;
  p.e_corr_sd = 0.006;
  p.cathodic_slope = 8.0;
  p.anodic_slope = 3.0;
  p.pit_onset = 0.0;
  p.pit_burst_rate = 30.0;
  p.pit_burst_scale = 1.2;
  p.noise_sd = 0.08;
  return p;
}

// The pitting-resistant class: corrosion potential near -0.25 V, rare and
// small bursts starting only at 0.1 V.
inline CurveParams params_class_316() {
  CurveParams p;
  p.e_corr_mean = -0.25;
  p.e_corr_sd = 0.006;
  p.cathodic_slope = 8.0;
  p.anodic_slope = 3.0;
  p.pit_onset = 0.1;
  p.pit_burst_rate = 8.0;
  p.pit_burst_scale = 0.35;
  p.noise_sd = 0.08;
  return p;
}
// -----------------------------------------------------------------------------

inline void validate_curve_params(const CurveParams& p) {
  if (!(p.cathodic_slope > 0.0) || !(p.anodic_slope > 0.0))
    throw std::invalid_argument("curve params: slopes must be positive");
  if (p.e_corr_sd < 0.0 || p.noise_sd < 0.0)
    throw std::invalid_argument("curve params: standard deviations must be >= 0");
  if (p.pit_onset < kPotentialLo || p.pit_onset > kPotentialHi)
    throw std::invalid_argument("curve params: pit_onset outside potential span");
  if (p.pit_burst_rate < 0.0 || p.pit_burst_scale < 0.0)
    throw std::invalid_argument("curve params: burst rate/scale must be >= 0");
}

inline Profile generate_curve(const std::string& class_id, std::uint64_t seed,
                              const CurveParams& prm) {
  validate_curve_params(prm);
  Xoshiro256 rng(seed);

  const double e_corr = rng.normal(prm.e_corr_mean, prm.e_corr_sd);

  struct Burst {
    double at;
    double height;
  };
  std::vector<Burst> bursts;
  const double window = kPotentialHi - prm.pit_onset;
  if (prm.pit_burst_rate > 0.0 && window > 0.0) {
    const std::uint64_t count = rng.poisson(prm.pit_burst_rate * window);
    bursts.reserve(count);
    for (std::uint64_t b = 0; b < count; ++b) {
      const double at = rng.uniform(prm.pit_onset, kPotentialHi);
      const double height = rng.exponential(prm.pit_burst_scale);
      bursts.push_back({at, height});
    }
  }

  Profile curve;
  curve.id = class_id;
  curve.label = class_id;
  curve.samples.reserve(kSamplesPerCurve);
  const double step = (kPotentialHi - kPotentialLo) / (kSamplesPerCurve - 1);
  for (int i = 0; i < kSamplesPerCurve; ++i) {
    // Accumulated rounding in lo + i*step overshoots the endpoint by a couple
    // of ulps; the last grid point must be exactly kPotentialHi so that
    // ranges ending there keep it.
    const double e =
        i == kSamplesPerCurve - 1 ? kPotentialHi : kPotentialLo + i * step;
    double value = kLogCurrentFloor + (e <= e_corr
                                           ? prm.cathodic_slope * (e_corr - e)
                                           : prm.anodic_slope * (e - e_corr));
    value += rng.normal(0.0, prm.noise_sd);
    for (const Burst& b : bursts)
      if (e >= b.at) value += b.height * std::exp(-(e - b.at) / kBurstDecayVolts);
    curve.samples.push_back({e, value});
  }
  return curve;
}

inline std::vector<Profile> generate_dataset(int n_per_class, std::uint64_t seed,
                                             const CurveParams& params_a,
                                             const CurveParams& params_b,
                                             const std::string& label_a = "304",
                                             const std::string& label_b = "316") {
  if (n_per_class < 1)
    throw std::invalid_argument("generate_dataset: n_per_class must be >= 1");
  std::vector<Profile> out;
  out.reserve(2 * static_cast<std::size_t>(n_per_class));
  const CurveParams* params[2] = {&params_a, &params_b};
  const std::string* label[2] = {&label_a, &label_b};
  for (int cls = 0; cls < 2; ++cls) {
    for (int i = 0; i < n_per_class; ++i) {
      const std::uint64_t stream =
          static_cast<std::uint64_t>(cls) * static_cast<std::uint64_t>(n_per_class) +
          static_cast<std::uint64_t>(i);
      Profile p = generate_curve(*label[cls], mix_seed(seed, stream), *params[cls]);
      char suffix[16];
      std::snprintf(suffix, sizeof suffix, "_%03d", i);
      p.id = *label[cls] + suffix;
      out.push_back(std::move(p));
    }
  }
  return out;
}

inline std::vector<Profile> generate_dataset(int n_per_class, std::uint64_t seed) {
  return generate_dataset(n_per_class, seed, params_class_304(), params_class_316());
}

}  // namespace multiq

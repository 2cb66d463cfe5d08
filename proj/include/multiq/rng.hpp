// Deterministic pseudorandom generation used everywhere randomness is needed.
//
// The generator is xoshiro256** seeded through splitmix64, with draw methods
// pinned to fixed algorithms (Box-Muller normals, Knuth Poisson, inverse-CDF
// exponentials, modulo-reduced bounded integers, backward Fisher-Yates
// shuffles). Standard-library distributions are deliberately not used: their
// output differs between standard library implementations, and fold
// assignments and synthetic datasets must be reproducible from a seed alone.

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace multiq {

namespace detail {
inline constexpr double kTwoPi = 6.283185307179586476925286766559;
}

// Advances a splitmix64 state and returns the next output word.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Order-free combination of a base seed with a stream index, so parallel
// streams (one per synthetic curve) never share generator state.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  return splitmix64_next(s);
}

class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64_next(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n); n > 0. Plain modulo reduction: the bias is
  // negligible for the small n used here and the mapping stays portable.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  // Box-Muller, cosine branch only; consumes exactly two uniforms per call.
  double normal(double mean, double sd) {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    return mean + sd * radius * std::cos(detail::kTwoPi * u2);
  }

  // Knuth's product-of-uniforms method; adequate for the small means used.
  std::uint64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double product = 1.0;
    do {
      ++k;
      product *= uniform();
    } while (product > limit);
    return k - 1;
  }

  double exponential(double mean) { return -mean * std::log(1.0 - uniform()); }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

// Backward Fisher-Yates: for i = n-1 .. 1, swap v[i] with v[below(i + 1)].
template <typename T>
void shuffle(std::vector<T>& v, Xoshiro256& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace multiq

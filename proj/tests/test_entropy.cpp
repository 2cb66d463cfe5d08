// Tsallis entropy values, the Shannon limit and the multi-q feature vector.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "multiq/entropy.hpp"
#include "multiq/rng.hpp"

using namespace multiq;

namespace {

Histogram histogram(std::vector<double> probs) {
  Histogram h;
  h.bin_count = static_cast<int>(probs.size());
  h.lo = 0.0;
  h.hi = 1.0;
  h.probs = std::move(probs);
  return h;
}

Histogram uniform_histogram(int n) {
  return histogram(std::vector<double>(static_cast<std::size_t>(n),
                                       1.0 / static_cast<double>(n)));
}

// Random distribution with a sprinkling of empty bins.
Histogram random_histogram(Xoshiro256& rng) {
  const std::size_t n = 2 + rng.below(60);
  std::vector<double> w(n, 0.0);
  double total = 0.0;
  for (double& x : w) {
    if (rng.uniform() < 0.2) continue;  // leave the bin empty
    x = rng.uniform(0.01, 1.0);
    total += x;
  }
  if (total == 0.0) {
    w[0] = 1.0;
    total = 1.0;
  }
  for (double& x : w) x /= total;
  return histogram(std::move(w));
}

double uniform_value(int n, double q) {
  if (std::abs(q - 1.0) <= 1e-9) return std::log(static_cast<double>(n));
  return (1.0 - std::pow(static_cast<double>(n), 1.0 - q)) / (q - 1.0);
}

}  // namespace

TEST_CASE("QGrid::linear builds the default 20-point grid") {
  const QGrid grid = QGrid::linear(0.1, 2.0, 0.1);
  REQUIRE(grid.values.size() == 20);
  CHECK(grid.values.front() == 0.1);
  CHECK(std::abs(grid.values.back() - 2.0) < 1e-12);
  for (std::size_t i = 1; i < grid.values.size(); ++i)
    CHECK(std::abs(grid.values[i] - grid.values[i - 1] - 0.1) < 1e-12);
}

TEST_CASE("QGrid::linear handles inexact endpoints and rejects bad ranges") {
  CHECK(QGrid::linear(0.1, 1.0, 0.1).values.size() == 10);
  CHECK(QGrid::linear(0.5, 0.5, 0.1).values.size() == 1);
  CHECK(QGrid::linear(0.1, 0.39, 0.1).values.size() == 3);
  REQUIRE_THROWS_AS(QGrid::linear(0.0, 1.0, 0.1), std::invalid_argument);
  REQUIRE_THROWS_AS(QGrid::linear(0.1, 1.0, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(QGrid::linear(1.0, 0.5, 0.1), std::invalid_argument);
}

TEST_CASE("validate_qgrid enforces positive strictly increasing values") {
  REQUIRE_THROWS_AS(validate_qgrid(QGrid{{}}), std::invalid_argument);
  REQUIRE_THROWS_AS(validate_qgrid(QGrid{{0.5, 0.5}}), std::invalid_argument);
  REQUIRE_THROWS_AS(validate_qgrid(QGrid{{-0.1, 0.5}}), std::invalid_argument);
  REQUIRE_NOTHROW(validate_qgrid(QGrid{{0.1, 1.0, 2.0}}));
}

TEST_CASE("tsallis_entropy of a deterministic distribution is zero") {
  const Histogram h = histogram({1.0, 0.0, 0.0});
  for (double q : {0.1, 0.5, 1.0, 2.0, 7.5}) CHECK(tsallis_entropy(h, q) == 0.0);
}

TEST_CASE("tsallis_entropy matches hand values on the fair coin") {
  const Histogram h = histogram({0.5, 0.5});
  CHECK(tsallis_entropy(h, 2.0) == Catch::Approx(0.5).margin(1e-15));
  CHECK(tsallis_entropy(h, 1.0) == Catch::Approx(std::log(2.0)).margin(1e-15));
}

TEST_CASE("tsallis_entropy on uniform histograms matches the closed form") {
  const QGrid grid = QGrid::linear(0.1, 2.0, 0.1);
  for (int n : {2, 10, 100}) {
    const Histogram h = uniform_histogram(n);
    for (double q : grid.values)
      CHECK(std::abs(tsallis_entropy(h, q) - uniform_value(n, q)) <= 1e-12);
  }
}

TEST_CASE("tsallis_entropy rejects non-positive q") {
  const Histogram h = uniform_histogram(4);
  REQUIRE_THROWS_AS(tsallis_entropy(h, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(tsallis_entropy(h, -1.0), std::invalid_argument);
}

TEST_CASE("tsallis_entropy validates the histogram") {
  Histogram bad = histogram({0.7, 0.7});
  REQUIRE_THROWS_AS(tsallis_entropy(bad, 0.5), std::invalid_argument);
}

TEST_CASE("entropy is non-negative and maximal at the uniform distribution") {
  Xoshiro256 rng(2024);
  const QGrid grid = QGrid::linear(0.1, 2.0, 0.1);
  for (int trial = 0; trial < 40; ++trial) {
    const Histogram h = random_histogram(rng);
    const int n = h.bin_count;
    for (double q : grid.values) {
      const double s = tsallis_entropy(h, q);
      CHECK(s >= 0.0);
      CHECK(s <= uniform_value(n, q) + 1e-12);
    }
  }
}

TEST_CASE("entropy is continuous across the q = 1 switchover") {
  Xoshiro256 rng(5150);
  for (int trial = 0; trial < 100; ++trial) {
    const Histogram h = random_histogram(rng);
    const double at_one = tsallis_entropy(h, 1.0);
    CHECK(std::abs(tsallis_entropy(h, 1.0 + 1e-6) - at_one) <= 1e-4);
    CHECK(std::abs(tsallis_entropy(h, 1.0 - 1e-6) - at_one) <= 1e-4);
    CHECK(tsallis_entropy(h, 1.0 + 1e-10) == at_one);
  }
}

TEST_CASE("entropy is invariant under bin permutations") {
  Xoshiro256 rng(31337);
  for (int trial = 0; trial < 20; ++trial) {
    Histogram h = random_histogram(rng);
    Histogram shuffled = h;
    shuffle(shuffled.probs, rng);
    for (double q : {0.1, 0.7, 1.0, 1.3, 2.0})
      CHECK(std::abs(tsallis_entropy(h, q) - tsallis_entropy(shuffled, q)) <= 1e-12);
  }
}

TEST_CASE("multiq_vector applies the entropy element-wise in grid order") {
  Xoshiro256 rng(404);
  const QGrid grid = QGrid::linear(0.1, 2.0, 0.1);
  for (int trial = 0; trial < 10; ++trial) {
    const Histogram h = random_histogram(rng);
    const FeatureVector f = multiq_vector(h, grid);
    REQUIRE(f.values.size() == grid.values.size());
    for (std::size_t i = 0; i < grid.values.size(); ++i)
      CHECK(f.values[i] == tsallis_entropy(h, grid.values[i]));
  }
}

TEST_CASE("multiq_vector matches hand values") {
  const FeatureVector zero =
      multiq_vector(histogram({1.0, 0.0}), QGrid{{0.5, 1.0, 1.5}});
  REQUIRE(zero.values == std::vector<double>{0.0, 0.0, 0.0});

  const FeatureVector coin = multiq_vector(histogram({0.5, 0.5}), QGrid{{1.0, 2.0}});
  CHECK(coin.values[0] == Catch::Approx(std::log(2.0)).margin(1e-15));
  CHECK(coin.values[1] == Catch::Approx(0.5).margin(1e-15));

  const FeatureVector four = multiq_vector(uniform_histogram(4), QGrid{{0.5, 2.0}});
  CHECK(four.values[0] == Catch::Approx(2.0).margin(1e-12));
  CHECK(four.values[1] == Catch::Approx(0.75).margin(1e-12));
}

// Profile parsing, validation, potential slicing and histogram quantization.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "multiq/profile.hpp"
#include "multiq/rng.hpp"

using namespace multiq;

namespace {

Profile make_profile(const std::vector<double>& amplitudes) {
  Profile p;
  p.id = "t";
  for (std::size_t i = 0; i < amplitudes.size(); ++i)
    p.samples.push_back({static_cast<double>(i), amplitudes[i]});
  return p;
}

// 800 samples on the uniform grid over [-0.6, 0.2], amplitude = potential.
Profile uniform_grid_profile() {
  Profile p;
  p.id = "grid";
  const double step = 0.8 / 799.0;
  for (int i = 0; i < 800; ++i) {
    const double e = i == 799 ? 0.2 : -0.6 + i * step;
    p.samples.push_back({e, e});
  }
  return p;
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "multiq_test_profile";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("parse_profile reads two-column rows in order") {
  std::istringstream in("-0.6,1.0\n-0.4,2.0\n");
  const Profile p = parse_profile(in, "mem", "p1", "A");
  REQUIRE(p.samples.size() == 2);
  CHECK(p.id == "p1");
  CHECK(p.label == "A");
  CHECK(p.samples[0].potential == -0.6);
  CHECK(p.samples[0].amplitude == 1.0);
  CHECK(p.samples[1].potential == -0.4);
  CHECK(p.samples[1].amplitude == 2.0);
}

TEST_CASE("parse_profile skips headers, comments and blank lines") {
  std::istringstream in(
      "# comment\n"
      "potential,amplitude\n"
      "\n"
      "0.0,1.5\r\n"
      "1.0,2.5\n");
  const Profile p = parse_profile(in, "mem", "p");
  REQUIRE(p.samples.size() == 2);
  CHECK(p.samples[1].amplitude == 2.5);
}

TEST_CASE("parse_profile rejects non-monotonic potentials with the line number") {
  std::istringstream in("-0.4,1.0\n-0.6,2.0\n");
  REQUIRE_THROWS_WITH(parse_profile(in, "mem", "p"),
                      Catch::Matchers::ContainsSubstring("mem:2") &&
                          Catch::Matchers::ContainsSubstring("increasing"));
}

TEST_CASE("parse_profile rejects malformed rows with the line number") {
  std::istringstream bad_number("0.0,1.0\n0.1,oops\n");
  REQUIRE_THROWS_WITH(parse_profile(bad_number, "f.csv", "p"),
                      Catch::Matchers::ContainsSubstring("f.csv:2"));
  std::istringstream no_comma("0.0 1.0\n");
  REQUIRE_THROWS_AS(parse_profile(no_comma, "f.csv", "p"), std::runtime_error);
  std::istringstream non_finite("0.0,nan\n");
  REQUIRE_THROWS_AS(parse_profile(non_finite, "f.csv", "p"), std::runtime_error);
  std::istringstream empty("# nothing\n");
  REQUIRE_THROWS_AS(parse_profile(empty, "f.csv", "p"), std::runtime_error);
}

TEST_CASE("load_profile reads an 800-row file and names it after the stem") {
  const auto path = scratch_dir() / "run_042.csv";
  {
    std::ofstream out(path);
    out << "potential,amplitude\n";
    const double step = 0.8 / 799.0;
    for (int i = 0; i < 800; ++i)
      out << (-0.6 + i * step) << "," << (i * 0.25) << "\n";
  }
  const Profile p = load_profile(path.string(), "316");
  REQUIRE(p.samples.size() == 800);
  CHECK(p.id == "run_042");
  CHECK(p.label == "316");
  CHECK(p.samples.front().potential == Catch::Approx(-0.6));
  CHECK(p.samples.back().potential == Catch::Approx(0.2));
}

TEST_CASE("load_profile reports missing files") {
  REQUIRE_THROWS_AS(load_profile("/nonexistent/nope.csv"), std::runtime_error);
}

TEST_CASE("validate_profile enforces the sample invariants") {
  Profile empty;
  empty.id = "e";
  REQUIRE_THROWS_AS(validate_profile(empty), std::runtime_error);

  Profile bad = make_profile({1.0, 2.0});
  bad.samples[1].amplitude = std::nan("");
  REQUIRE_THROWS_AS(validate_profile(bad), std::runtime_error);

  Profile flat = make_profile({1.0, 2.0});
  flat.samples[1].potential = flat.samples[0].potential;
  REQUIRE_THROWS_AS(validate_profile(flat), std::runtime_error);

  REQUIRE_NOTHROW(validate_profile(make_profile({1.0, 2.0, 3.0})));
}

TEST_CASE("slice_by_potential keeps the half-open low window") {
  const Profile p = uniform_grid_profile();
  const Profile low = slice_by_potential(p, {-0.6, -0.2});
  REQUIRE(low.samples.size() == 400);
  CHECK(low.samples.back().potential < -0.2);
  CHECK(low.id == p.id);

  const Profile high = slice_by_potential(p, {-0.2, 0.2});
  REQUIRE(high.samples.size() == 400);
  CHECK(high.samples.front().potential >= -0.2);
  CHECK(high.samples.back().potential == p.samples.back().potential);
}

TEST_CASE("slice_by_potential over the full span is the identity") {
  const Profile p = uniform_grid_profile();
  const Profile s = slice_by_potential(p, {-0.6, 0.2});
  REQUIRE(s.samples.size() == p.samples.size());
  for (std::size_t i = 0; i < p.samples.size(); ++i) {
    CHECK(s.samples[i].potential == p.samples[i].potential);
    CHECK(s.samples[i].amplitude == p.samples[i].amplitude);
  }
}

TEST_CASE("slice_by_potential rejects empty and inverted ranges") {
  const Profile p = uniform_grid_profile();
  REQUIRE_THROWS_AS(slice_by_potential(p, {0.5, 0.6}), std::runtime_error);
  REQUIRE_THROWS_AS(slice_by_potential(p, {0.2, -0.6}), std::invalid_argument);
}

TEST_CASE("quantize_histogram matches hand-counted examples") {
  const Histogram two = quantize_histogram(make_profile({0.0, 0.5, 1.0, 1.0}), 2);
  REQUIRE(two.probs == std::vector<double>{0.25, 0.75});

  const Histogram half = quantize_histogram(make_profile({0.0, 0.2, 1.0, 1.0}), 2);
  REQUIRE(half.probs == std::vector<double>{0.5, 0.5});

  const Histogram four = quantize_histogram(make_profile({0.0, 1.0, 2.0, 3.0}), 4);
  REQUIRE(four.probs == std::vector<double>{0.25, 0.25, 0.25, 0.25});

  const Histogram three = quantize_histogram(make_profile({0.0, 0.0, 0.0, 9.0}), 3);
  REQUIRE(three.probs == std::vector<double>{0.75, 0.0, 0.25});
}

TEST_CASE("quantize_histogram sends the global maximum to the last bin") {
  const Histogram h = quantize_histogram(make_profile({0.0, 10.0}), 5);
  CHECK(h.probs.front() == 0.5);
  CHECK(h.probs.back() == 0.5);
  CHECK(h.lo == 0.0);
  CHECK(h.hi == 10.0);
}

TEST_CASE("quantize_histogram collapses constant profiles to one-hot") {
  const Histogram h = quantize_histogram(make_profile({3.0, 3.0, 3.0}), 4);
  REQUIRE(h.probs == std::vector<double>{1.0, 0.0, 0.0, 0.0});
  REQUIRE_NOTHROW(validate_histogram(h));
}

TEST_CASE("quantize_histogram rejects bin_count below 2") {
  REQUIRE_THROWS_AS(quantize_histogram(make_profile({0.0, 1.0}), 1),
                    std::invalid_argument);
}

TEST_CASE("histograms of random profiles are valid distributions") {
  Xoshiro256 rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 5 + rng.below(300);
    std::vector<double> amps;
    for (std::size_t i = 0; i < n; ++i) amps.push_back(rng.uniform(-3.0, 3.0));
    const int bins = 2 + static_cast<int>(rng.below(60));
    const Histogram h = quantize_histogram(make_profile(amps), bins);
    REQUIRE_NOTHROW(validate_histogram(h));
    double sum = 0.0;
    for (double p : h.probs) {
      CHECK(p >= 0.0);
      sum += p;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("quantization is invariant under positive affine amplitude maps") {
  Xoshiro256 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> amps;
    for (int i = 0; i < 200; ++i) amps.push_back(rng.uniform(-1.0, 1.0));
    const double a = rng.uniform(0.1, 50.0);
    const double b = rng.uniform(-20.0, 20.0);
    std::vector<double> mapped;
    for (double x : amps) mapped.push_back(a * x + b);
    const Histogram h1 = quantize_histogram(make_profile(amps), 25);
    const Histogram h2 = quantize_histogram(make_profile(mapped), 25);
    REQUIRE(h1.probs == h2.probs);
  }
}

TEST_CASE("bin membership agrees with a brute-force assignment oracle") {
  Xoshiro256 rng(9001);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> amps;
    for (int i = 0; i < 150; ++i) amps.push_back(rng.uniform(-5.0, 5.0));
    const int bins = 2 + static_cast<int>(rng.below(30));
    const Profile p = make_profile(amps);
    const Histogram h = quantize_histogram(p, bins);

    double lo = amps[0], hi = amps[0];
    for (double x : amps) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    const double width = (hi - lo) / bins;
    std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
    for (double x : amps) {
      int bin = bins - 1;  // the global max lands here
      for (int k = 0; k < bins; ++k) {
        if (x >= lo + k * width && x < lo + (k + 1) * width) {
          bin = k;
          break;
        }
      }
      counts[static_cast<std::size_t>(bin)] += 1.0;
    }
    for (double& c : counts) c /= static_cast<double>(amps.size());
    REQUIRE(h.probs == counts);
  }
}

TEST_CASE("validate_histogram rejects malformed distributions") {
  Histogram h;
  h.bin_count = 2;
  h.probs = {0.5, 0.5, 0.0};
  REQUIRE_THROWS_AS(validate_histogram(h), std::invalid_argument);
  h.probs = {1.5, -0.5};
  REQUIRE_THROWS_AS(validate_histogram(h), std::invalid_argument);
  h.probs = {0.6, 0.6};
  REQUIRE_THROWS_AS(validate_histogram(h), std::invalid_argument);
  h.probs = {0.25, 0.75};
  REQUIRE_NOTHROW(validate_histogram(h));
}

TEST_CASE("signed log transform keeps sign and potentials") {
  CHECK(signed_log10(0.0) == 0.0);
  CHECK(signed_log10(-2.0) == -signed_log10(2.0));
  CHECK(signed_log10(1e-6) > 0.0);

  const Profile p = uniform_grid_profile();
  const Profile t = log_current_transform(p);
  REQUIRE(t.samples.size() == p.samples.size());
  for (std::size_t i = 0; i < p.samples.size(); ++i) {
    CHECK(t.samples[i].potential == p.samples[i].potential);
    CHECK(t.samples[i].amplitude == signed_log10(p.samples[i].amplitude));
  }
}

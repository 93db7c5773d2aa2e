#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "noma/channel.hpp"

using namespace noma;
using channel::FadingModel;

TEST_CASE("deterministic gains come back in order and cycle") {
  RngStream rng(1, 1);
  const auto model = FadingModel::deterministic({0.5, 2.0});
  CHECK(channel::sample_gains(model, rng, 2) == std::vector<double>{0.5, 2.0});
  CHECK(channel::sample_gains(model, rng, 5) == std::vector<double>{0.5, 2.0, 0.5, 2.0, 0.5});
}

TEST_CASE("sampling is reproducible for fixed seed and stream") {
  const auto model = FadingModel::rayleigh(1.0);
  RngStream a(77, 3);
  RngStream b(77, 3);
  CHECK(channel::sample_gains(model, a, 100) == channel::sample_gains(model, b, 100));
}

TEST_CASE("invalid fading models are rejected") {
  RngStream rng(1, 1);
  CHECK_THROWS_AS(FadingModel::rayleigh(0.0), std::invalid_argument);
  CHECK_THROWS_AS(FadingModel::rayleigh(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(FadingModel::deterministic({}), std::invalid_argument);
  CHECK_THROWS_AS(FadingModel::deterministic({1.0, -0.1}), std::invalid_argument);
  CHECK_THROWS_AS(channel::sample_gains(FadingModel::rayleigh(1.0), rng, 0), std::invalid_argument);
}

TEST_CASE("rayleigh power gain: mean and empirical CDF at 1e6 samples") {
  const std::size_t n = 1'000'000;
  for (double omega : {1.0, 2.5}) {
    CAPTURE(omega);
    RngStream rng(2024, 11);
    auto g = channel::sample_gains(FadingModel::rayleigh(omega), rng, n);
    double mean = 0.0;
    for (double x : g) mean += x;
    mean /= static_cast<double>(n);
    CHECK(std::abs(mean - omega) < 0.01 * omega);

    std::sort(g.begin(), g.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double f = 1.0 - std::exp(-g[i] / omega);
      ks = std::max({ks, std::abs(f - static_cast<double>(i) / n), std::abs(f - static_cast<double>(i + 1) / n)});
    }
    // Kolmogorov-Smirnov critical value at the 0.1% level.
    CHECK(ks < 1.95 / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("received SNR is power times gain") {
  CHECK(channel::to_received_snr(0.0, 3.0) == 0.0);
  CHECK(channel::to_received_snr(1.0, 1.0) == 1.0);
  CHECK(channel::to_received_snr(10.0, 0.5) == 5.0);
  CHECK(channel::db_to_linear(0.0) == 1.0);
  CHECK(channel::db_to_linear(30.0) == doctest::Approx(1000.0));

  const std::vector<double> p{10.0, 2.0};
  const std::vector<double> g{0.5, 3.0};
  const auto link = channel::make_link(p, g);
  CHECK(link.received_snr == std::vector<double>{5.0, 6.0});
  CHECK(link.gains == g);
  CHECK_THROWS_AS(channel::make_link(std::vector<double>{1.0}, g), std::invalid_argument);
}

#include "doctest.h"

#include <cmath>
#include <vector>

#include "noma/rng.hpp"

using noma::RngStream;

TEST_CASE("same keys give the same sequence") {
  RngStream a(42, 7);
  RngStream b(42, 7);
  for (int i = 0; i < 1000; ++i) CHECK(a() == b());
}

TEST_CASE("different stream ids or seeds diverge") {
  RngStream a(42, 7);
  RngStream b(42, 8);
  RngStream c(43, 7);
  int same_b = 0;
  int same_c = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a();
    same_b += x == b();
    same_c += x == c();
  }
  CHECK(same_b == 0);
  CHECK(same_c == 0);
}

TEST_CASE("uniform variates stay in range and are centred") {
  RngStream rng(1, 2);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double v = rng.uniform_open_low();
    REQUIRE(v > 0.0);
    REQUIRE(v <= 1.0);
    sum += u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("below covers its range without bias") {
  RngStream rng(9, 9);
  std::vector<int> hist(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const auto k = rng.below(7);
    REQUIRE(k < 7);
    ++hist[k];
  }
  // 10000 expected per bin, sd ~ 93.
  for (int h : hist) CHECK(std::abs(h - 10000) < 500);
  CHECK(rng.below(1) == 0);
}

TEST_CASE("adjacent streams are uncorrelated") {
  const int n = 100000;
  double sxy = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0;
  for (int t = 0; t < n; ++t) {
    RngStream a(5, noma::derive_stream(0, t));
    RngStream b(5, noma::derive_stream(0, t + 1));
    const double x = a.uniform();
    const double y = b.uniform();
    sx += x;
    sy += y;
    sxy += x * y;
    sxx += x * x;
    syy += y * y;
  }
  const double cov = sxy / n - (sx / n) * (sy / n);
  const double corr = cov / std::sqrt((sxx / n - (sx / n) * (sx / n)) * (syy / n - (sy / n) * (sy / n)));
  // 4 standard errors of a null correlation.
  CHECK(std::abs(corr) < 4.0 / std::sqrt(static_cast<double>(n)));
}

#include "doctest.h"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "noma/rng.hpp"
#include "noma/sic.hpp"

using namespace noma;
using namespace noma::sic;

TEST_CASE("sinr threshold from target rate") {
  CHECK(sinr_threshold(0.0) == 0.0);
  CHECK(sinr_threshold(1.0) == 1.0);
  CHECK(sinr_threshold(2.0) == 3.0);
  CHECK_THROWS_AS(sinr_threshold(-0.5), std::invalid_argument);

  const UserLoad load(2.0, Role::primary, 1.0);
  CHECK(load.sinr_threshold() == 3.0);
  CHECK_THROWS_AS(UserLoad(0.0, Role::primary, 1.0), std::invalid_argument);
}

TEST_CASE("stage sinr") {
  CHECK(stage_sinr(5.0, 0.0) == 5.0);
  CHECK(stage_sinr(3.0, 1.0) == 1.5);
  CHECK(stage_sinr(0.0, 7.0) == 0.0);
}

TEST_CASE("stage sinr is monotone in both arguments") {
  RngStream rng(3, 3);
  for (int i = 0; i < 10000; ++i) {
    const double a = rng.exponential(10.0);
    const double b = a + rng.exponential(10.0);
    const double i1 = rng.exponential(5.0);
    const double i2 = i1 + rng.exponential(5.0);
    REQUIRE(stage_sinr(a, i2) <= stage_sinr(a, i1));
    REQUIRE(stage_sinr(a, i1) <= stage_sinr(b, i1));
  }
}

TEST_CASE("CSI order: stronger received SNR first, ties by index") {
  CHECK(resolve_order_csi(std::vector<double>{1, 4}) == Order{1, 0});
  CHECK(resolve_order_csi(std::vector<double>{4, 4}) == Order{0, 1});
  CHECK(resolve_order_csi(std::vector<double>{9, 2}) == Order{0, 1});
}

TEST_CASE("CSI order is invariant to a common scaling") {
  RngStream rng(8, 1);
  for (int i = 0; i < 10000; ++i) {
    std::vector<double> a{rng.exponential(1.0), rng.exponential(1.0), rng.exponential(1.0)};
    const double c = std::pow(10.0, 8.0 * rng.uniform() - 4.0);
    std::vector<double> scaled{a[0] * c, a[1] * c, a[2] * c};
    REQUIRE(resolve_order_csi(a) == resolve_order_csi(scaled));
  }
}

TEST_CASE("QoS order puts the primary first") {
  CHECK(resolve_order_qos(std::vector<Role>{Role::secondary, Role::primary}) == Order{1, 0});
  CHECK(resolve_order_qos(std::vector<Role>{Role::primary, Role::secondary}) == Order{0, 1});
  CHECK_THROWS_AS(resolve_order_qos(std::vector<Role>{Role::primary, Role::primary}), std::invalid_argument);
  CHECK_THROWS_AS(resolve_order_qos(std::vector<Role>{Role::secondary, Role::secondary}), std::invalid_argument);
}

TEST_CASE("interference tolerance") {
  CHECK(interference_tolerance(4.0, 1.0) == 3.0);
  CHECK(interference_tolerance(1.0, 1.0) == 0.0);
  CHECK(interference_tolerance(0.5, 1.0) == -0.5);
  CHECK_THROWS_AS(interference_tolerance(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("hybrid order") {
  CHECK(resolve_order_hybrid(4.0, 2.0, 1.0) == FirstStage::primary);
  CHECK(resolve_order_hybrid(4.0, 5.0, 1.0) == FirstStage::secondary);
  // alpha_s equal to the tolerance keeps the primary first.
  CHECK(resolve_order_hybrid(4.0, 3.0, 1.0) == FirstStage::primary);
  CHECK_THROWS_AS(resolve_order_hybrid(4.0, 3.0, 0.0), std::invalid_argument);
}

TEST_CASE("sequential decoding examples") {
  {
    const auto o = decode(Order{0, 1}, std::vector<double>{4, 2}, std::vector<double>{1, 1});
    CHECK(o.stage_sinr[0] == doctest::Approx(4.0 / 3.0));
    CHECK(o.stage_sinr[1] == 2.0);
    CHECK(o.success == std::vector<bool>{true, true});
  }
  {
    const auto o = decode(Order{0, 1}, std::vector<double>{1, 2}, std::vector<double>{1, 1});
    CHECK(o.stage_sinr[0] == doctest::Approx(1.0 / 3.0));
    CHECK(o.success == std::vector<bool>{false, false});
  }
  {
    // user 1 decoded first: 5/(1+4) = 1 >= 0.4, then user 0 alone: 4 >= 1
    const auto o = decode(Order{1, 0}, std::vector<double>{4, 5}, std::vector<double>{1, 0.4});
    CHECK(o.stage_sinr[0] == 1.0);
    CHECK(o.stage_sinr[1] == 4.0);
    CHECK(o.success == std::vector<bool>{true, true});
  }
  CHECK_THROWS_AS(decode(Order{0, 0}, std::vector<double>{1, 1}, std::vector<double>{1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(decode(Order{0, 1}, std::vector<double>{1, 1}, std::vector<double>{1}), std::invalid_argument);
}

TEST_CASE("a failed stage fails every later stage") {
  RngStream rng(12, 0);
  for (int i = 0; i < 20000; ++i) {
    const std::size_t n = 2 + rng.below(4);
    std::vector<double> alpha(n), eps(n);
    for (std::size_t u = 0; u < n; ++u) {
      alpha[u] = rng.exponential(20.0);
      eps[u] = sinr_threshold(3.0 * rng.uniform());
    }
    const auto order = resolve_order_csi(alpha);
    const auto o = decode(order, alpha, eps);
    bool failed = false;
    for (std::size_t k = 0; k < n; ++k) {
      REQUIRE(o.stage_sinr[k] >= 0.0);
      if (failed) REQUIRE_FALSE(o.stage_success(k));
      failed = failed || !o.stage_success(k);
    }
  }
}

TEST_CASE("hybrid never loses a user that a fixed order serves") {
  RngStream rng(31337, 0);
  const std::array<Role, 2> roles{Role::primary, Role::secondary};
  std::size_t violations = 0;
  for (int i = 0; i < 100000; ++i) {
    const std::array<double, 2> eps{sinr_threshold(0.25 + 2.75 * rng.uniform()),
                                    sinr_threshold(0.25 + 2.75 * rng.uniform())};
    const std::array<double, 2> alpha{std::pow(10.0, 4.0 * rng.uniform()) * rng.exponential(1.0),
                                      std::pow(10.0, 4.0 * rng.uniform()) * rng.exponential(1.0)};
    const auto hybrid = decode_cluster(DecodingPolicy::hybrid, alpha, eps, roles);
    for (auto fixed : {DecodingPolicy::csi_based, DecodingPolicy::qos_based}) {
      const auto o = decode_cluster(fixed, alpha, eps, roles);
      for (std::size_t u = 0; u < 2; ++u) violations += (o.success[u] && !hybrid.success[u]) ? 1 : 0;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("hybrid outcome reports the primary's tolerance") {
  const std::array<Role, 2> roles{Role::primary, Role::secondary};
  const auto o = decode_cluster(DecodingPolicy::hybrid, std::array<double, 2>{4, 5}, std::array<double, 2>{1, 0.4}, roles);
  CHECK(o.tolerance == 3.0);
  CHECK(o.order == Order{1, 0});
  CHECK(std::isnan(decode_cluster(DecodingPolicy::qos_based, std::array<double, 2>{4, 5},
                                  std::array<double, 2>{1, 0.4}, roles)
                       .tolerance));
}

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "noma/semigf.hpp"
#include "noma/sic.hpp"

using namespace noma;
using namespace noma::semigf;
using channel::FadingModel;

namespace {

GbUser fixed_gb(double power, double gain, DelayClass d = DelayClass::sensitive, std::size_t orb = 0) {
  GbUser gb;
  gb.target_rate = 1.0;
  gb.delay_class = d;
  gb.transmit_power = power;
  gb.orb_id = orb;
  gb.fading = FadingModel::deterministic({gain});
  return gb;
}

GfPopulation population(std::size_t k, double rho, double pmin, double pmax, FadingModel fading) {
  GfPopulation pop;
  pop.k = k;
  pop.activation_prob = rho;
  pop.power_min = pmin;
  pop.power_max = pmax;
  pop.fading = std::move(fading);
  pop.target_rate = 1.0;
  return pop;
}

MultiOrbConfig multi(std::size_t orbs, GbUser gb, GfPopulation pop, PowerPool pool) {
  MultiOrbConfig c;
  for (std::size_t m = 0; m < orbs; ++m) {
    gb.orb_id = m;
    c.gb_users.push_back(gb);
  }
  c.population = std::move(pop);
  c.pool = std::move(pool);
  return c;
}

}  // namespace

TEST_CASE("MTI cap") {
  CHECK(compute_mti(10, 1, MtiMode::worst_case, 3, 1.0) == 3.0);
  CHECK(compute_mti(0.5, 1, MtiMode::worst_case, 5, 1.0) == 0.0);
  CHECK(compute_mti(10, 1, MtiMode::average_active, 10, 0.3) == 3.0);
  CHECK(compute_mti(10, 1, MtiMode::average_active, 10, 0.25) == 3.0);  // ceil(2.5) = 3
  CHECK(compute_mti(10, 1, MtiMode::average_active, 10, 0.01) == 9.0);  // at least one user
  CHECK_THROWS_AS(compute_mti(10, 1, MtiMode::worst_case, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(compute_mti(10, 0, MtiMode::worst_case, 3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(compute_mti(10, 1, MtiMode::average_active, 3, 0.0), std::invalid_argument);
}

TEST_CASE("MTP floor") {
  CHECK(compute_mtp(0, 1) == 1.0);
  CHECK(compute_mtp(4, 1) == 5.0);
  CHECK(compute_mtp(4, 0.5) == 2.5);
  CHECK_THROWS_AS(compute_mtp(4, 0), std::invalid_argument);
}

TEST_CASE("delay-sensitive GB users announce only the MTI") {
  const auto s = broadcast_threshold(DelayClass::sensitive, 10, 1, 1, MtiMode::worst_case, 3, 1.0);
  CHECK_FALSE(s.mtp.has_value());
  CHECK(*s.mti == 3.0);
  const auto t = broadcast_threshold(DelayClass::tolerant, 10, 1, 1, MtiMode::worst_case, 3, 1.0);
  CHECK(*t.mtp == 11.0);
  CHECK(*t.mti == 3.0);
}

TEST_CASE("no activity leaves the GB user with its OMA outage") {
  GbUser gb;
  gb.transmit_power = 3.0;
  gb.fading = FadingModel::rayleigh(1.0);
  const auto pop = population(5, 0.0, 1, 10, FadingModel::rayleigh(1.0));
  for (std::uint64_t s = 0; s < 2000; ++s) {
    RngStream rng(1, s);
    RngStream replay = rng;
    const double alpha_gb = gb.transmit_power * channel::sample_gain(gb.fading, replay, 0);
    const auto r = run_single_orb_slot(gb, pop, rng);
    REQUIRE(r.served_gf == 0);
    REQUIRE(r.gb_outage[0] == (alpha_gb < 1.0));
  }
}

TEST_CASE("GF user exactly at the MTI cap is decoded after the GB user") {
  // alpha_gb = 10, eps = 1: tolerance 9, cap 9 for K = 1; GB SINR = 10 / (1 + 9) = 1.
  const auto gb = fixed_gb(10, 1);
  const auto pop = population(1, 1.0, 9, 9, FadingModel::deterministic({1.0}));
  RngStream rng(3, 3);
  const auto r = run_single_orb_slot(gb, pop, rng);
  CHECK(r.served_gb == 1);
  CHECK(r.served_gf == 1);
  CHECK_FALSE(r.gb_outage[0]);
  CHECK(r.collisions == 0);
}

TEST_CASE("only the strongest MTP user is decoded before the GB user") {
  // alpha_gb = 1, MTP floor = 2. Received GF powers 100 and 10 both qualify.
  // Stage 1: 100 / (1 + 1 + 10) >= 1. The losing user stays on the air, so
  // the GB user then sees 1 / (1 + 10) < 1.
  const auto gb = fixed_gb(1, 1, DelayClass::tolerant);
  const auto pop = population(2, 1.0, 1, 1, FadingModel::deterministic({100.0, 10.0}));
  RngStream rng(5, 5);
  const auto r = run_single_orb_slot(gb, pop, rng);
  CHECK(r.served_gf == 1);
  CHECK(r.collisions == 1);
  CHECK(r.served_gb == 0);
}

TEST_CASE("worst-case MTI admission never breaks the GB user") {
  GbUser gb;
  gb.transmit_power = 5.0;
  gb.fading = FadingModel::rayleigh(1.0);
  std::size_t mismatches = 0;
  std::size_t admitted_any = 0;
  for (std::uint64_t s = 0; s < 20000; ++s) {
    RngStream rng(17, s);
    const auto pop = population(1 + s % 8, 0.7, 0.01, 2.0, FadingModel::rayleigh(1.0));
    RngStream replay = rng;
    const double alpha_gb = gb.transmit_power * channel::sample_gain(gb.fading, replay, 0);
    const auto r = run_single_orb_slot(gb, pop, rng, MtiMode::worst_case);
    mismatches += r.gb_outage[0] != (alpha_gb < 1.0);
    admitted_any += r.served_gf > 0;
  }
  CHECK(mismatches == 0);
  CHECK(admitted_any > 1000);
}

TEST_CASE("random ORB choice") {
  RngStream rng(8, 8);
  std::vector<std::size_t> users(50);
  std::iota(users.begin(), users.end(), 0);
  for (auto orb : assign_orbs_random(users, 1, rng)) CHECK(orb == 0);
  CHECK(assign_orbs_random({}, 4, rng).empty());
  CHECK_THROWS_AS(assign_orbs_random(users, 0, rng), std::invalid_argument);

  std::vector<std::size_t> many(100000);
  std::iota(many.begin(), many.end(), 0);
  std::vector<int> counts(10, 0);
  for (auto orb : assign_orbs_random(many, 10, rng)) ++counts[orb];
  const double sigma = std::sqrt(100000 * 0.1 * 0.9);
  for (int c : counts) CHECK(std::abs(c - 10000) < 3 * sigma);
}

TEST_CASE("power pool level choice") {
  RngStream rng(2, 2);
  const auto one = apply_power_pool(0.5, PowerPool({2.0}, 1.0), 4.0, rng);
  REQUIRE(one.has_value());
  CHECK(one->level == 0);
  CHECK(one->transmit_power == 4.0);
  CHECK_FALSE(apply_power_pool(0.5, PowerPool({2.0}, 1.0), 3.0, rng).has_value());

  const PowerPool two({2.0, 1.0}, 1.0);
  bool seen[2] = {false, false};
  for (int i = 0; i < 200; ++i) {
    const auto c = apply_power_pool(1.0, two, 10.0, rng);
    REQUIRE(c.has_value());
    REQUIRE(c->transmit_power == (c->level == 0 ? 2.0 : 1.0));
    seen[c->level] = true;
  }
  CHECK(seen[0]);
  CHECK(seen[1]);
  CHECK_THROWS_AS(apply_power_pool(0.0, two, 10.0, rng), std::invalid_argument);
}

TEST_CASE("power pool invariants") {
  CHECK_THROWS_AS(PowerPool({}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PowerPool({1.0, 2.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PowerPool({2.0, 2.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PowerPool({2.5, 2.0}, 1.0), std::invalid_argument);  // 2.5 / (1 + 2) < 1
  CHECK_NOTHROW(PowerPool({3.0, 2.0}, 1.0));                             // exactly separable
  CHECK_NOTHROW(PowerPool({4.0, 2.0}, 1.0));
  const auto layered = PowerPool::layered(4, 3.0, 1.0);
  double below = 0.0;
  for (std::size_t i = layered.size(); i-- > 0;) {
    CHECK(sic::stage_sinr(layered.levels()[i], below) >= 3.0);
    below += layered.levels()[i];
  }
}

TEST_CASE("access class barring") {
  std::vector<std::size_t> users(100000);
  std::iota(users.begin(), users.end(), 0);
  RngStream rng(4, 4);
  CHECK(apply_acb(users, {1.0}, rng) == users);
  CHECK(apply_acb(users, {0.0}, rng).empty());
  const auto half = apply_acb(users, {0.5}, rng);
  CHECK(std::abs(static_cast<double>(half.size()) / users.size() - 0.5) < 0.01);
  CHECK_THROWS_AS(apply_acb(users, {1.5}, rng), std::invalid_argument);

  for (std::uint64_t s = 0; s < 50; ++s) {
    RngStream a(9, s);
    RngStream b(9, s);
    const auto small = apply_acb(users, {0.3}, a);
    const auto large = apply_acb(users, {0.6}, b);
    REQUIRE(std::includes(large.begin(), large.end(), small.begin(), small.end()));
  }
  CHECK(AcbPolicy::ideal(10, 0.1, 400).barring_factor == doctest::Approx(0.25));
  CHECK(AcbPolicy::ideal(10, 0.1, 50).barring_factor == 1.0);
}

TEST_CASE("multi-ORB slot without GF traffic serves every GB user") {
  const auto cfg = multi(10, fixed_gb(10, 1), population(20, 0.0, 1, 10, FadingModel::rayleigh(1.0)),
                         PowerPool({100.0, 10.0}, 1.0));
  for (auto v : {Variant::plain, Variant::power_pool, Variant::power_pool_acb, Variant::gb_only}) {
    RngStream rng(1, 1);
    const auto r = run_multi_orb_slot(cfg, v, rng);
    CHECK(r.served_gb == 10);
    CHECK(r.served_gf == 0);
    CHECK(r.collisions == 0);
  }
  const auto est = connectivity(cfg, Variant::gb_only, 200, 3, 0);
  CHECK(est.mean_served == 10.0);
}

TEST_CASE("two plain GF arrivals on one ORB collide") {
  const auto cfg = multi(1, fixed_gb(10, 1), population(2, 1.0, 5, 5, FadingModel::deterministic({1.0})),
                         PowerPool({100.0, 10.0}, 1.0));
  RngStream rng(6, 6);
  const auto r = run_multi_orb_slot(cfg, Variant::plain, rng);
  CHECK(r.collisions == 1);
  CHECK(r.served_gf == 0);
  // GB: 10 / (1 + 5 + 5) < 1
  CHECK(r.served_gb == 0);
}

TEST_CASE("pool arrivals on distinct levels: the unique top occupant survives") {
  // Pool {200, 10}, P_max 100. User 0 (gain 4) reaches either level, user 1
  // (gain 0.5) only level 10. GB alpha = 10.
  //  - user 0 on 200: hybrid puts it first, 200 / (1 + 10 + 10) >= 1; GB then
  //    sees the level-10 user: 10 / 11 < 1.  -> gf 1, gb 0, no collision
  //  - user 0 on 10: two users share the top level -> collision; GB sees
  //    10 / (1 + 20) < 1.                      -> gf 0, gb 0, one collision
  const auto cfg = multi(1, fixed_gb(10, 1), population(2, 1.0, 1, 100, FadingModel::deterministic({4.0, 0.5})),
                         PowerPool({200.0, 10.0}, 1.0));
  int survived = 0;
  int collided = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    RngStream rng(12, s);
    const auto r = run_multi_orb_slot(cfg, Variant::power_pool, rng);
    REQUIRE(r.served_gb == 0);
    if (r.collisions == 0) {
      REQUIRE(r.served_gf == 1);
      ++survived;
    } else {
      REQUIRE(r.collisions == 1);
      REQUIRE(r.served_gf == 0);
      ++collided;
    }
  }
  CHECK(survived > 50);
  CHECK(collided > 50);
}

TEST_CASE("no ORB serves more than two users") {
  GbUser gb;
  gb.transmit_power = 10;
  gb.fading = FadingModel::rayleigh(1.0);
  const auto cfg = multi(4, gb, population(30, 0.3, 1, 1000, FadingModel::rayleigh(1.0)),
                         PowerPool({5000.0, 300.0, 100.0}, 1.0));
  for (std::uint64_t s = 0; s < 3000; ++s) {
    for (auto v : {Variant::plain, Variant::power_pool, Variant::power_pool_acb, Variant::gb_only}) {
      RngStream rng(44, s);
      const auto r = run_multi_orb_slot(cfg, v, rng);
      std::size_t total = 0;
      for (auto n : r.served_per_orb) {
        REQUIRE(n <= 2);
        total += n;
      }
      REQUIRE(total == r.served());
    }
  }
}

TEST_CASE("connectivity is independent of the worker count") {
  GbUser gb;
  gb.transmit_power = 10;
  gb.fading = FadingModel::rayleigh(1.0);
  const auto cfg = multi(10, gb, population(200, 0.1, 1, 10000, FadingModel::rayleigh(1.0)),
                         PowerPool({5000.0, 300.0, 100.0}, 1.0));
  const auto a = connectivity(cfg, Variant::power_pool_acb, 999, 5, 1, 1);
  const auto b = connectivity(cfg, Variant::power_pool_acb, 999, 5, 1, 5);
  CHECK(a.mean_served == b.mean_served);
  CHECK(a.ci_low == b.ci_low);
  CHECK_THROWS_AS(connectivity(cfg, Variant::plain, 0, 5, 1), std::invalid_argument);
}

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "noma/channel.hpp"
#include "noma/rng.hpp"
#include "noma/stats.hpp"

namespace noma::semigf {

enum class DelayClass { sensitive, tolerant };
enum class MtiMode { worst_case, average_active };
enum class Variant { plain, power_pool, power_pool_acb, gb_only };

std::string_view to_string(Variant v);
std::string_view to_string(DelayClass d);
std::string_view to_string(MtiMode m);

struct GbUser {
  double target_rate = 1.0;
  DelayClass delay_class = DelayClass::sensitive;
  double transmit_power = 1.0;
  std::size_t orb_id = 0;
  channel::FadingModel fading = channel::FadingModel::rayleigh(1.0);

  void validate() const;
};

/// Potential grant-free users (PGFUs) contending for access.
struct GfPopulation {
  std::size_t k = 1;
  double activation_prob = 0.0;
  double power_min = 1.0;
  double power_max = 1.0;
  channel::FadingModel fading = channel::FadingModel::rayleigh(1.0);
  double target_rate = 1.0;

  void validate() const;
};

/// What the base station announces for one ORB. Linear received-power units.
struct BroadcastThreshold {
  std::optional<double> mtp;  // GF users at or above this are decoded before the GB user
  std::optional<double> mti;  // GF users at or below this are decoded after the GB user
};

/// Layered target receive powers, strictly decreasing, each decodable while
/// every lower level is still interference.
class PowerPool {
 public:
  PowerPool(std::vector<double> levels, double sinr_threshold);

  /// Levels built bottom-up: each is `headroom` times the minimum that keeps
  /// it decodable over the levels below. headroom >= 1.
  static PowerPool layered(std::size_t count, double sinr_threshold, double headroom);

  std::span<const double> levels() const { return levels_; }
  std::size_t size() const { return levels_.size(); }

 private:
  std::vector<double> levels_;
};

struct PoolChoice {
  std::size_t level = 0;
  double transmit_power = 0.0;
};

struct AcbPolicy {
  double barring_factor = 1.0;

  void validate() const;
  /// Load-matched barring: min(1, orbs / (rho * K)).
  static AcbPolicy ideal(std::size_t orbs, double activation_prob, std::size_t k);
};

struct SlotResult {
  std::size_t served_gf = 0;
  std::size_t served_gb = 0;
  std::size_t collisions = 0;
  std::vector<bool> gb_outage;               // per ORB
  std::vector<std::uint8_t> served_per_orb;  // per ORB

  std::size_t served() const { return served_gf + served_gb; }
};

double compute_mti(double alpha_gb, double eps_gb, MtiMode mode, std::size_t k, double activation_prob);

double compute_mtp(double alpha_gb, double eps_gf);

/// Delay-tolerant GB users announce both thresholds, delay-sensitive ones
/// only the MTI.
BroadcastThreshold broadcast_threshold(DelayClass delay_class, double alpha_gb, double eps_gb,
                                       double eps_gf, MtiMode mode, std::size_t k,
                                       double activation_prob);

/// One slot on a single ORB whose PGFU count is known in advance.
SlotResult run_single_orb_slot(const GbUser& gb, const GfPopulation& pop, RngStream& rng,
                               MtiMode mode = MtiMode::worst_case);

/// Uniform ORB index per active user, in the order given.
std::vector<std::size_t> assign_orbs_random(std::span<const std::size_t> active_users, std::size_t orbs,
                                            RngStream& rng);

/// Uniformly random level among those reachable by channel inversion
/// (level / gain <= power_max). `u` is a uniform draw in [0, 1).
std::optional<PoolChoice> choose_pool_level(double gain, const PowerPool& pool, double power_max, double u);
std::optional<PoolChoice> apply_power_pool(double gain, const PowerPool& pool, double power_max, RngStream& rng);

inline bool acb_permits(double u, const AcbPolicy& policy) { return u < policy.barring_factor; }
std::vector<std::size_t> apply_acb(std::span<const std::size_t> active_users, const AcbPolicy& policy,
                                   RngStream& rng);

struct MultiOrbConfig {
  std::vector<GbUser> gb_users;  // one per ORB, gb_users[m].orb_id == m
  GfPopulation population;
  PowerPool pool = PowerPool({1.0}, 1.0);
  /// Barring factor for the power_pool_acb variant; empty means load-matched.
  std::optional<double> barring_factor;

  std::size_t orbs() const { return gb_users.size(); }
  AcbPolicy acb() const;
  void validate() const;
};

/// One multi-ORB slot. Every variant consumes the same random draws in the
/// same order, so variants run on the same stream see the same realization.
SlotResult run_multi_orb_slot(const MultiOrbConfig& config, Variant variant, RngStream& rng);

struct ConnectivityEstimate {
  double mean_served = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t slots = 0;
};

/// Mean served users per slot over `slots` independent slots; slot s uses
/// RngStream(master_seed, derive_stream(point_key, s)).
ConnectivityEstimate connectivity(const MultiOrbConfig& config, Variant variant, std::uint64_t slots,
                                  std::uint64_t master_seed, std::uint64_t point_key, unsigned workers = 1);

}  // namespace noma::semigf

#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace noma::sic {

enum class Role { primary, secondary };
enum class DecodingPolicy { csi_based, qos_based, hybrid };

std::string_view to_string(DecodingPolicy policy);
std::string_view to_string(Role role);

double sinr_threshold(double rate);

/// QoS requirement of one user in a cluster. The SINR threshold is always
/// derived from the rate, never stored.
class UserLoad {
 public:
  UserLoad(double target_rate, Role role, double transmit_power);

  double target_rate() const { return target_rate_; }
  double sinr_threshold() const { return sic::sinr_threshold(target_rate_); }
  Role role() const { return role_; }
  double transmit_power() const { return transmit_power_; }

 private:
  double target_rate_;
  Role role_;
  double transmit_power_;
};

using Order = std::vector<std::size_t>;

struct DecodingOutcome {
  Order order;
  /// SINR at each stage, indexed by stage. Stages after a failure hold the
  /// nominal value assuming the earlier stages had been cancelled.
  std::vector<double> stage_sinr;
  /// Indexed by user.
  std::vector<bool> success;
  /// Primary user's interference tolerance when a hybrid order was
  /// resolved; NaN otherwise.
  double tolerance = std::numeric_limits<double>::quiet_NaN();

  bool stage_success(std::size_t stage) const { return success[order[stage]]; }
};

inline double stage_sinr(double alpha_target, double interference_sum) {
  return alpha_target / (1.0 + interference_sum);
}

/// Descending received SNR; ties keep the lower index first.
Order resolve_order_csi(std::span<const double> alpha);

/// The primary user first, the rest in index order.
Order resolve_order_qos(std::span<const Role> roles);

double interference_tolerance(double alpha_primary, double eps_primary);

enum class FirstStage { primary, secondary };

/// The primary goes first when it survives the secondary's interference
/// (alpha_secondary <= tolerance), otherwise the secondary goes first.
FirstStage resolve_order_hybrid(double alpha_primary, double alpha_secondary, double eps_primary);

/// Sequential SIC. A user at stage k sees every user not yet cancelled as
/// interference; the first failing stage fails every later stage.
DecodingOutcome decode(std::span<const std::size_t> order, std::span<const double> alpha,
                       std::span<const double> eps);

/// Resolves the order for a two-user cluster under `policy` and decodes it.
DecodingOutcome decode_cluster(DecodingPolicy policy, std::span<const double> alpha,
                               std::span<const double> eps, std::span<const Role> roles);

}  // namespace noma::sic

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace noma::downlink {

/// Latency/reliability-constrained IoT sensor. Blocklength stands in for
/// latency, decoding error probability for reliability.
struct SensorProfile {
  double payload_bits = 1.0;
  double blocklength = 1.0;
  double decoding_error = 1e-5;
  double channel_gain = 1.0;

  void validate() const;
};

struct BroadbandProfile {
  double target_rate = 1.0;
  double channel_gain = 1.0;

  void validate() const;
};

struct ClusterPlan {
  std::size_t sensor = 0;     // index into the sensor list
  std::size_t broadband = 0;  // index into the broadband list
  double p_sensor = 0.0;
  double p_broadband = 0.0;
  double required_total = 0.0;
};

struct Pairing {
  std::vector<ClusterPlan> clusters;  // powers still zero
  std::vector<std::size_t> unpaired_sensors;
  std::vector<std::size_t> unpaired_broadbands;
};

/// Q^{-1}(delta), the inverse Gaussian tail function.
double inverse_q(double delta);

/// Normal-approximation finite-blocklength rate in bits/s/Hz, clamped at 0:
/// log2(1+g) - sqrt(V/n) Q^{-1}(delta) log2(e), V = 1 - 1/(1+g)^2.
double fb_rate(double sinr, double blocklength, double delta);

/// Smallest SINR with fb_rate >= b/n (bisection, relative tolerance 1e-9),
/// never below the Shannon threshold 2^(b/n) - 1.
double required_sensor_sinr(double payload_bits, double blocklength, double delta);
double required_sensor_sinr(const SensorProfile& sensor);

/// Sensors by descending gain, each taking the weakest still-free broadband
/// user whose gain strictly exceeds its own. Ties go to the lower index.
Pairing pair_users(std::span<const SensorProfile> sensors, std::span<const BroadbandProfile> broadbands);

struct PowerSplit {
  double p_sensor = 0.0;
  double p_broadband = 0.0;
};

/// Minimal powers meeting both QoS targets with the sensor decoded first at
/// both receivers. Empty when the split is infeasible.
std::optional<PowerSplit> q_pa(double gain_sensor, double gain_broadband, double eps_sensor,
                               double eps_broadband);

/// Fills in the powers of every paired cluster. Clusters for which q_pa is
/// infeasible are dropped and their members reported unpaired.
Pairing plan_clusters(std::span<const SensorProfile> sensors, std::span<const BroadbandProfile> broadbands);

/// Indices of the admitted clusters: ascending required_total (ties by
/// index) while the running total stays within budget.
std::vector<std::size_t> maximize_connectivity(std::span<const ClusterPlan> clusters, double power_budget);

}  // namespace noma::downlink

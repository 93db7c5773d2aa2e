#include "noma/downlink.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <boost/math/special_functions/erf.hpp>

#include "noma/channel.hpp"
#include "noma/sic.hpp"

namespace noma::downlink {

namespace {

void check_fb_args(double blocklength, double delta) {
  if (!(blocklength >= 1.0)) throw std::invalid_argument("blocklength must be >= 1");
  if (!(delta > 0.0 && delta < 0.5)) throw std::invalid_argument("decoding error must lie in (0, 0.5)");
}

double bump_until(double power, auto&& satisfied) {
  while (!satisfied(power)) power = std::nextafter(power, INFINITY);
  return power;
}

}  // namespace

void SensorProfile::validate() const {
  if (!(payload_bits >= 1.0)) throw std::invalid_argument("sensor payload_bits must be >= 1");
  check_fb_args(blocklength, decoding_error);
  if (!(channel_gain >= 0.0) || !std::isfinite(channel_gain)) {
    throw std::invalid_argument("sensor channel gain must be finite and >= 0");
  }
}

void BroadbandProfile::validate() const {
  if (!(target_rate > 0.0)) throw std::invalid_argument("broadband target_rate must be > 0");
  if (!(channel_gain >= 0.0) || !std::isfinite(channel_gain)) {
    throw std::invalid_argument("broadband channel gain must be finite and >= 0");
  }
}

double inverse_q(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("inverse_q needs delta in (0, 1)");
  return std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * delta);
}

double fb_rate(double sinr, double blocklength, double delta) {
  check_fb_args(blocklength, delta);
  if (!(sinr >= 0.0)) throw std::invalid_argument("fb_rate needs sinr >= 0");
  const double capacity = std::log2(1.0 + sinr);
  const double dispersion = 1.0 - 1.0 / ((1.0 + sinr) * (1.0 + sinr));
  const double penalty = std::sqrt(dispersion / blocklength) * inverse_q(delta) * std::numbers::log2e;
  return std::max(0.0, capacity - penalty);
}

double required_sensor_sinr(double payload_bits, double blocklength, double delta) {
  SensorProfile{payload_bits, blocklength, delta, 0.0}.validate();
  const double target = payload_bits / blocklength;
  const double shannon = std::exp2(target) - 1.0;

  // fb_rate is 0 at sinr = 0 and eventually increasing, so the first
  // crossing of a positive target is bracketed by [0, hi].
  double lo = 0.0;
  double hi = std::max(1.0, 2.0 * shannon);
  while (fb_rate(hi, blocklength, delta) < target) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 1e-9 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (fb_rate(mid, blocklength, delta) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return std::max(hi, shannon);
}

double required_sensor_sinr(const SensorProfile& sensor) {
  return required_sensor_sinr(sensor.payload_bits, sensor.blocklength, sensor.decoding_error);
}

Pairing pair_users(std::span<const SensorProfile> sensors, std::span<const BroadbandProfile> broadbands) {
  for (const auto& s : sensors) {
    if (!std::isfinite(s.channel_gain)) throw std::invalid_argument("sensor gains must be finite");
  }
  for (const auto& b : broadbands) {
    if (!std::isfinite(b.channel_gain)) throw std::invalid_argument("broadband gains must be finite");
  }

  std::vector<std::size_t> s_order(sensors.size());
  std::iota(s_order.begin(), s_order.end(), std::size_t{0});
  std::stable_sort(s_order.begin(), s_order.end(), [&](std::size_t a, std::size_t b) {
    return sensors[a].channel_gain > sensors[b].channel_gain;
  });
  // Broadband users weakest first; the first free one that beats the sensor
  // is the weakest feasible partner.
  std::vector<std::size_t> b_order(broadbands.size());
  std::iota(b_order.begin(), b_order.end(), std::size_t{0});
  std::stable_sort(b_order.begin(), b_order.end(), [&](std::size_t a, std::size_t b) {
    return broadbands[a].channel_gain < broadbands[b].channel_gain;
  });

  Pairing out;
  std::vector<bool> taken(broadbands.size(), false);
  for (std::size_t s : s_order) {
    bool matched = false;
    for (std::size_t b : b_order) {
      if (!taken[b] && broadbands[b].channel_gain > sensors[s].channel_gain) {
        taken[b] = true;
        out.clusters.push_back({s, b, 0.0, 0.0, 0.0});
        matched = true;
        break;
      }
    }
    if (!matched) out.unpaired_sensors.push_back(s);
  }
  for (std::size_t b = 0; b < broadbands.size(); ++b) {
    if (!taken[b]) out.unpaired_broadbands.push_back(b);
  }
  return out;
}

std::optional<PowerSplit> q_pa(double gain_sensor, double gain_broadband, double eps_sensor,
                               double eps_broadband) {
  if (!(eps_sensor > 0.0) || !(eps_broadband > 0.0)) {
    throw std::invalid_argument("q_pa needs positive SINR thresholds");
  }
  if (!(gain_sensor > 0.0) || !std::isfinite(gain_broadband)) return std::nullopt;
  if (!(gain_broadband > gain_sensor)) {
    throw std::invalid_argument("q_pa needs the broadband gain to exceed the sensor gain");
  }
  using channel::to_received_snr;
  using sic::stage_sinr;

  // Broadband user after SIC: interference free.
  const double p_b = bump_until(eps_broadband / gain_broadband, [&](double p) {
    return stage_sinr(to_received_snr(p, gain_broadband), 0.0) >= eps_broadband;
  });
  // Sensor at its own receiver, broadband signal as interference.
  const double p_s = bump_until(eps_sensor * (p_b * gain_sensor + 1.0) / gain_sensor, [&](double p) {
    return stage_sinr(to_received_snr(p, gain_sensor), to_received_snr(p_b, gain_sensor)) >= eps_sensor;
  });
  // First SIC stage at the broadband receiver; implied by g_b > g_s.
  if (stage_sinr(to_received_snr(p_s, gain_broadband), to_received_snr(p_b, gain_broadband)) < eps_sensor) {
    return std::nullopt;
  }
  return PowerSplit{p_s, p_b};
}

Pairing plan_clusters(std::span<const SensorProfile> sensors, std::span<const BroadbandProfile> broadbands) {
  for (const auto& s : sensors) s.validate();
  for (const auto& b : broadbands) b.validate();
  Pairing paired = pair_users(sensors, broadbands);
  Pairing out;
  out.unpaired_sensors = paired.unpaired_sensors;
  out.unpaired_broadbands = paired.unpaired_broadbands;
  for (ClusterPlan c : paired.clusters) {
    const SensorProfile& s = sensors[c.sensor];
    const BroadbandProfile& b = broadbands[c.broadband];
    const auto split =
        q_pa(s.channel_gain, b.channel_gain, required_sensor_sinr(s), sic::sinr_threshold(b.target_rate));
    if (!split) {
      out.unpaired_sensors.push_back(c.sensor);
      out.unpaired_broadbands.push_back(c.broadband);
      continue;
    }
    c.p_sensor = split->p_sensor;
    c.p_broadband = split->p_broadband;
    c.required_total = c.p_sensor + c.p_broadband;
    out.clusters.push_back(c);
  }
  std::sort(out.unpaired_sensors.begin(), out.unpaired_sensors.end());
  std::sort(out.unpaired_broadbands.begin(), out.unpaired_broadbands.end());
  return out;
}

std::vector<std::size_t> maximize_connectivity(std::span<const ClusterPlan> clusters, double power_budget) {
  std::vector<std::size_t> order(clusters.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return clusters[a].required_total < clusters[b].required_total;
  });
  std::vector<std::size_t> admitted;
  double used = 0.0;
  for (std::size_t i : order) {
    if (used + clusters[i].required_total > power_budget) break;
    used += clusters[i].required_total;
    admitted.push_back(i);
  }
  return admitted;
}

}  // namespace noma::downlink

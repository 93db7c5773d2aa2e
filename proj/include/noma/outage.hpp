#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "noma/channel.hpp"
#include "noma/sic.hpp"

namespace noma::outage {

// Throughout this module user 0 is the primary and user 1 the secondary.

struct OutageEstimate {
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;

  static OutageEstimate from_counts(std::uint64_t failures, std::uint64_t trials);
  double ci_width() const { return ci_high - ci_low; }
};

/// Outage of one policy: per user, and per SIC stage (stage 0 is whichever
/// user the policy decoded first in that trial).
struct PolicyOutage {
  sic::DecodingPolicy policy = sic::DecodingPolicy::hybrid;
  std::vector<OutageEstimate> user;
  std::vector<OutageEstimate> stage;
};

/// Per-trial random streams: trial t of the sweep point keyed `point_key`
/// draws from RngStream(master_seed, derive_stream(point_key, t)).
struct TrialStreams {
  std::uint64_t master_seed = 0;
  std::uint64_t point_key = 0;

  RngStream stream(std::uint64_t trial) const;
};

struct LinkSetup {
  std::vector<double> rates;                  // bits/s/Hz, per user
  std::vector<double> powers;                 // linear transmit power, per user
  std::vector<channel::FadingModel> fading;   // per user

  void validate() const;
};

/// Every listed policy is evaluated on the same per-trial realizations.
std::vector<PolicyOutage> estimate_outage(std::span<const sic::DecodingPolicy> policies,
                                          const LinkSetup& link, std::uint64_t trials,
                                          const TrialStreams& streams, unsigned workers = 1);

PolicyOutage estimate_outage(sic::DecodingPolicy policy, const LinkSetup& link,
                             std::uint64_t trials, const TrialStreams& streams,
                             unsigned workers = 1);

/// Equal-power, power-to-infinity failure events evaluated from the gains
/// alone. Deliberately does not go through sic::decode.
PolicyOutage asymptotic_floor_oracle(sic::DecodingPolicy policy, std::span<const double> rates,
                                     std::span<const channel::FadingModel> fading,
                                     std::uint64_t trials, const TrialStreams& streams,
                                     unsigned workers = 1);

struct SweepSpec {
  std::vector<double> snr_db;
  std::uint64_t trials_per_point = 1;
  std::vector<double> rates;
  std::vector<sic::DecodingPolicy> policies;
  std::vector<channel::FadingModel> fading;
  /// Per-user transmit power offset relative to the grid SNR; empty means 0 dB.
  std::vector<double> power_offset_db;
  std::uint64_t master_seed = 0;

  void validate() const;
  LinkSetup link_at(std::size_t point) const;
};

struct OutageCurve {
  std::vector<double> snr_db;
  std::vector<sic::DecodingPolicy> policies;
  /// cells[point][policy index]
  std::vector<std::vector<PolicyOutage>> cells;

  const OutageEstimate& at(std::size_t point, std::size_t policy, std::size_t user) const {
    return cells[point][policy].user[user];
  }
};

OutageCurve snr_sweep(const SweepSpec& spec, unsigned workers = 1);

struct CurvePoint {
  double snr_db = 0.0;
  OutageEstimate estimate;
};

enum class FloorKind { floored, decaying, inconclusive };

struct FloorVerdict {
  FloorKind kind = FloorKind::inconclusive;
  /// Estimated floor when kind == floored.
  double value = 0.0;
};

std::string_view to_string(FloorKind kind);

/// Classifies the high-SNR tail of a curve (points ascending in SNR, at
/// least 3 of them spanning at least 20 dB). Decade pairs are formed walking
/// back from the last point in steps of at least 10 dB.
FloorVerdict detect_floor(std::span<const CurvePoint> points);

FloorVerdict detect_floor(const OutageCurve& curve, std::size_t policy, std::size_t user);

}  // namespace noma::outage

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "noma/rng.hpp"

namespace noma::channel {

enum class FadingKind { rayleigh, deterministic };

/// Channel power-gain model. Rayleigh fading is carried directly as its
/// exponential power gain with mean `mean_gain`; deterministic gains are
/// cycled in order.
struct FadingModel {
  FadingKind kind = FadingKind::rayleigh;
  double mean_gain = 1.0;
  std::vector<double> fixed_gains;

  static FadingModel rayleigh(double mean_gain);
  static FadingModel deterministic(std::vector<double> gains);

  /// Throws std::invalid_argument when the invariants do not hold.
  void validate() const;
};

/// Per-user gains and received SNRs (noise power 1) for one resource block.
struct LinkRealization {
  std::vector<double> gains;
  std::vector<double> received_snr;
};

std::vector<double> sample_gains(const FadingModel& model, RngStream& rng, std::size_t n);

/// Single draw; for deterministic models returns fixed_gains[index % size].
double sample_gain(const FadingModel& model, RngStream& rng, std::size_t index = 0);

inline double to_received_snr(double transmit_power, double gain) { return transmit_power * gain; }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

LinkRealization make_link(std::span<const double> transmit_powers, std::span<const double> gains);

}  // namespace noma::channel

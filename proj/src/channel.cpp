#include "noma/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace noma::channel {

FadingModel FadingModel::rayleigh(double mean_gain) {
  FadingModel m;
  m.kind = FadingKind::rayleigh;
  m.mean_gain = mean_gain;
  m.validate();
  return m;
}

FadingModel FadingModel::deterministic(std::vector<double> gains) {
  FadingModel m;
  m.kind = FadingKind::deterministic;
  m.fixed_gains = std::move(gains);
  m.validate();
  return m;
}

void FadingModel::validate() const {
  if (kind == FadingKind::rayleigh) {
    if (!(mean_gain > 0.0) || !std::isfinite(mean_gain)) {
      throw std::invalid_argument("rayleigh fading requires mean_gain > 0");
    }
    return;
  }
  if (fixed_gains.empty()) {
    throw std::invalid_argument("deterministic fading requires at least one fixed gain");
  }
  for (double g : fixed_gains) {
    if (!(g >= 0.0) || !std::isfinite(g)) {
      throw std::invalid_argument("deterministic fading gains must be finite and >= 0");
    }
  }
}

double sample_gain(const FadingModel& model, RngStream& rng, std::size_t index) {
  if (model.kind == FadingKind::rayleigh) {
    return rng.exponential(model.mean_gain);
  }
  return model.fixed_gains[index % model.fixed_gains.size()];
}

std::vector<double> sample_gains(const FadingModel& model, RngStream& rng, std::size_t n) {
  model.validate();
  if (n == 0) {
    throw std::invalid_argument("sample_gains requires n >= 1");
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = sample_gain(model, rng, i);
  }
  return out;
}

LinkRealization make_link(std::span<const double> transmit_powers, std::span<const double> gains) {
  if (transmit_powers.size() != gains.size()) {
    throw std::invalid_argument("make_link: powers and gains must have equal length");
  }
  LinkRealization link;
  link.gains.assign(gains.begin(), gains.end());
  link.received_snr.resize(gains.size());
  for (std::size_t i = 0; i < gains.size(); ++i) {
    if (!std::isfinite(transmit_powers[i]) || !std::isfinite(gains[i]) || transmit_powers[i] < 0.0 ||
        gains[i] < 0.0) {
      throw std::invalid_argument("make_link: powers and gains must be finite and >= 0");
    }
    link.received_snr[i] = to_received_snr(transmit_powers[i], gains[i]);
  }
  return link;
}

}  // namespace noma::channel

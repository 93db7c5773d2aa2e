#include "noma/outage.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "noma/parallel.hpp"
#include "noma/stats.hpp"

namespace noma::outage {

namespace {

constexpr std::size_t kUsers = 2;
constexpr std::array<sic::Role, kUsers> kRoles{sic::Role::primary, sic::Role::secondary};

// failures per policy: [user0, user1, stage0, stage1]
using Counts = std::vector<std::uint64_t>;

void add_counts(Counts& into, const Counts& from) {
  for (std::size_t i = 0; i < into.size(); ++i) into[i] += from[i];
}

PolicyOutage to_policy_outage(sic::DecodingPolicy policy, const Counts& counts, std::size_t offset,
                              std::uint64_t trials) {
  PolicyOutage out;
  out.policy = policy;
  for (std::size_t u = 0; u < kUsers; ++u) {
    out.user.push_back(OutageEstimate::from_counts(counts[offset + u], trials));
  }
  for (std::size_t k = 0; k < kUsers; ++k) {
    out.stage.push_back(OutageEstimate::from_counts(counts[offset + kUsers + k], trials));
  }
  return out;
}

std::array<double, kUsers> thresholds(std::span<const double> rates) {
  return {sic::sinr_threshold(rates[0]), sic::sinr_threshold(rates[1])};
}

}  // namespace

OutageEstimate OutageEstimate::from_counts(std::uint64_t failures, std::uint64_t trials) {
  const stats::Interval ci = stats::wilson(failures, trials);
  OutageEstimate e;
  e.trials = trials;
  e.failures = failures;
  e.p_hat = static_cast<double>(failures) / static_cast<double>(trials);
  e.ci_low = ci.low;
  e.ci_high = ci.high;
  return e;
}

RngStream TrialStreams::stream(std::uint64_t trial) const {
  return RngStream(master_seed, derive_stream(point_key, trial));
}

void LinkSetup::validate() const {
  if (rates.size() != kUsers || powers.size() != kUsers || fading.size() != kUsers) {
    throw std::invalid_argument("outage link setup expects exactly two users");
  }
  for (double r : rates) {
    if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("target rates must be > 0");
  }
  for (double p : powers) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("powers must be finite and >= 0");
  }
  for (const auto& f : fading) f.validate();
}

std::vector<PolicyOutage> estimate_outage(std::span<const sic::DecodingPolicy> policies,
                                          const LinkSetup& link, std::uint64_t trials,
                                          const TrialStreams& streams, unsigned workers) {
  if (trials == 0) throw std::invalid_argument("estimate_outage requires trials >= 1");
  link.validate();
  const auto eps = thresholds(link.rates);
  const std::size_t stride = 2 * kUsers;

  auto body = [&](std::size_t begin, std::size_t end, Counts& acc) {
    std::array<double, kUsers> alpha{};
    for (std::size_t t = begin; t < end; ++t) {
      RngStream rng = streams.stream(t);
      for (std::size_t u = 0; u < kUsers; ++u) {
        alpha[u] = channel::to_received_snr(link.powers[u], channel::sample_gain(link.fading[u], rng, t));
      }
      for (std::size_t p = 0; p < policies.size(); ++p) {
        const sic::DecodingOutcome o = sic::decode_cluster(policies[p], alpha, eps, kRoles);
        for (std::size_t u = 0; u < kUsers; ++u) {
          acc[p * stride + u] += o.success[u] ? 0 : 1;
          acc[p * stride + kUsers + u] += o.stage_success(u) ? 0 : 1;
        }
      }
    }
  };
  const Counts counts = parallel_reduce(static_cast<std::size_t>(trials), workers,
                                        Counts(policies.size() * stride, 0), body, add_counts);
  std::vector<PolicyOutage> out;
  for (std::size_t p = 0; p < policies.size(); ++p) {
    out.push_back(to_policy_outage(policies[p], counts, p * stride, trials));
  }
  return out;
}

PolicyOutage estimate_outage(sic::DecodingPolicy policy, const LinkSetup& link, std::uint64_t trials,
                             const TrialStreams& streams, unsigned workers) {
  const std::array<sic::DecodingPolicy, 1> one{policy};
  return estimate_outage(one, link, trials, streams, workers).front();
}

PolicyOutage asymptotic_floor_oracle(sic::DecodingPolicy policy, std::span<const double> rates,
                                     std::span<const channel::FadingModel> fading,
                                     std::uint64_t trials, const TrialStreams& streams,
                                     unsigned workers) {
  if (rates.size() != kUsers || fading.size() != kUsers) {
    throw std::invalid_argument("floor oracle expects exactly two users");
  }
  if (trials == 0) throw std::invalid_argument("floor oracle requires trials >= 1");
  for (const auto& f : fading) f.validate();
  const auto eps = thresholds(rates);

  // As P grows, a stage facing interference has SINR -> g_target / g_other,
  // and a stage with nothing left to interfere succeeds.
  auto body = [&](std::size_t begin, std::size_t end, Counts& acc) {
    for (std::size_t t = begin; t < end; ++t) {
      RngStream rng = streams.stream(t);
      const double gp = channel::sample_gain(fading[0], rng, t);
      const double gs = channel::sample_gain(fading[1], rng, t);
      bool fail_p = false;
      bool fail_s = false;
      bool fail_first = false;
      switch (policy) {
        case sic::DecodingPolicy::qos_based:
          fail_first = gp < eps[0] * gs;
          fail_p = fail_s = fail_first;
          break;
        case sic::DecodingPolicy::csi_based:
          if (gp >= gs) {
            fail_first = gp < eps[0] * gs;
          } else {
            fail_first = gs < eps[1] * gp;
          }
          fail_p = fail_s = fail_first;
          break;
        case sic::DecodingPolicy::hybrid:
          if (eps[0] * gs <= gp) {
            fail_first = false;
          } else {
            fail_first = gs < eps[1] * gp;
          }
          fail_p = fail_s = fail_first;
          break;
      }
      acc[0] += fail_p;
      acc[1] += fail_s;
      acc[2] += fail_first;
      // The second stage never fails on its own in the limit.
      acc[3] += fail_first;
    }
  };
  const Counts counts = parallel_reduce(static_cast<std::size_t>(trials), workers,
                                        Counts(2 * kUsers, 0), body, add_counts);
  return to_policy_outage(policy, counts, 0, trials);
}

void SweepSpec::validate() const {
  if (snr_db.empty()) throw std::invalid_argument("snr grid must not be empty");
  for (std::size_t i = 1; i < snr_db.size(); ++i) {
    if (!(snr_db[i] > snr_db[i - 1])) throw std::invalid_argument("snr grid must be strictly increasing");
  }
  if (trials_per_point < 1) throw std::invalid_argument("trials >= 1");
  if (policies.empty()) throw std::invalid_argument("at least one policy is required");
  if (!power_offset_db.empty() && power_offset_db.size() != kUsers) {
    throw std::invalid_argument("power offsets must list one value per user");
  }
  link_at(0).validate();
}

LinkSetup SweepSpec::link_at(std::size_t point) const {
  LinkSetup link;
  link.rates = rates;
  link.fading = fading;
  for (std::size_t u = 0; u < kUsers; ++u) {
    const double offset = power_offset_db.empty() ? 0.0 : power_offset_db[u];
    link.powers.push_back(channel::db_to_linear(snr_db[point] + offset));
  }
  return link;
}

OutageCurve snr_sweep(const SweepSpec& spec, unsigned workers) {
  spec.validate();
  OutageCurve curve;
  curve.snr_db = spec.snr_db;
  curve.policies = spec.policies;
  for (std::size_t i = 0; i < spec.snr_db.size(); ++i) {
    const TrialStreams streams{spec.master_seed, i};
    curve.cells.push_back(
        estimate_outage(spec.policies, spec.link_at(i), spec.trials_per_point, streams, workers));
  }
  return curve;
}

std::string_view to_string(FloorKind kind) {
  switch (kind) {
    case FloorKind::floored:
      return "floored";
    case FloorKind::decaying:
      return "decaying";
    case FloorKind::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

FloorVerdict detect_floor(std::span<const CurvePoint> points) {
  if (points.size() < 3 || points.back().snr_db - points.front().snr_db < 20.0) {
    throw std::invalid_argument("detect_floor needs >= 3 points spanning >= 20 dB");
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].snr_db > points[i - 1].snr_db)) {
      throw std::invalid_argument("detect_floor needs points in ascending SNR order");
    }
  }

  // Chain of decade-separated points, newest first.
  std::vector<std::size_t> chain{points.size() - 1};
  for (std::size_t i = points.size() - 1; i-- > 0;) {
    if (points[chain.back()].snr_db - points[i].snr_db >= 10.0 - 1e-9) chain.push_back(i);
  }
  if (chain.size() < 2) return {};

  const OutageEstimate& last = points[chain[0]].estimate;
  const OutageEstimate& prev = points[chain[1]].estimate;
  const double width = last.ci_width();
  const bool overlap = last.ci_low <= prev.ci_high && prev.ci_low <= last.ci_high;
  if (overlap && last.p_hat > 10.0 * width && prev.p_hat > 10.0 * width) {
    return {FloorKind::floored, last.p_hat};
  }

  bool decaying = true;
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    const double newer = points[chain[k]].estimate.p_hat;
    const double older = points[chain[k + 1]].estimate.p_hat;
    decaying = decaying && newer <= older / 2.0;
  }
  if (decaying) return {FloorKind::decaying, 0.0};
  return {};
}

FloorVerdict detect_floor(const OutageCurve& curve, std::size_t policy, std::size_t user) {
  std::vector<CurvePoint> points;
  for (std::size_t i = 0; i < curve.snr_db.size(); ++i) {
    points.push_back({curve.snr_db[i], curve.at(i, policy, user)});
  }
  return detect_floor(points);
}

}  // namespace noma::outage

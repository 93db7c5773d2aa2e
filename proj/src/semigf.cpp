#include "noma/semigf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "noma/parallel.hpp"
#include "noma/sic.hpp"

namespace noma::semigf {

namespace {

struct Signal {
  double alpha = 0.0;
  double eps = 0.0;
};

// Decodes `signals` in the given order and returns per-position success.
// Positions from `forced_from` on are still on the air as interference but
// are never counted as served.
std::vector<bool> decode_in_order(std::span<const Signal> signals, std::size_t forced_from) {
  std::vector<double> alpha(signals.size());
  std::vector<double> eps(signals.size());
  for (std::size_t i = 0; i < signals.size(); ++i) {
    alpha[i] = signals[i].alpha;
    eps[i] = signals[i].eps;
  }
  sic::Order order(signals.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const sic::DecodingOutcome outcome = sic::decode(order, alpha, eps);
  std::vector<bool> ok(outcome.success.begin(), outcome.success.end());
  for (std::size_t i = forced_from; i < ok.size(); ++i) ok[i] = false;
  return ok;
}

std::size_t active_count_for_mti(std::size_t k, double activation_prob) {
  const double x = activation_prob * static_cast<double>(k);
  const double nearest = std::round(x);
  const double n = std::abs(x - nearest) <= 1e-9 * std::max(1.0, x) ? nearest : std::ceil(x);
  return std::max<std::size_t>(1, static_cast<std::size_t>(n));
}

double draw_power(const GfPopulation& pop, double u) {
  return pop.power_min + u * (pop.power_max - pop.power_min);
}

struct GfDraw {
  bool active = false;
  double gain = 0.0;
  double power_u = 0.0;
  std::size_t orb = 0;
  double acb_u = 0.0;
  double level_u = 0.0;
};

struct Transmission {
  std::size_t user = 0;
  double alpha = 0.0;
  std::size_t level = 0;
};

}  // namespace

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::plain:
      return "plain";
    case Variant::power_pool:
      return "power_pool";
    case Variant::power_pool_acb:
      return "power_pool_acb";
    case Variant::gb_only:
      return "gb_only";
  }
  return "unknown";
}

std::string_view to_string(DelayClass d) { return d == DelayClass::sensitive ? "sensitive" : "tolerant"; }

std::string_view to_string(MtiMode m) { return m == MtiMode::worst_case ? "worst_case" : "average_active"; }

void GbUser::validate() const {
  if (!(target_rate > 0.0)) throw std::invalid_argument("GB target_rate must be > 0");
  if (!(transmit_power >= 0.0) || !std::isfinite(transmit_power)) {
    throw std::invalid_argument("GB transmit_power must be finite and >= 0");
  }
  fading.validate();
}

void GfPopulation::validate() const {
  if (!(activation_prob >= 0.0 && activation_prob <= 1.0)) {
    throw std::invalid_argument("activation probability must lie in [0, 1]");
  }
  if (!(power_min >= 0.0 && power_min <= power_max) || !std::isfinite(power_max)) {
    throw std::invalid_argument("GF power range must satisfy 0 <= P_min <= P_max");
  }
  if (!(target_rate > 0.0)) throw std::invalid_argument("GF target_rate must be > 0");
  fading.validate();
}

PowerPool::PowerPool(std::vector<double> levels, double sinr_threshold) : levels_(std::move(levels)) {
  if (levels_.empty()) throw std::invalid_argument("power pool needs at least one level");
  if (!(sinr_threshold > 0.0)) throw std::invalid_argument("power pool SINR threshold must be > 0");
  double below = 0.0;
  for (std::size_t i = levels_.size(); i-- > 0;) {
    const double level = levels_[i];
    if (!(level > 0.0) || !std::isfinite(level)) throw std::invalid_argument("power pool levels must be > 0");
    if (i + 1 < levels_.size() && !(level > levels_[i + 1])) {
      throw std::invalid_argument("power pool levels must be strictly decreasing");
    }
    if (sic::stage_sinr(level, below) < sinr_threshold) {
      throw std::invalid_argument("power pool levels are not SIC-separable at the given threshold");
    }
    below += level;
  }
}

PowerPool PowerPool::layered(std::size_t count, double sinr_threshold, double headroom) {
  if (count == 0) throw std::invalid_argument("power pool needs at least one level");
  if (!(headroom >= 1.0)) throw std::invalid_argument("power pool headroom must be >= 1");
  std::vector<double> levels(count);
  double below = 0.0;
  for (std::size_t i = count; i-- > 0;) {
    // Nudge past rounding so the constructor's check sees SINR >= threshold.
    double level = headroom * sinr_threshold * (1.0 + below);
    while (sic::stage_sinr(level, below) < sinr_threshold) level = std::nextafter(level, INFINITY);
    levels[i] = level;
    below += level;
  }
  return PowerPool(std::move(levels), sinr_threshold);
}

void AcbPolicy::validate() const {
  if (!(barring_factor >= 0.0 && barring_factor <= 1.0)) {
    throw std::invalid_argument("ACB barring factor must lie in [0, 1]");
  }
}

AcbPolicy AcbPolicy::ideal(std::size_t orbs, double activation_prob, std::size_t k) {
  const double load = activation_prob * static_cast<double>(k);
  if (load <= 0.0) return {1.0};
  return {std::min(1.0, static_cast<double>(orbs) / load)};
}

double compute_mti(double alpha_gb, double eps_gb, MtiMode mode, std::size_t k, double activation_prob) {
  if (!(eps_gb > 0.0)) throw std::invalid_argument("MTI requires eps_gb > 0");
  if (k == 0) throw std::invalid_argument("MTI requires K >= 1");
  const double tolerance = std::max(0.0, alpha_gb / eps_gb - 1.0);
  if (mode == MtiMode::worst_case) return tolerance / static_cast<double>(k);
  if (!(activation_prob > 0.0 && activation_prob <= 1.0)) {
    throw std::invalid_argument("average_active MTI requires 0 < rho <= 1");
  }
  return tolerance / static_cast<double>(active_count_for_mti(k, activation_prob));
}

double compute_mtp(double alpha_gb, double eps_gf) {
  if (!(eps_gf > 0.0)) throw std::invalid_argument("MTP requires eps_gf > 0");
  return eps_gf * (alpha_gb + 1.0);
}

BroadcastThreshold broadcast_threshold(DelayClass delay_class, double alpha_gb, double eps_gb,
                                       double eps_gf, MtiMode mode, std::size_t k,
                                       double activation_prob) {
  BroadcastThreshold t;
  t.mti = compute_mti(alpha_gb, eps_gb, mode, k, activation_prob);
  if (delay_class == DelayClass::tolerant) t.mtp = compute_mtp(alpha_gb, eps_gf);
  return t;
}

SlotResult run_single_orb_slot(const GbUser& gb, const GfPopulation& pop, RngStream& rng, MtiMode mode) {
  gb.validate();
  pop.validate();
  if (pop.k == 0) throw std::invalid_argument("single-ORB slot requires K >= 1");

  const double eps_gb = sic::sinr_threshold(gb.target_rate);
  const double eps_gf = sic::sinr_threshold(pop.target_rate);
  const double alpha_gb = channel::to_received_snr(gb.transmit_power, channel::sample_gain(gb.fading, rng, 0));

  std::vector<Transmission> active;
  for (std::size_t i = 0; i < pop.k; ++i) {
    const bool on = rng.bernoulli(pop.activation_prob);
    const double gain = channel::sample_gain(pop.fading, rng, i);
    const double power = draw_power(pop, rng.uniform());
    if (on) active.push_back({i, channel::to_received_snr(power, gain), 0});
  }

  // With rho = 0 nobody transmits; any valid rho keeps the MTI computable.
  const double rho = pop.activation_prob > 0.0 ? pop.activation_prob : 1.0;
  const BroadcastThreshold threshold =
      broadcast_threshold(gb.delay_class, alpha_gb, eps_gb, eps_gf, mode, pop.k, rho);

  // A GF user qualifying for both thresholds goes through the MTP.
  std::vector<Transmission> via_mtp;
  std::vector<Transmission> via_mti;
  for (const auto& t : active) {
    if (threshold.mtp && t.alpha >= *threshold.mtp) {
      via_mtp.push_back(t);
    } else if (threshold.mti && t.alpha <= *threshold.mti) {
      via_mti.push_back(t);
    }
  }
  auto stronger = [](const Transmission& a, const Transmission& b) {
    return a.alpha > b.alpha || (a.alpha == b.alpha && a.user < b.user);
  };
  std::sort(via_mtp.begin(), via_mtp.end(), stronger);
  std::sort(via_mti.begin(), via_mti.end(), stronger);

  // Order: strongest MTP user, GB, MTI users, then the MTP users that lost
  // the contention. The losers stay on the air as interference.
  std::vector<Signal> signals;
  std::size_t gb_pos = 0;
  if (!via_mtp.empty()) {
    signals.push_back({via_mtp.front().alpha, eps_gf});
    gb_pos = 1;
  }
  signals.push_back({alpha_gb, eps_gb});
  for (const auto& t : via_mti) signals.push_back({t.alpha, eps_gf});
  const std::size_t forced_from = signals.size();
  for (std::size_t i = 1; i < via_mtp.size(); ++i) signals.push_back({via_mtp[i].alpha, eps_gf});

  const std::vector<bool> ok = decode_in_order(signals, forced_from);
  SlotResult result;
  result.served_gb = ok[gb_pos] ? 1 : 0;
  for (std::size_t i = 0; i < ok.size(); ++i) {
    if (i != gb_pos && ok[i]) ++result.served_gf;
  }
  result.collisions = via_mtp.size() >= 2 ? 1 : 0;
  result.gb_outage = {!ok[gb_pos]};
  result.served_per_orb = {static_cast<std::uint8_t>(result.served())};
  return result;
}

std::vector<std::size_t> assign_orbs_random(std::span<const std::size_t> active_users, std::size_t orbs,
                                            RngStream& rng) {
  if (orbs == 0) throw std::invalid_argument("ORB assignment requires M >= 1");
  std::vector<std::size_t> out(active_users.size());
  for (auto& orb : out) orb = static_cast<std::size_t>(rng.below(orbs));
  return out;
}

std::optional<PoolChoice> choose_pool_level(double gain, const PowerPool& pool, double power_max, double u) {
  if (!(gain > 0.0)) return std::nullopt;
  const auto levels = pool.levels();
  // Levels decrease, so the feasible ones form a suffix.
  std::size_t first = levels.size();
  while (first > 0 && levels[first - 1] / gain <= power_max) --first;
  const std::size_t feasible = levels.size() - first;
  if (feasible == 0) return std::nullopt;
  const std::size_t pick =
      std::min(feasible - 1, static_cast<std::size_t>(u * static_cast<double>(feasible)));
  const std::size_t level = first + pick;
  return PoolChoice{level, levels[level] / gain};
}

std::optional<PoolChoice> apply_power_pool(double gain, const PowerPool& pool, double power_max,
                                           RngStream& rng) {
  if (!(gain > 0.0)) throw std::invalid_argument("power pool requires gain > 0");
  return choose_pool_level(gain, pool, power_max, rng.uniform());
}

std::vector<std::size_t> apply_acb(std::span<const std::size_t> active_users, const AcbPolicy& policy,
                                   RngStream& rng) {
  policy.validate();
  std::vector<std::size_t> kept;
  for (std::size_t user : active_users) {
    if (acb_permits(rng.uniform(), policy)) kept.push_back(user);
  }
  return kept;
}

AcbPolicy MultiOrbConfig::acb() const {
  if (barring_factor) return {*barring_factor};
  return AcbPolicy::ideal(orbs(), population.activation_prob, population.k);
}

void MultiOrbConfig::validate() const {
  if (gb_users.empty()) throw std::invalid_argument("multi-ORB config needs M >= 1");
  for (std::size_t m = 0; m < gb_users.size(); ++m) {
    gb_users[m].validate();
    if (gb_users[m].orb_id != m) throw std::invalid_argument("exactly one GB user per ORB, in ORB order");
  }
  population.validate();
  acb().validate();
}

SlotResult run_multi_orb_slot(const MultiOrbConfig& config, Variant variant, RngStream& rng) {
  const std::size_t orbs = config.orbs();
  const GfPopulation& pop = config.population;

  std::vector<double> alpha_gb(orbs);
  std::vector<double> eps_gb(orbs);
  for (std::size_t m = 0; m < orbs; ++m) {
    const GbUser& gb = config.gb_users[m];
    alpha_gb[m] = channel::to_received_snr(gb.transmit_power, channel::sample_gain(gb.fading, rng, 0));
    eps_gb[m] = sic::sinr_threshold(gb.target_rate);
  }
  std::vector<GfDraw> draws(pop.k);
  for (std::size_t i = 0; i < pop.k; ++i) {
    GfDraw& d = draws[i];
    d.active = rng.bernoulli(pop.activation_prob);
    d.gain = channel::sample_gain(pop.fading, rng, i);
    d.power_u = rng.uniform();
    d.orb = static_cast<std::size_t>(rng.below(orbs));
    d.acb_u = rng.uniform();
    d.level_u = rng.uniform();
  }

  SlotResult result;
  result.gb_outage.assign(orbs, true);
  result.served_per_orb.assign(orbs, 0);

  if (variant == Variant::gb_only) {
    for (std::size_t m = 0; m < orbs; ++m) {
      const bool ok = sic::stage_sinr(alpha_gb[m], 0.0) >= eps_gb[m];
      result.gb_outage[m] = !ok;
      result.served_per_orb[m] = ok ? 1 : 0;
      result.served_gb += ok ? 1 : 0;
    }
    return result;
  }

  const double eps_gf = sic::sinr_threshold(pop.target_rate);
  const bool pooled = variant == Variant::power_pool || variant == Variant::power_pool_acb;
  const AcbPolicy acb = variant == Variant::power_pool_acb ? config.acb() : AcbPolicy{1.0};

  std::vector<std::vector<Transmission>> per_orb(orbs);
  for (std::size_t i = 0; i < pop.k; ++i) {
    const GfDraw& d = draws[i];
    if (!d.active || !acb_permits(d.acb_u, acb)) continue;
    if (pooled) {
      const auto choice = choose_pool_level(d.gain, config.pool, pop.power_max, d.level_u);
      if (!choice) continue;
      per_orb[d.orb].push_back({i, channel::to_received_snr(choice->transmit_power, d.gain), choice->level});
    } else {
      per_orb[d.orb].push_back({i, channel::to_received_snr(draw_power(pop, d.power_u), d.gain), 0});
    }
  }

  for (std::size_t m = 0; m < orbs; ++m) {
    const auto& arrivals = per_orb[m];
    std::optional<std::size_t> survivor;
    if (arrivals.size() == 1) {
      survivor = 0;
    } else if (pooled && arrivals.size() > 1) {
      std::size_t top = arrivals.front().level;
      for (const auto& a : arrivals) top = std::min(top, a.level);
      const auto at_top = std::count_if(arrivals.begin(), arrivals.end(),
                                        [&](const Transmission& a) { return a.level == top; });
      if (at_top == 1) {
        survivor = static_cast<std::size_t>(
            std::find_if(arrivals.begin(), arrivals.end(), [&](const Transmission& a) { return a.level == top; }) -
            arrivals.begin());
      }
    }

    double residual = 0.0;
    for (std::size_t j = 0; j < arrivals.size(); ++j) {
      if (!survivor || j != *survivor) residual += arrivals[j].alpha;
    }

    std::vector<Signal> signals;
    std::size_t gb_pos = 0;
    if (survivor) {
      // Hybrid rule on the GB (primary) / GF (secondary) pair, with the
      // non-surviving arrivals acting as extra noise.
      const double alpha_gf = arrivals[*survivor].alpha;
      const bool gb_first = sic::stage_sinr(alpha_gb[m], alpha_gf + residual) >= eps_gb[m];
      if (gb_first) {
        signals.push_back({alpha_gb[m], eps_gb[m]});
        signals.push_back({alpha_gf, eps_gf});
      } else {
        signals.push_back({alpha_gf, eps_gf});
        signals.push_back({alpha_gb[m], eps_gb[m]});
        gb_pos = 1;
      }
    } else {
      signals.push_back({alpha_gb[m], eps_gb[m]});
      if (!arrivals.empty()) ++result.collisions;
    }
    const std::size_t forced_from = signals.size();
    for (std::size_t j = 0; j < arrivals.size(); ++j) {
      if (!survivor || j != *survivor) signals.push_back({arrivals[j].alpha, eps_gf});
    }

    const std::vector<bool> ok = decode_in_order(signals, forced_from);
    const bool gb_ok = ok[gb_pos];
    const bool gf_ok = survivor && ok[gb_pos == 0 ? 1 : 0];
    result.gb_outage[m] = !gb_ok;
    result.served_gb += gb_ok ? 1 : 0;
    result.served_gf += gf_ok ? 1 : 0;
    result.served_per_orb[m] = static_cast<std::uint8_t>((gb_ok ? 1 : 0) + (gf_ok ? 1 : 0));
  }
  return result;
}

ConnectivityEstimate connectivity(const MultiOrbConfig& config, Variant variant, std::uint64_t slots,
                                  std::uint64_t master_seed, std::uint64_t point_key, unsigned workers) {
  if (slots == 0) throw std::invalid_argument("connectivity requires T >= 1");
  config.validate();
  auto body = [&](std::size_t begin, std::size_t end, stats::CountAccumulator& acc) {
    for (std::size_t s = begin; s < end; ++s) {
      RngStream rng(master_seed, derive_stream(point_key, s));
      acc.add(run_multi_orb_slot(config, variant, rng).served());
    }
  };
  const auto acc = parallel_reduce(static_cast<std::size_t>(slots), workers, stats::CountAccumulator{}, body,
                                   [](stats::CountAccumulator& a, const stats::CountAccumulator& b) { a.merge(b); });
  const stats::Interval ci = acc.mean_interval();
  return {acc.mean(), ci.low, ci.high, slots};
}

}  // namespace noma::semigf

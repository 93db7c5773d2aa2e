#include "noma/sic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace noma::sic {

std::string_view to_string(DecodingPolicy policy) {
  switch (policy) {
    case DecodingPolicy::csi_based:
      return "csi_based";
    case DecodingPolicy::qos_based:
      return "qos_based";
    case DecodingPolicy::hybrid:
      return "hybrid";
  }
  return "unknown";
}

std::string_view to_string(Role role) { return role == Role::primary ? "primary" : "secondary"; }

double sinr_threshold(double rate) {
  if (!(rate >= 0.0)) {
    throw std::invalid_argument("target rate must be >= 0");
  }
  return std::exp2(rate) - 1.0;
}

UserLoad::UserLoad(double target_rate, Role role, double transmit_power)
    : target_rate_(target_rate), role_(role), transmit_power_(transmit_power) {
  if (!(target_rate > 0.0)) {
    throw std::invalid_argument("UserLoad: target rate must be > 0");
  }
  if (!(transmit_power >= 0.0)) {
    throw std::invalid_argument("UserLoad: transmit power must be >= 0");
  }
}

Order resolve_order_csi(std::span<const double> alpha) {
  Order order(alpha.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return alpha[a] > alpha[b]; });
  return order;
}

Order resolve_order_qos(std::span<const Role> roles) {
  const auto primaries = std::count(roles.begin(), roles.end(), Role::primary);
  if (primaries != 1) {
    throw std::invalid_argument("QoS-based order requires exactly one primary user");
  }
  Order order;
  order.reserve(roles.size());
  const auto p = static_cast<std::size_t>(std::find(roles.begin(), roles.end(), Role::primary) - roles.begin());
  order.push_back(p);
  for (std::size_t i = 0; i < roles.size(); ++i) {
    if (i != p) order.push_back(i);
  }
  return order;
}

double interference_tolerance(double alpha_primary, double eps_primary) {
  if (!(eps_primary > 0.0)) {
    throw std::invalid_argument("interference tolerance requires eps_primary > 0");
  }
  return alpha_primary / eps_primary - 1.0;
}

FirstStage resolve_order_hybrid(double alpha_primary, double alpha_secondary, double eps_primary) {
  if (!(eps_primary > 0.0)) {
    throw std::invalid_argument("hybrid order requires eps_primary > 0");
  }
  // alpha_s <= alpha_p/eps_p - 1, evaluated with the same expression decode()
  // uses for the primary's first stage.
  return stage_sinr(alpha_primary, alpha_secondary) >= eps_primary ? FirstStage::primary
                                                                   : FirstStage::secondary;
}

DecodingOutcome decode(std::span<const std::size_t> order, std::span<const double> alpha,
                       std::span<const double> eps) {
  const std::size_t n = alpha.size();
  if (eps.size() != n || order.size() != n) {
    throw std::invalid_argument("decode: order, alpha and eps must be aligned");
  }
  std::vector<bool> seen(n, false);
  for (std::size_t u : order) {
    if (u >= n || seen[u]) {
      throw std::invalid_argument("decode: order is not a permutation");
    }
    seen[u] = true;
  }

  DecodingOutcome out;
  out.order.assign(order.begin(), order.end());
  out.stage_sinr.resize(n);
  out.success.assign(n, false);

  // Interference still on the air before stage k: suffix sums over the order.
  std::vector<double> remaining(n + 1, 0.0);
  for (std::size_t k = n; k-- > 0;) {
    remaining[k] = remaining[k + 1] + alpha[order[k]];
  }
  bool alive = true;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t u = order[k];
    const double sinr = stage_sinr(alpha[u], remaining[k + 1]);
    out.stage_sinr[k] = sinr;
    alive = alive && sinr >= eps[u];
    out.success[u] = alive;
  }
  return out;
}

DecodingOutcome decode_cluster(DecodingPolicy policy, std::span<const double> alpha,
                               std::span<const double> eps, std::span<const Role> roles) {
  if (alpha.size() != 2 || eps.size() != 2 || roles.size() != 2) {
    throw std::invalid_argument("decode_cluster expects a two-user cluster");
  }
  switch (policy) {
    case DecodingPolicy::csi_based: {
      const Order order = resolve_order_csi(alpha);
      return decode(order, alpha, eps);
    }
    case DecodingPolicy::qos_based: {
      const Order order = resolve_order_qos(roles);
      return decode(order, alpha, eps);
    }
    case DecodingPolicy::hybrid: {
      const Order qos = resolve_order_qos(roles);
      const std::size_t p = qos[0];
      const std::size_t s = qos[1];
      const FirstStage first = resolve_order_hybrid(alpha[p], alpha[s], eps[p]);
      const Order order = first == FirstStage::primary ? Order{p, s} : Order{s, p};
      DecodingOutcome out = decode(order, alpha, eps);
      out.tolerance = interference_tolerance(alpha[p], eps[p]);
      return out;
    }
  }
  throw std::invalid_argument("decode_cluster: unknown policy");
}

}  // namespace noma::sic

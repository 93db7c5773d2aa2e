#include "noma/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace noma::stats {

Interval wilson(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) {
    throw std::invalid_argument("wilson interval needs at least one trial");
  }
  if (successes > trials) {
    throw std::invalid_argument("wilson interval: successes exceed trials");
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // Exact endpoints at the boundaries; the closed form can miss them by an ulp.
  const double low = successes == 0 ? 0.0 : std::clamp(centre - half, 0.0, p);
  const double high = successes == trials ? 1.0 : std::clamp(centre + half, p, 1.0);
  return {low, high};
}

double CountAccumulator::mean() const {
  return n == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(n);
}

double CountAccumulator::variance() const {
  if (n < 2) return 0.0;
  const double nd = static_cast<double>(n);
  const double m = mean();
  const double v = (static_cast<double>(sum_sq) - nd * m * m) / (nd - 1.0);
  return std::max(v, 0.0);
}

Interval CountAccumulator::mean_interval(double z) const {
  const double m = mean();
  if (n == 0) return {m, m};
  const double half = z * std::sqrt(variance() / static_cast<double>(n));
  return {m - half, m + half};
}

}  // namespace noma::stats

#pragma once

#include <cstdint>

namespace noma::stats {

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

/// Wilson score interval for `successes` out of `trials` at z (1.96 = 95%).
Interval wilson(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

/// Running count / sum / sum-of-squares of integer samples. Merging is exact
/// integer addition, so partial results combine identically in any order.
struct CountAccumulator {
  std::uint64_t n = 0;
  std::uint64_t sum = 0;
  std::uint64_t sum_sq = 0;

  void add(std::uint64_t x) {
    ++n;
    sum += x;
    sum_sq += x * x;
  }
  void merge(const CountAccumulator& o) {
    n += o.n;
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
  double mean() const;
  /// Unbiased sample variance; 0 for fewer than two samples.
  double variance() const;
  /// Normal-approximation interval for the mean.
  Interval mean_interval(double z = 1.959963984540054) const;
};

}  // namespace noma::stats

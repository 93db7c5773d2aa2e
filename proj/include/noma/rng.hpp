#pragma once

#include <cstdint>
#include <limits>

namespace noma {

/// Counter-style random stream keyed by (master_seed, stream_id).
///
/// The engine is xoshiro256** seeded through splitmix64 from a mix of both
/// keys. All variate transforms are implemented here rather than through
/// <random> distributions, whose algorithms differ between standard
/// libraries; the same keys produce the same doubles everywhere.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1].
  double uniform_open_low();
  /// Exponential with the given mean.
  double exponential(double mean);
  bool bernoulli(double p);
  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::uint64_t s_[4];
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Combines two keys into one stream id; used to derive per-point,
/// per-trial streams from a sweep seed.
std::uint64_t derive_stream(std::uint64_t a, std::uint64_t b);

}  // namespace noma

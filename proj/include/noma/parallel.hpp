#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace noma {

/// Splits [0, n) into `workers` contiguous blocks, runs `body(begin, end, acc)`
/// on each block in its own thread and merges the per-block accumulators in
/// block order. Results are independent of `workers` as long as `merge` is
/// associative and every item draws from its own random stream.
template <typename Acc, typename Body, typename Merge>
Acc parallel_reduce(std::size_t n, unsigned workers, const Acc& init, Body body, Merge merge) {
  workers = std::max(1u, workers);
  const std::size_t blocks = std::min<std::size_t>(workers, std::max<std::size_t>(n, 1));
  std::vector<Acc> partial(blocks, init);
  if (blocks == 1) {
    body(std::size_t{0}, n, partial[0]);
    return partial[0];
  }
  std::vector<std::exception_ptr> errors(blocks);
  std::vector<std::thread> threads;
  threads.reserve(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t begin = n * b / blocks;
    const std::size_t end = n * (b + 1) / blocks;
    threads.emplace_back([&, b, begin, end] {
      try {
        body(begin, end, partial[b]);
      } catch (...) {
        errors[b] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Acc total = init;
  for (auto& p : partial) merge(total, p);
  return total;
}

}  // namespace noma

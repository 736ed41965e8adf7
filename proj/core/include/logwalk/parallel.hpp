#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace logwalk {

/// Splits trials [0, count) into `workers` contiguous chunks, runs
/// `body(begin, end, acc)` on each with its own accumulator, and merges the
/// accumulators in chunk order. Trials draw from per-trial generators, so
/// the merged result does not depend on the number of workers.
template <typename Acc, typename Body, typename Merge>
Acc parallel_trials(std::uint64_t count, unsigned workers, const Acc& init, Body&& body,
                    Merge&& merge) {
  workers = std::max(1u, workers);
  if (workers == 1 || count < 2 * static_cast<std::uint64_t>(workers)) {
    Acc acc = init;
    body(std::uint64_t{0}, count, acc);
    return acc;
  }
  std::vector<Acc> parts(workers, init);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::uint64_t chunk = count / workers;
  const std::uint64_t extra = count % workers;
  std::uint64_t begin = 0;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
    threads.emplace_back([&, w, begin, end] {
      try {
        body(begin, end, parts[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
    begin = end;
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Acc acc = init;
  for (auto& p : parts) merge(acc, p);
  return acc;
}

}  // namespace logwalk

#pragma once

#include <cstdint>

#include "logwalk/graph.hpp"

namespace logwalk {

/// Unit-weight builders used by the test corpus and the audit ladder.
WeightedGraph complete_graph(std::size_t n);
WeightedGraph cycle_graph(std::size_t n);
WeightedGraph path_graph(std::size_t n);
/// Vertex 0 is the center.
WeightedGraph star_graph(std::size_t leaves);

struct RandomGraphOptions {
  double edge_probability = 0.3;
  double min_weight = 0.5;
  double max_weight = 2.0;
  /// Resample until the graph is connected (at most this many attempts).
  std::size_t max_attempts = 1000;
};

/// G(n, p) with uniform weights in [min_weight, max_weight], resampled
/// until connected. Same seed gives the same graph on every platform.
WeightedGraph erdos_renyi(std::size_t n, std::uint64_t seed, const RandomGraphOptions& options = {});

}  // namespace logwalk

#include "logwalk/generators.hpp"

#include <vector>

#include "logwalk/errors.hpp"
#include "logwalk/rng.hpp"

namespace logwalk {

WeightedGraph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v, 1.0});
  }
  return WeightedGraph::from_edges(n, edges);
}

WeightedGraph cycle_graph(std::size_t n) {
  if (n < 3) throw DomainError("a cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) edges.push_back({u, (u + 1) % n, 1.0});
  return WeightedGraph::from_edges(n, edges);
}

WeightedGraph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1, 1.0});
  return WeightedGraph::from_edges(n, edges);
}

WeightedGraph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.push_back({0, v, 1.0});
  return WeightedGraph::from_edges(leaves + 1, edges);
}

WeightedGraph erdos_renyi(std::size_t n, std::uint64_t seed, const RandomGraphOptions& options) {
  if (!(options.edge_probability > 0.0 && options.edge_probability <= 1.0)) {
    throw DomainError("edge probability must lie in (0, 1]");
  }
  if (!(options.min_weight > 0.0 && options.min_weight <= options.max_weight)) {
    throw DomainError("weights must satisfy 0 < min <= max");
  }
  const RandomSource source(seed, 0x6572);
  for (std::size_t attempt = 0; attempt < options.max_attempts; ++attempt) {
    TrialRng rng = source.trial(attempt);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (rng.uniform() < options.edge_probability) {
          const double w =
              options.min_weight + (options.max_weight - options.min_weight) * rng.uniform();
          edges.push_back({u, v, w});
        }
      }
    }
    auto g = WeightedGraph::from_edges(n, edges);
    if (is_connected(g)) return g;
  }
  throw DisconnectedError("no connected sample within the attempt limit");
}

}  // namespace logwalk

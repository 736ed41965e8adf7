#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "logwalk/graph.hpp"

namespace logwalk::testing {

struct NamedGraph {
  std::string name;
  WeightedGraph graph;
};

/// K2..K6, C4..C8, P3..P6, the star K_{1,5} and five seeded connected
/// G(n, p) graphs on at most 20 vertices with weights in [0.5, 2].
std::vector<NamedGraph> corpus();

/// Unit vector orthogonal to u_1, drawn from a seeded Gaussian.
std::vector<double> random_image_vector(const WeightedGraph& g, std::uint64_t seed);

double max_abs(const std::vector<double>& a, const std::vector<double>& b);
double l2_distance(const std::vector<double>& a, const std::vector<double>& b);

/// Empirical frequency of `count` out of `trials` passing, as "p/t".
std::string ratio_text(std::size_t passed, std::size_t total);

}  // namespace logwalk::testing

#pragma once

#include <cstdint>
#include <vector>

#include "logwalk/graph.hpp"
#include "logwalk/registers.hpp"
#include "logwalk/rng.hpp"

namespace logwalk {

/// One step of the walk P_G from `v`: returns neighbor j with probability
/// w(v, j) / d_v. Uses a single linear scan with a running cumulative
/// weight (compensated when the row has more than 1000 entries). Throws
/// IsolatedVertexError when d_v = 0.
Vertex walk_step(const WeightedGraph& g, Vertex v, TrialRng& rng, RegisterFile* regs = nullptr);

/// Endpoint of a k-step walk from `start`; k = 0 returns `start`.
Vertex walk_k(const WeightedGraph& g, Vertex start, std::uint64_t k, TrialRng& rng,
              RegisterFile* regs = nullptr);

/// Precomputed per-vertex alias tables (Walker/Vose) for O(1) steps.
/// Uses O(entries) memory, so it is never used on audited paths.
class AliasWalker {
 public:
  explicit AliasWalker(const WeightedGraph& g);

  Vertex step(Vertex v, TrialRng& rng) const;
  Vertex walk(Vertex start, std::uint64_t k, TrialRng& rng) const;
  std::size_t size() const noexcept { return offsets_.size() - 1; }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
  std::vector<double> accept_;
  std::vector<std::uint32_t> alias_;
};

enum class Sampler { scan, alias };

struct HitEstimate {
  double value = 0.0;  // hits / trials
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  double radius = 0.0;  // Hoeffding radius at `zeta`
  double zeta = 0.0;
};

/// Fraction of `trials` k-step walks from `start` that end at `target`.
/// Trial t draws from source.trial(t); the trials are split across
/// `workers` threads without changing the count.
HitEstimate hit_prob_estimate(const WeightedGraph& g, Vertex start, Vertex target,
                              std::uint64_t k, std::uint64_t trials, RandomSource source,
                              double zeta = 0.05, unsigned workers = 1,
                              Sampler sampler = Sampler::scan);

/// Runs `trials` walks of `steps` steps from `start` and counts positions:
/// result[s * n + v] is the number of walks at v after s steps, for
/// s in [0, steps]. Marginally each count is the hit count of
/// hit_prob_estimate for (start, v, s).
std::vector<std::uint64_t> position_tallies(const AliasWalker& walker, Vertex start,
                                            std::uint64_t steps, std::uint64_t trials,
                                            RandomSource source, unsigned workers = 1);

}  // namespace logwalk

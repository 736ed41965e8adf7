#include "logwalk/walk.hpp"

#include <optional>
#include <string>

#include "logwalk/errors.hpp"
#include "logwalk/execution.hpp"
#include "logwalk/parallel.hpp"

namespace logwalk {

namespace {

constexpr std::size_t kCompensatedRowLength = 1000;

[[noreturn]] void throw_isolated(Vertex v) {
  throw IsolatedVertexError("walk reached vertex " + std::to_string(v) + " of degree zero");
}

}  // namespace

Vertex walk_step(const WeightedGraph& g, Vertex v, TrialRng& rng, RegisterFile* regs) {
  const auto row = g.neighbors(v);
  if (row.empty() || !(g.degree(v) > 0.0)) throw_isolated(v);

  Register<double> threshold(regs, "step.threshold", rng.uniform() * g.degree(v));
  Register<double> cumulative(regs, "step.cumulative", 0.0);
  Register<std::size_t> index(regs, "step.index", 0);
  if (row.size() > kCompensatedRowLength) {
    Register<double> carry(regs, "step.carry", 0.0);
    for (; index < row.size(); ++index) {
      const double y = row[index].weight - carry;
      const double t = cumulative + y;
      carry = (t - cumulative) - y;
      cumulative = t;
      if (threshold < cumulative) return row[index].vertex;
    }
  } else {
    for (; index < row.size(); ++index) {
      cumulative += row[index].weight;
      if (threshold < cumulative) return row[index].vertex;
    }
  }
  // Rounding can leave threshold == cumulative total; the last entry owns it.
  return row.back().vertex;
}

Vertex walk_k(const WeightedGraph& g, Vertex start, std::uint64_t k, TrialRng& rng,
              RegisterFile* regs) {
  if (start >= g.size()) throw IndexError("walk start vertex out of range");
  Register<Vertex> position(regs, "walk.position", start);
  for (Register<std::uint64_t> step(regs, "walk.step", 0); step < k; ++step) {
    position = walk_step(g, position, rng, regs);
  }
  return position;
}

AliasWalker::AliasWalker(const WeightedGraph& g) {
  const std::size_t n = g.size();
  offsets_.assign(1, 0);
  offsets_.reserve(n + 1);
  std::vector<double> scaled;
  std::vector<std::size_t> small, large;
  for (Vertex v = 0; v < n; ++v) {
    const auto row = g.neighbors(v);
    const std::size_t len = row.size();
    const std::size_t base = targets_.size();
    for (const Neighbor& nb : row) targets_.push_back(nb.vertex);
    accept_.resize(base + len, 1.0);
    alias_.resize(base + len, 0);
    if (len > 0 && g.degree(v) > 0.0) {
      scaled.assign(len, 0.0);
      small.clear();
      large.clear();
      for (std::size_t e = 0; e < len; ++e) {
        scaled[e] = row[e].weight * static_cast<double>(len) / g.degree(v);
        (scaled[e] < 1.0 ? small : large).push_back(e);
        alias_[base + e] = static_cast<std::uint32_t>(e);
      }
      while (!small.empty() && !large.empty()) {
        const std::size_t s = small.back();
        small.pop_back();
        const std::size_t l = large.back();
        accept_[base + s] = scaled[s];
        alias_[base + s] = static_cast<std::uint32_t>(l);
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        if (scaled[l] < 1.0) {
          large.pop_back();
          small.push_back(l);
        }
      }
      for (std::size_t e : large) accept_[base + e] = 1.0;
      for (std::size_t e : small) accept_[base + e] = 1.0;
    }
    offsets_.push_back(targets_.size());
  }
}

Vertex AliasWalker::step(Vertex v, TrialRng& rng) const {
  const std::size_t base = offsets_[v];
  const std::size_t len = offsets_[v + 1] - base;
  if (len == 0) throw_isolated(v);
  const double u = rng.uniform() * static_cast<double>(len);
  std::size_t slot = static_cast<std::size_t>(u);
  if (slot >= len) slot = len - 1;
  const double frac = u - static_cast<double>(slot);
  const std::size_t e = frac < accept_[base + slot] ? slot : alias_[base + slot];
  return targets_[base + e];
}

Vertex AliasWalker::walk(Vertex start, std::uint64_t k, TrialRng& rng) const {
  Vertex position = start;
  for (std::uint64_t s = 0; s < k; ++s) position = step(position, rng);
  return position;
}

HitEstimate hit_prob_estimate(const WeightedGraph& g, Vertex start, Vertex target,
                              std::uint64_t k, std::uint64_t trials, RandomSource source,
                              double zeta, unsigned workers, Sampler sampler) {
  if (trials == 0) throw DomainError("hit_prob_estimate needs at least one trial");
  if (!(zeta > 0.0 && zeta < 1.0)) throw DomainError("confidence budget must lie in (0, 1)");
  if (start >= g.size() || target >= g.size()) throw IndexError("vertex out of range");

  std::optional<AliasWalker> walker;
  if (sampler == Sampler::alias) walker.emplace(g);

  const auto hits = parallel_trials(
      trials, workers, std::uint64_t{0},
      [&](std::uint64_t begin, std::uint64_t end, std::uint64_t& count) {
        for (std::uint64_t t = begin; t < end; ++t) {
          TrialRng rng = source.trial(t);
          const Vertex v = walker ? walker->walk(start, k, rng) : walk_k(g, start, k, rng);
          if (v == target) ++count;
        }
      },
      [](std::uint64_t& acc, std::uint64_t part) { acc += part; });

  HitEstimate est;
  est.hits = hits;
  est.trials = trials;
  est.value = static_cast<double>(hits) / static_cast<double>(trials);
  est.zeta = zeta;
  est.radius = hoeffding_radius(static_cast<double>(trials), zeta);
  return est;
}

std::vector<std::uint64_t> position_tallies(const AliasWalker& walker, Vertex start,
                                            std::uint64_t steps, std::uint64_t trials,
                                            RandomSource source, unsigned workers) {
  const std::size_t n = walker.size();
  if (start >= n) throw IndexError("walk start vertex out of range");
  const std::vector<std::uint64_t> zero((steps + 1) * n, 0);
  return parallel_trials(
      trials, workers, zero,
      [&](std::uint64_t begin, std::uint64_t end, std::vector<std::uint64_t>& counts) {
        for (std::uint64_t t = begin; t < end; ++t) {
          TrialRng rng = source.trial(t);
          Vertex position = start;
          ++counts[position];
          for (std::uint64_t s = 1; s <= steps; ++s) {
            position = walker.step(position, rng);
            ++counts[s * n + position];
          }
        }
      },
      [](std::vector<std::uint64_t>& acc, const std::vector<std::uint64_t>& part) {
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += part[i];
      });
}

}  // namespace logwalk

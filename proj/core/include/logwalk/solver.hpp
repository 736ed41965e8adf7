#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "logwalk/execution.hpp"
#include "logwalk/graph.hpp"
#include "logwalk/rng.hpp"

namespace logwalk {

/// Truncation constants of the Poisson-weighted walk series for L^+:
///   L^+ b ~ (T/N) sum_{j=1..N} sum_{k<K} P_{jT/N}(k) D^{1/2} P^k D^{-1/2} b
/// with error at most epsilon ||b|| / 2 when lambda <= lambda_2.
struct SeriesParams {
  std::uint64_t horizon = 0;      // T >= ln(6/(epsilon lambda)) / lambda
  std::uint64_t grid = 0;         // N >= 6T / epsilon
  std::uint64_t max_power = 0;    // K >= max(6T, ln(6T/epsilon))
  double epsilon = 0.0;
  double lambda = 0.0;
};

/// Smallest integers satisfying the three truncation inequalities.
/// Throws DomainError unless epsilon in (0, 1] and lambda in (0, 2].
SeriesParams series_params(double epsilon, double lambda);

struct SolverParams {
  SeriesParams series;
  Mode mode = Mode::practical;
  double gamma = 0.0;
  /// Strict inner radius (6 T K sqrt(sum_l d_l / d_i))^{-1}.
  double delta = 0.0;
  /// Per-event budget gamma / (N K (1 + n)).
  double zeta = 0.0;
  /// Strict walk trials ceil(ln(2/zeta) / (2 delta^2)); may exceed 2^64.
  double walk_trials = 0.0;
  /// Trials actually used per hit estimate.
  std::uint64_t walk_samples = 0;
  /// Trials per pmf estimate actually used; 0 means exact pmf weights.
  std::uint64_t pmf_samples = 0;
};

/// Parameters for entry `target` of L^+ b on a connected graph.
SolverParams solver_params(const WeightedGraph& g, Vertex target, double epsilon, double gamma,
                           double lambda, const ExecutionOptions& exec);

struct SolveOptions {
  double epsilon = 0.1;
  double gamma = 0.1;
  /// Lower bound on lambda_2; defaults to 1 / (diam vol).
  std::optional<double> lambda;
  /// Project b onto Im(L) instead of rejecting it.
  bool auto_project = false;
  ExecutionOptions exec{};
};

struct EntryResult {
  double value = 0.0;
  SolverParams params;
  /// Practical mode: Hoeffding radius of each hit frequency at zeta.
  double hit_radius = 0.0;
  /// Practical mode with sampled pmf weights: radius of each estimate.
  double pmf_radius = 0.0;
  bool truncated = false;
};

/// Relative residual above which b is rejected as not in Im(L).
inline constexpr double kImageResidualTolerance = 1e-6;

/// epsilon-additive estimate of (L^+ b)_target for a unit vector b in
/// Im(L) of a connected graph.
///
/// Strict mode runs the j/k/l triple loop verbatim: one Poisson estimate
/// per (j, k) with the strict delta and zeta, and per start vertex l a
/// count of r walks of k steps ending at `target`. Every mutable scalar
/// lives in a Register so audited runs can measure the working space.
///
/// Practical mode uses the budget's walk samples for each hit frequency
/// and exact (or budget-sampled) pmf weights. Hit frequencies do not
/// depend on j, so the j-sum is folded into per-power weights, and one
/// batch of walks per start vertex is tallied at every step and vertex.
EntryResult solve_entry(const WeightedGraph& g, std::span<const double> b, Vertex target,
                        const SolveOptions& options, RandomSource source);

enum class NormTarget { entrywise, euclidean };

struct SolveResult {
  std::vector<double> x;
  /// Per-entry precision and failure budget handed to each entry solve.
  double entry_epsilon = 0.0;
  double entry_gamma = 0.0;
  /// Parameters of entry 0 of the largest component (reporting).
  SolverParams params;
  double hit_radius = 0.0;
  double pmf_radius = 0.0;
  std::size_t components = 0;
  bool truncated = false;
};

/// Whole-vector solve. Each entry gets failure budget gamma / n; the
/// euclidean target gives each entry precision epsilon / sqrt(n).
/// Disconnected graphs are solved per component on the restriction of b,
/// which must lie in Im(L) (or is projected with auto_project).
SolveResult solve(const WeightedGraph& g, std::span<const double> b, const SolveOptions& options,
                  NormTarget target, RandomSource source);

/// w_k = (T/N) sum_{j=1..N} P_{jT/N}(k) for k < K.
std::vector<double> poisson_series_weights(const SeriesParams& params);

/// Fills frequencies[s * n + v] with an estimate of (P^s)[start, v] for
/// s in [0, steps].
using HitFrequencyProvider =
    std::function<void(Vertex start, std::uint64_t steps, std::vector<double>& frequencies)>;

/// Practical-mode combination step for all entries:
///   x_i = sum_l b_l sqrt(d_l/d_i) sum_k w_k h_k(l, i).
/// Exposed so tests can substitute exact hit probabilities.
std::vector<double> combine_series(const WeightedGraph& g, std::span<const double> b,
                                   std::span<const double> weights,
                                   const HitFrequencyProvider& provider);

}  // namespace logwalk

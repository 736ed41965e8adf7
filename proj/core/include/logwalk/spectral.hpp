#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "logwalk/execution.hpp"
#include "logwalk/graph.hpp"
#include "logwalk/rng.hpp"

namespace logwalk {

/// Element of Sigma for the pair (first, second), first != second:
/// coordinate `first` is -1/sqrt(1 + d_first/d_second), coordinate
/// `second` is 1/sqrt(1 + d_second/d_first). Unit norm, orthogonal to u_1.
struct SigmaVector {
  Vertex first = 0;
  Vertex second = 0;
  double first_coeff = 0.0;   // negative
  double second_coeff = 0.0;  // positive

  std::vector<double> dense(std::size_t n) const;
};

SigmaVector sigma_vector(const WeightedGraph& g, Vertex first, Vertex second);

/// All n(n-1)/2 elements in lexicographic (first < second) order.
std::vector<SigmaVector> sigma_vectors(const WeightedGraph& g);

struct NormParams {
  std::uint64_t power = 0;  // k
  double epsilon = 0.0;
  double gamma = 0.0;
  double delta = 0.0;        // eps^2 sqrt(2) / (54 (k+1) n dmax/dmin)
  double zeta = 0.0;         // gamma / (3 n (k+1))
  double walk_trials = 0.0;  // ceil(ln(2/zeta) / (2 delta^2)), may exceed 2^64
  Mode mode = Mode::practical;
  std::uint64_t walk_samples = 0;  // trials actually used per start vertex
  std::uint64_t pmf_samples = 0;   // 0: exact binomial weights
};

NormParams norm_params(const WeightedGraph& g, std::uint64_t k, double epsilon, double gamma,
                       const ExecutionOptions& exec);

struct NormEstimate {
  double value = 0.0;
  NormParams params;
  /// Practical mode: bound on |value - ||M^k v||| when every hit frequency
  /// is within its Hoeffding radius at zeta (exact pmf weights).
  double radius = 0.0;
  bool truncated = false;
};

/// Estimate of ||M_G^k v|| for v in Sigma.
///
/// Strict mode follows the procedure step for step: for every i and every
/// s <= k a fresh binomial estimate of 2^{-k} C(k, s) and two batches of r
/// walks of s steps (from the positive and the negative coordinate of v).
/// Practical mode runs one batch of walk_samples walks of k steps from
/// each of the two start vertices, tallies the position after every step,
/// and weights the tallies with exact (or sampled) binomial pmfs.
NormEstimate estimate_norm(const WeightedGraph& g, std::uint64_t k, const SigmaVector& v,
                           double epsilon, double gamma, const ExecutionOptions& exec,
                           RandomSource source);

struct GapParams {
  double delta = 0.0;
  double gamma = 0.0;
  double lambda = 0.0;     // lower bound used in place of lambda_2
  double log_tau = 0.0;    // ln tau, kept because tau underflows for large n
  double tau = 0.0;        // 1 / (2 (sqrt(2) n dmax/dmin)^{1 + 8/delta})
  double epsilon = 0.0;    // delta lambda tau / 12
  double zeta = 0.0;       // 4 gamma / (n (n-1)) / (1 + ln(1/tau) / lambda)
};

/// Throws DomainError unless delta, gamma in (0, 1] and lambda in (0, 2].
GapParams gap_params(const WeightedGraph& g, double delta, double gamma, double lambda);

struct GapOptions {
  double delta = 0.2;
  double gamma = 0.1;
  /// Lower bound on lambda_2; defaults to 1 / (diam vol).
  std::optional<double> lambda;
  ExecutionOptions exec{};
};

struct GapResult {
  double value = 0.0;  // 2 (1 - R_max)
  double ratio = 0.0;  // R_max
  GapParams params;
  /// Pair whose ratio set R_max (first wins ties); unset if none counted.
  std::optional<std::pair<Vertex, Vertex>> best;
  std::uint64_t norm_calls = 0;
  /// Largest per-vector termination threshold actually used.
  double threshold = 0.0;
  bool truncated = false;
};

/// delta-multiplicative estimate of lambda_2 on a connected graph, n >= 4.
///
/// For every v in Sigma: C1 ~ ||M v||, C2 ~ ||M^2 v||; while C2 >= 3 tau/2
/// a ratio C2/C1 with C1 >= 3 tau/2 may raise R_max, then k advances and a
/// new C2 is estimated. The power loop stops at k = ceil(2 ln(1/tau)/lambda)
/// + 1, past which ||M^k v|| < tau for every unit image vector.
///
/// Practical mode raises tau for each v to three times the norm radius of
/// estimate_norm, since the strict tau sits far below the sampling noise.
GapResult lambda2_estimate(const WeightedGraph& g, const GapOptions& options,
                           RandomSource source);

/// Bounds on the power ratio 2 (1 - C2/C1), for checks against exact norms.
struct PowerRatioBounds {
  double lower = 0.0;           // (1 - delta) lambda_2
  double upper = 0.0;           // (1 + delta) lambda_2
  bool premise_holds = false;   // zeta <= delta lambda_2 / 12
  double min_power = 0.0;       // 3 ln(sqrt(2) n dmax/dmin) / (delta lambda_2) - 1
  bool power_sufficient = false;  // k >= min_power
};

PowerRatioBounds power_ratio_bounds(double lambda2, double delta, double zeta, std::uint64_t k,
                                    std::size_t n, double degree_ratio);

}  // namespace logwalk

#pragma once

#include <cstdint>

#include "logwalk/execution.hpp"
#include "logwalk/registers.hpp"
#include "logwalk/rng.hpp"

namespace logwalk {

/// Monte-Carlo pmf estimate C / m.
struct PmfEstimate {
  double value = 0.0;
  std::uint64_t successes = 0;   // C
  std::uint64_t trials = 0;      // m macro-trials
  std::uint64_t block_size = 0;  // Bernoulli trials per macro-trial (Poisson only)
  double delta = 0.0;            // additive target
  double zeta = 0.0;             // failure budget
  bool truncated = false;        // a strict trial cap shortened a loop
};

struct EstimatorOptions {
  Mode mode = Mode::practical;
  /// Practical mode refuses calls needing more Bernoulli draws than this.
  std::uint64_t draw_cap = 1'000'000'000;
  unsigned workers = 1;
  RegisterFile* registers = nullptr;
  /// Strict-mode trial caps and work limit; null means unlimited.
  WorkMeter* meter = nullptr;
};

/// e^{-s} s^k / k!, evaluated in log space. Throws DomainError for s <= 0.
double poisson_pmf_exact(double s, std::uint64_t k);

/// 2^{-k} C(k, s). Throws DomainError unless 0 <= s <= k.
double binomial_pmf_exact(std::uint64_t k, std::uint64_t s);

/// ceil(2 (k^2 + s^2) / delta), as a double.
double poisson_block_size(double s, std::uint64_t k, double delta);
/// ceil(2 ln(2/zeta) / delta^2): macro-trials for a delta/2 Chernoff radius.
double poisson_macro_trials(double delta, double zeta);
/// ceil(ln(2/zeta) / (2 delta^2)).
double binomial_macro_trials(double delta, double zeta);

/// Estimates P_s(k) as the fraction of macro-trials in which exactly k of
/// n_b Bernoulli(s / n_b) trials succeed. Within delta of the pmf with
/// probability at least 1 - zeta.
PmfEstimate poisson_pmf_estimate(double s, std::uint64_t k, double delta, double zeta,
                                 RandomSource source, const EstimatorOptions& options = {});

/// Same experiment with explicit block size and macro-trial count.
PmfEstimate poisson_pmf_estimate_with(double s, std::uint64_t k, std::uint64_t block_size,
                                      std::uint64_t trials, RandomSource source,
                                      const EstimatorOptions& options = {});

/// Estimates 2^{-k} C(k, s) as the fraction of macro-trials in which
/// exactly s of k fair bits are one.
PmfEstimate binomial_pmf_estimate(std::uint64_t k, std::uint64_t s, double delta, double zeta,
                                  RandomSource source, const EstimatorOptions& options = {});

PmfEstimate binomial_pmf_estimate_with(std::uint64_t k, std::uint64_t s, std::uint64_t trials,
                                       RandomSource source, const EstimatorOptions& options = {});

}  // namespace logwalk

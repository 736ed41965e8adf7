#pragma once

#include <cstdint>

#include "logwalk/registers.hpp"

namespace logwalk {

/// strict: every internal constant is derived from the closed-form
/// parameter formulas and the algorithm runs verbatim.
/// practical: sample counts come from a user budget and pmf weights may be
/// evaluated exactly; the achieved Hoeffding radii are reported instead.
enum class Mode { strict, practical };

const char* mode_name(Mode mode) noexcept;

struct PracticalBudget {
  std::uint64_t walk_samples = 100000;
  /// Trials per pmf estimate; 0 evaluates the pmf exactly.
  std::uint64_t pmf_samples = 0;
};

/// Caps for strict runs. Zero means unlimited.
struct StrictLimits {
  /// Each Monte-Carlo repeat loop runs at most this many trials; capped
  /// loops mark the run as truncated.
  std::uint64_t trial_cap = 0;
  /// Total work units (walk steps, Bernoulli draws) before BudgetError.
  std::uint64_t work_limit = 0;
};

class WorkMeter {
 public:
  explicit WorkMeter(StrictLimits limits = {}) : limits_(limits) {}

  /// Number of trials to run for a loop that asks for `requested` (which
  /// may exceed the 64-bit range in strict mode). Throws BudgetError when
  /// the request cannot be represented and no trial cap is set.
  std::uint64_t trials(double requested);

  /// Records `units` of work; throws BudgetError past the work limit.
  void charge(std::uint64_t units);

  bool truncated() const noexcept { return truncated_; }
  std::uint64_t used() const noexcept { return used_; }
  const StrictLimits& limits() const noexcept { return limits_; }

 private:
  StrictLimits limits_;
  std::uint64_t used_ = 0;
  bool truncated_ = false;
};

struct ExecutionOptions {
  Mode mode = Mode::practical;
  PracticalBudget budget{};
  StrictLimits limits{};
  /// Worker threads for practical-mode trial batches.
  unsigned workers = 1;
  /// Register accounting for strict runs; may be null.
  RegisterFile* registers = nullptr;
};

/// sqrt(ln(2/zeta) / (2 trials)): two-sided Hoeffding radius of a mean of
/// `trials` samples in [0, 1] at failure probability zeta.
double hoeffding_radius(double trials, double zeta);

/// ceil(ln(2/zeta) / (2 radius^2)), returned as a double because strict
/// parameters routinely exceed 2^64.
double hoeffding_trials(double radius, double zeta);

}  // namespace logwalk

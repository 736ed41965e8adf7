#include "logwalk/execution.hpp"

#include <cmath>
#include <string>

#include "logwalk/errors.hpp"

namespace logwalk {

const char* mode_name(Mode mode) noexcept {
  return mode == Mode::strict ? "strict" : "practical";
}

std::uint64_t WorkMeter::trials(double requested) {
  if (!(requested >= 0.0)) throw DomainError("negative trial count");
  if (limits_.trial_cap != 0 && requested > static_cast<double>(limits_.trial_cap)) {
    truncated_ = true;
    return limits_.trial_cap;
  }
  // 2^63 leaves room for counters that are compared against the count.
  if (requested >= 0x1.0p63) {
    throw BudgetError("strict trial count " + std::to_string(requested) +
                      " exceeds the representable range; set a trial cap");
  }
  return static_cast<std::uint64_t>(requested);
}

void WorkMeter::charge(std::uint64_t units) {
  used_ += units;
  if (limits_.work_limit != 0 && used_ > limits_.work_limit) {
    truncated_ = true;
    throw BudgetError("work limit of " + std::to_string(limits_.work_limit) + " units exceeded");
  }
}

double hoeffding_radius(double trials, double zeta) {
  return std::sqrt(std::log(2.0 / zeta) / (2.0 * trials));
}

double hoeffding_trials(double radius, double zeta) {
  return std::ceil(std::log(2.0 / zeta) / (2.0 * radius * radius));
}

}  // namespace logwalk

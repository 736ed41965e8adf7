#include "logwalk/estimators.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "logwalk/errors.hpp"
#include "logwalk/parallel.hpp"

namespace logwalk {

namespace {

void check_unit_interval(double x, const char* what) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError(std::string(what) + " must lie in (0, 1)");
}

/// One Poisson macro-trial: do exactly k of `block` Bernoulli(p) draws
/// succeed? Stops drawing once the count exceeds k.
bool poisson_macro_trial(TrialRng& rng, double p, std::uint64_t k, std::uint64_t block) {
  std::uint64_t hits = 0;
  for (std::uint64_t j = 0; j < block; ++j) {
    if (rng.uniform() < p && ++hits > k) return false;
  }
  return hits == k;
}

bool binomial_macro_trial(TrialRng& rng, std::uint64_t k, std::uint64_t s) {
  std::uint64_t ones = 0;
  std::uint64_t remaining = k;
  while (remaining >= 64) {
    ones += static_cast<std::uint64_t>(std::popcount(rng()));
    remaining -= 64;
  }
  if (remaining > 0) {
    const std::uint64_t mask = (std::uint64_t{1} << remaining) - 1;
    ones += static_cast<std::uint64_t>(std::popcount(rng() & mask));
  }
  return ones == s;
}

PmfEstimate finish(std::uint64_t successes, std::uint64_t trials, std::uint64_t block,
                   double delta, double zeta, bool truncated) {
  PmfEstimate est;
  est.successes = successes;
  est.trials = trials;
  est.block_size = block;
  est.value = static_cast<double>(successes) / static_cast<double>(trials);
  est.delta = delta;
  est.zeta = zeta;
  est.truncated = truncated;
  return est;
}

}  // namespace

double poisson_pmf_exact(double s, std::uint64_t k) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("Poisson parameter must be positive");
  const double kk = static_cast<double>(k);
  return std::exp(-s + kk * std::log(s) - std::lgamma(kk + 1.0));
}

double binomial_pmf_exact(std::uint64_t k, std::uint64_t s) {
  if (s > k) throw DomainError("binomial pmf needs 0 <= s <= k");
  const double kk = static_cast<double>(k);
  const double ss = static_cast<double>(s);
  const double log_choose = std::lgamma(kk + 1.0) - std::lgamma(ss + 1.0) - std::lgamma(kk - ss + 1.0);
  return std::exp(log_choose - kk * std::log(2.0));
}

double poisson_block_size(double s, std::uint64_t k, double delta) {
  const double kk = static_cast<double>(k);
  return std::max(1.0, std::ceil(2.0 * (kk * kk + s * s) / delta));
}

double poisson_macro_trials(double delta, double zeta) {
  return std::ceil(2.0 * std::log(2.0 / zeta) / (delta * delta));
}

double binomial_macro_trials(double delta, double zeta) { return hoeffding_trials(delta, zeta); }

PmfEstimate poisson_pmf_estimate(double s, std::uint64_t k, double delta, double zeta,
                                 RandomSource source, const EstimatorOptions& options) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("Poisson parameter must be positive");
  check_unit_interval(delta, "delta");
  check_unit_interval(zeta, "zeta");
  const double block = poisson_block_size(s, k, delta);
  const double trials = poisson_macro_trials(delta, zeta);

  if (options.mode == Mode::strict) {
    RegisterFile* regs = options.registers;
    WorkMeter local;
    WorkMeter& meter = options.meter != nullptr ? *options.meter : local;
    Register<std::uint64_t> block_size(regs, "poisson.block_size", meter.trials(block));
    Register<std::uint64_t> macro_trials(regs, "poisson.trials", meter.trials(trials));
    Register<double> p(regs, "poisson.p", s / static_cast<double>(block_size.get()));
    Register<std::uint64_t> count(regs, "poisson.count", 0);
    for (Register<std::uint64_t> t(regs, "poisson.t", 0); t < macro_trials; ++t) {
      TrialRng rng = source.trial(t);
      Register<std::uint64_t> rng_state(regs, "poisson.rng", rng.state());
      Register<std::uint64_t> hits(regs, "poisson.hits", 0);
      Register<std::uint64_t> j(regs, "poisson.j", 0);
      for (; j < block_size; ++j) {
        if (rng.uniform() < p && (++hits).get() > k) {
          ++j;
          break;
        }
      }
      meter.charge(j);
      if (hits == k) ++count;
    }
    return finish(count, macro_trials, block_size, delta, zeta, meter.truncated());
  }

  if (block * trials > static_cast<double>(options.draw_cap)) {
    throw BudgetError("Poisson estimate needs " + std::to_string(block * trials) +
                      " Bernoulli draws, above the cap of " + std::to_string(options.draw_cap));
  }
  auto est = poisson_pmf_estimate_with(s, k, static_cast<std::uint64_t>(block),
                                       static_cast<std::uint64_t>(trials), source, options);
  est.delta = delta;
  est.zeta = zeta;
  return est;
}

PmfEstimate poisson_pmf_estimate_with(double s, std::uint64_t k, std::uint64_t block_size,
                                      std::uint64_t trials, RandomSource source,
                                      const EstimatorOptions& options) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("Poisson parameter must be positive");
  if (block_size == 0 || trials == 0) throw DomainError("block size and trials must be positive");
  const double p = s / static_cast<double>(block_size);
  if (p > 1.0) throw DomainError("block size too small for the Poisson parameter");
  const auto successes = parallel_trials(
      trials, options.workers, std::uint64_t{0},
      [&](std::uint64_t begin, std::uint64_t end, std::uint64_t& count) {
        for (std::uint64_t t = begin; t < end; ++t) {
          TrialRng rng = source.trial(t);
          if (poisson_macro_trial(rng, p, k, block_size)) ++count;
        }
      },
      [](std::uint64_t& acc, std::uint64_t part) { acc += part; });
  return finish(successes, trials, block_size, 0.0, 0.0, false);
}

PmfEstimate binomial_pmf_estimate(std::uint64_t k, std::uint64_t s, double delta, double zeta,
                                  RandomSource source, const EstimatorOptions& options) {
  if (k < 1 || s > k) throw DomainError("binomial estimate needs k >= 1 and 0 <= s <= k");
  check_unit_interval(delta, "delta");
  if (!(zeta > 0.0)) throw DomainError("zeta must be positive");
  const double trials = binomial_macro_trials(delta, zeta);

  if (options.mode == Mode::strict) {
    RegisterFile* regs = options.registers;
    WorkMeter local;
    WorkMeter& meter = options.meter != nullptr ? *options.meter : local;
    Register<std::uint64_t> macro_trials(regs, "binomial.trials", meter.trials(trials));
    Register<std::uint64_t> count(regs, "binomial.count", 0);
    for (Register<std::uint64_t> t(regs, "binomial.t", 0); t < macro_trials; ++t) {
      TrialRng rng = source.trial(t);
      Register<std::uint64_t> rng_state(regs, "binomial.rng", rng.state());
      Register<std::uint64_t> ones(regs, "binomial.ones", 0);
      for (Register<std::uint64_t> bit(regs, "binomial.bit", 0); bit < k; ++bit) {
        if (rng() >> 63) ++ones;
      }
      meter.charge(k);
      if (ones == s) ++count;
    }
    return finish(count, macro_trials, 0, delta, zeta, meter.truncated());
  }

  if (trials * static_cast<double>(k) > static_cast<double>(options.draw_cap)) {
    throw BudgetError("binomial estimate needs " + std::to_string(trials * static_cast<double>(k)) +
                      " fair bits, above the cap of " + std::to_string(options.draw_cap));
  }
  auto est = binomial_pmf_estimate_with(k, s, static_cast<std::uint64_t>(trials), source, options);
  est.delta = delta;
  est.zeta = zeta;
  return est;
}

PmfEstimate binomial_pmf_estimate_with(std::uint64_t k, std::uint64_t s, std::uint64_t trials,
                                       RandomSource source, const EstimatorOptions& options) {
  if (k < 1 || s > k) throw DomainError("binomial estimate needs k >= 1 and 0 <= s <= k");
  if (trials == 0) throw DomainError("trials must be positive");
  const auto successes = parallel_trials(
      trials, options.workers, std::uint64_t{0},
      [&](std::uint64_t begin, std::uint64_t end, std::uint64_t& count) {
        for (std::uint64_t t = begin; t < end; ++t) {
          TrialRng rng = source.trial(t);
          if (binomial_macro_trial(rng, k, s)) ++count;
        }
      },
      [](std::uint64_t& acc, std::uint64_t part) { acc += part; });
  return finish(successes, trials, 0, 0.0, 0.0, false);
}

}  // namespace logwalk

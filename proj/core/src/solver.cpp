#include "logwalk/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "logwalk/errors.hpp"
#include "logwalk/estimators.hpp"
#include "logwalk/registers.hpp"
#include "logwalk/walk.hpp"

namespace logwalk {

namespace {

// Stream labels for derived random sources.
constexpr std::uint64_t kPmfStream = 1;
constexpr std::uint64_t kHitStream = 2;
constexpr std::uint64_t kComponentStream = 3;

constexpr double kUnitNormTolerance = 1e-9;
constexpr double kProjectionNoise = 1e-12;
constexpr double kTotalPmfDrawCap = 1e10;

/// ceil() that ignores a few ulps of rounding above an exact integer.
double ceil_tol(double x) {
  return std::ceil(x * (1.0 - 4.0 * std::numeric_limits<double>::epsilon()));
}

std::uint64_t to_count(double x, const char* what) {
  if (!(x < 0x1.0p63)) throw BudgetError(std::string(what) + " exceeds the 64-bit range");
  return static_cast<std::uint64_t>(x);
}

double resolve_lambda(const WeightedGraph& g, const std::optional<double>& lambda) {
  const double value = lambda ? *lambda : lambda2_lower_bound(g);
  if (!(value > 0.0 && value <= 2.0)) throw DomainError("lambda must lie in (0, 2]");
  return value;
}

void check_common(const WeightedGraph& g, std::span<const double> b, double epsilon,
                  double gamma) {
  if (b.size() != g.size()) throw DomainError("b has the wrong length");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("epsilon must lie in (0, 1]");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw DomainError("gamma must lie in (0, 1]");
  for (double x : b) {
    if (!std::isfinite(x)) throw DomainError("b has a non-finite entry");
  }
}

/// Returns b itself or its projection onto Im(L); throws NotInImageError
/// when the kernel component exceeds the tolerance and projection is off.
std::vector<double> image_vector(const WeightedGraph& g, std::span<const double> b,
                                 double reference_norm, bool auto_project) {
  const double residual = kernel_component(g, b);
  if (residual > kImageResidualTolerance * reference_norm) {
    if (!auto_project) {
      throw NotInImageError("b has a component of " + std::to_string(residual) +
                            " along the kernel vector; pass auto_project to project it");
    }
  }
  if (!auto_project) return {b.begin(), b.end()};
  const auto projected = project_to_image(g, b);
  return {projected.entries().begin(), projected.entries().end()};
}

std::vector<double> sampled_series_weights(const SolverParams& params, RandomSource source,
                                           const ExecutionOptions& exec, double& radius) {
  const auto& sp = params.series;
  const double m = static_cast<double>(params.pmf_samples);
  if (static_cast<double>(sp.grid) * static_cast<double>(sp.max_power) * m > kTotalPmfDrawCap) {
    throw BudgetError("sampled pmf weights would need more than 1e10 macro-trials");
  }
  const double delta = std::sqrt(2.0 * std::log(2.0 / params.zeta) / m);
  radius = delta;
  std::vector<double> weights(sp.max_power, 0.0);
  const double step = static_cast<double>(sp.horizon) / static_cast<double>(sp.grid);
  EstimatorOptions est_opts;
  est_opts.workers = exec.workers;
  for (std::uint64_t j = 1; j <= sp.grid; ++j) {
    const double s = static_cast<double>(j) * step;
    for (std::uint64_t k = 0; k < sp.max_power; ++k) {
      const double block = poisson_block_size(s, k, std::min(delta, 0.999999));
      if (block * m > static_cast<double>(est_opts.draw_cap)) {
        throw BudgetError("a sampled pmf weight exceeds the per-call draw cap");
      }
      const auto a = poisson_pmf_estimate_with(s, k, static_cast<std::uint64_t>(block),
                                               params.pmf_samples,
                                               source.child({kPmfStream, j, k}), est_opts);
      weights[k] += step * a.value;
    }
  }
  return weights;
}

HitFrequencyProvider walk_provider(const AliasWalker& walker, std::uint64_t samples,
                                   RandomSource source, unsigned workers) {
  return [&walker, samples, source, workers](Vertex start, std::uint64_t steps,
                                             std::vector<double>& frequencies) {
    const auto counts = position_tallies(walker, start, steps, samples,
                                         source.child({kHitStream, start}), workers);
    frequencies.resize(counts.size());
    const double inv = 1.0 / static_cast<double>(samples);
    for (std::size_t e = 0; e < counts.size(); ++e) {
      frequencies[e] = static_cast<double>(counts[e]) * inv;
    }
  };
}

struct PracticalOutcome {
  std::vector<double> x;
  double pmf_radius = 0.0;
};

/// Practical solve of all entries for a unit image vector on a connected graph.
PracticalOutcome practical_solve(const WeightedGraph& g, std::span<const double> b,
                                 const SolverParams& params, const ExecutionOptions& exec,
                                 RandomSource source) {
  PracticalOutcome out;
  const auto weights = params.pmf_samples == 0
                           ? poisson_series_weights(params.series)
                           : sampled_series_weights(params, source, exec, out.pmf_radius);
  const AliasWalker walker(g);
  out.x = combine_series(g, b, weights,
                         walk_provider(walker, params.walk_samples, source, exec.workers));
  return out;
}

/// The verbatim triple loop for one entry.
double strict_entry(const WeightedGraph& g, std::span<const double> b, Vertex target,
                    const SolverParams& params, const ExecutionOptions& exec,
                    RandomSource source, WorkMeter& meter) {
  RegisterFile* regs = exec.registers;
  const std::size_t n = g.size();
  Register<std::uint64_t> horizon(regs, "solve.T", params.series.horizon);
  Register<std::uint64_t> grid(regs, "solve.N", params.series.grid);
  Register<std::uint64_t> max_power(regs, "solve.K", params.series.max_power);
  Register<double> delta(regs, "solve.delta", params.delta);
  Register<double> zeta(regs, "solve.zeta", params.zeta);
  Register<std::uint64_t> trials(regs, "solve.r", meter.trials(params.walk_trials));
  Register<double> acc(regs, "solve.R", 0.0);

  EstimatorOptions est_opts;
  est_opts.mode = Mode::strict;
  est_opts.registers = regs;
  est_opts.meter = &meter;

  for (Register<std::uint64_t> j(regs, "solve.j", 1); j <= grid; ++j) {
    for (Register<std::uint64_t> k(regs, "solve.k", 0); k < max_power; ++k) {
      Register<double> a(
          regs, "solve.a",
          poisson_pmf_estimate(static_cast<double>(j.get()) * static_cast<double>(horizon.get()) /
                                   static_cast<double>(grid.get()),
                               k, delta, zeta, source.child({kPmfStream, j, k}), est_opts)
              .value);
      for (Register<Vertex> l(regs, "solve.l", 0); l < n; ++l) {
        Register<std::uint64_t> hits(regs, "solve.S", 0);
        const RandomSource walks = source.child({kHitStream, j, k, l});
        for (Register<std::uint64_t> t(regs, "solve.t", 0); t < trials; ++t) {
          TrialRng rng = walks.trial(t);
          Register<std::uint64_t> rng_state(regs, "solve.rng", rng.state());
          if (walk_k(g, l, k, rng, regs) == target) ++hits;
          meter.charge(k + 1);
        }
        acc += a * b[l] * (static_cast<double>(hits.get()) / static_cast<double>(trials.get())) *
               std::sqrt(g.degree(l) / g.degree(target));
      }
    }
  }
  return acc * static_cast<double>(horizon.get()) / static_cast<double>(grid.get());
}

}  // namespace

SeriesParams series_params(double epsilon, double lambda) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw DomainError("epsilon must lie in (0, 1]");
  if (!(lambda > 0.0 && lambda <= 2.0)) throw DomainError("lambda must lie in (0, 2]");
  SeriesParams p;
  p.epsilon = epsilon;
  p.lambda = lambda;
  const double horizon = std::max(1.0, ceil_tol(std::log(6.0 / (epsilon * lambda)) / lambda));
  const double grid = ceil_tol(6.0 * horizon / epsilon);
  const double max_power = ceil_tol(std::max(6.0 * horizon, std::log(6.0 * horizon / epsilon)));
  p.horizon = to_count(horizon, "T");
  p.grid = to_count(grid, "N");
  p.max_power = to_count(max_power, "K");
  return p;
}

SolverParams solver_params(const WeightedGraph& g, Vertex target, double epsilon, double gamma,
                           double lambda, const ExecutionOptions& exec) {
  if (target >= g.size()) throw IndexError("target vertex out of range");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw DomainError("gamma must lie in (0, 1]");
  require_no_isolated_vertex(g);
  SolverParams p;
  p.series = series_params(epsilon, lambda);
  p.mode = exec.mode;
  p.gamma = gamma;
  double ratio_sum = 0.0;
  for (Vertex l = 0; l < g.size(); ++l) ratio_sum += g.degree(l) / g.degree(target);
  const double tk = static_cast<double>(p.series.horizon) * static_cast<double>(p.series.max_power);
  p.delta = 1.0 / (6.0 * tk * std::sqrt(ratio_sum));
  p.zeta = gamma / (static_cast<double>(p.series.grid) * static_cast<double>(p.series.max_power) *
                    (1.0 + static_cast<double>(g.size())));
  p.walk_trials = hoeffding_trials(p.delta, p.zeta);
  if (exec.mode == Mode::practical) {
    if (exec.budget.walk_samples == 0) throw DomainError("walk sample budget must be positive");
    p.walk_samples = exec.budget.walk_samples;
    p.pmf_samples = exec.budget.pmf_samples;
  } else {
    p.walk_samples = p.walk_trials < 0x1.0p63 ? static_cast<std::uint64_t>(p.walk_trials)
                                              : std::numeric_limits<std::uint64_t>::max();
  }
  return p;
}

std::vector<double> poisson_series_weights(const SeriesParams& params) {
  std::vector<double> weights(params.max_power, 0.0);
  const double step = static_cast<double>(params.horizon) / static_cast<double>(params.grid);
  const std::uint64_t kmax = params.max_power;
  constexpr double kRelativeFloor = 1e-18;
  for (std::uint64_t j = 1; j <= params.grid; ++j) {
    const double s = static_cast<double>(j) * step;
    // Walk outward from the mode with the ratio recurrence
    // P(k+1) = P(k) s / (k+1); terms below 1e-18 of the peak are dropped.
    const auto mode = static_cast<std::uint64_t>(std::floor(s));
    const double peak = poisson_pmf_exact(s, mode);
    double p = peak;
    for (std::uint64_t k = mode; k < kmax; ++k) {
      weights[k] += step * p;
      p *= s / static_cast<double>(k + 1);
      if (p < kRelativeFloor * peak) break;
    }
    p = peak;
    for (std::uint64_t k = mode; k > 0; --k) {
      p *= static_cast<double>(k) / s;
      if (p < kRelativeFloor * peak) break;
      if (k - 1 < kmax) weights[k - 1] += step * p;
    }
  }
  return weights;
}

std::vector<double> combine_series(const WeightedGraph& g, std::span<const double> b,
                                   std::span<const double> weights,
                                   const HitFrequencyProvider& provider) {
  const std::size_t n = g.size();
  const std::uint64_t steps = weights.empty() ? 0 : weights.size() - 1;
  std::vector<double> x(n, 0.0);
  std::vector<double> freq;
  for (Vertex l = 0; l < n; ++l) {
    if (b[l] == 0.0) continue;
    provider(l, steps, freq);
    for (Vertex i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t k = 0; k < weights.size(); ++k) acc += weights[k] * freq[k * n + i];
      x[i] += b[l] * std::sqrt(g.degree(l) / g.degree(i)) * acc;
    }
  }
  return x;
}

EntryResult solve_entry(const WeightedGraph& g, std::span<const double> b, Vertex target,
                        const SolveOptions& options, RandomSource source) {
  check_common(g, b, options.epsilon, options.gamma);
  if (target >= g.size()) throw IndexError("target vertex out of range");
  require_connected(g);
  if (g.size() < 2) throw NotApplicableError("a single vertex has no Laplacian image");
  require_no_isolated_vertex(g);
  const double bnorm = norm2(b);
  if (std::abs(bnorm - 1.0) > kUnitNormTolerance) throw DomainError("b must have unit norm");
  const auto rhs = image_vector(g, b, bnorm, options.auto_project);

  const double lambda = resolve_lambda(g, options.lambda);
  EntryResult result;
  result.params = solver_params(g, target, options.epsilon, options.gamma, lambda, options.exec);

  if (options.exec.mode == Mode::strict) {
    WorkMeter meter(options.exec.limits);
    result.value = strict_entry(g, rhs, target, result.params, options.exec, source, meter);
    result.truncated = meter.truncated();
    return result;
  }
  auto outcome = practical_solve(g, rhs, result.params, options.exec, source);
  result.value = outcome.x[target];
  result.pmf_radius = outcome.pmf_radius;
  result.hit_radius =
      hoeffding_radius(static_cast<double>(result.params.walk_samples), result.params.zeta);
  return result;
}

SolveResult solve(const WeightedGraph& g, std::span<const double> b, const SolveOptions& options,
                  NormTarget norm_target, RandomSource source) {
  check_common(g, b, options.epsilon, options.gamma);
  const std::size_t n = g.size();
  SolveResult result;
  result.x.assign(n, 0.0);
  const double nn = static_cast<double>(n);
  result.entry_gamma = options.gamma / nn;
  result.entry_epsilon =
      norm_target == NormTarget::euclidean ? options.epsilon / std::sqrt(nn) : options.epsilon;

  const double bnorm = norm2(b);
  if (bnorm == 0.0) return result;

  const auto components = connected_components(g);
  result.components = components.size();
  std::size_t largest = 0;
  for (std::size_t c = 0; c < components.size(); ++c) {
    if (components[c].size() > components[largest].size()) largest = c;
  }

  for (std::size_t c = 0; c < components.size(); ++c) {
    const auto& members = components[c];
    std::vector<double> local(members.size());
    for (std::size_t k = 0; k < members.size(); ++k) local[k] = b[members[k]];

    if (members.size() == 1) {
      // A single vertex has an empty image: b must vanish there.
      if (std::abs(local[0]) > kImageResidualTolerance * bnorm && !options.auto_project) {
        throw NotInImageError("b is non-zero on isolated vertex " + std::to_string(members[0]));
      }
      continue;
    }

    const WeightedGraph sub = components.size() == 1 ? g : g.induced(members);
    const RandomSource sub_source =
        components.size() == 1 ? source : source.child({kComponentStream, c});
    auto rhs = image_vector(sub, local, bnorm, options.auto_project);
    // Projection leaves rounding noise behind when b lies in the kernel.
    double scale = norm2(rhs);
    if (scale <= kProjectionNoise * bnorm) continue;
    if (std::abs(scale - 1.0) <= kUnitNormTolerance) {
      scale = 1.0;
    } else {
      for (double& v : rhs) v /= scale;
    }

    const double lambda = resolve_lambda(sub, options.lambda);
    std::vector<double> xs(members.size(), 0.0);
    if (options.exec.mode == Mode::strict) {
      WorkMeter meter(options.exec.limits);
      for (Vertex i = 0; i < members.size(); ++i) {
        const auto params = solver_params(sub, i, result.entry_epsilon, result.entry_gamma,
                                          lambda, options.exec);
        if (c == largest && i == 0) result.params = params;
        xs[i] = strict_entry(sub, rhs, i, params, options.exec, sub_source, meter);
      }
      result.truncated = result.truncated || meter.truncated();
    } else {
      const auto params = solver_params(sub, 0, result.entry_epsilon, result.entry_gamma, lambda,
                                        options.exec);
      if (c == largest) {
        result.params = params;
        result.hit_radius =
            hoeffding_radius(static_cast<double>(params.walk_samples), params.zeta);
      }
      auto outcome = practical_solve(sub, rhs, params, options.exec, sub_source);
      xs = std::move(outcome.x);
      result.pmf_radius = std::max(result.pmf_radius, outcome.pmf_radius);
    }
    for (std::size_t k = 0; k < members.size(); ++k) result.x[members[k]] = scale * xs[k];
  }
  return result;
}

}  // namespace logwalk

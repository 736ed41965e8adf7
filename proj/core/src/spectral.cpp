#include "logwalk/spectral.hpp"

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

constexpr std::uint64_t kPmfStream = 1;
constexpr std::uint64_t kWalkStream = 2;

void check_unit_interval(double x, const char* name) {
  if (!(x > 0.0 && x <= 1.0)) throw DomainError(std::string(name) + " must lie in (0, 1]");
}

/// sqrt(d_a d_b / ((d_a + d_b) d_i)), the weight of a walk count at i.
double pair_weight(const WeightedGraph& g, Vertex a, Vertex b, Vertex i) {
  const double da = g.degree(a);
  const double db = g.degree(b);
  return std::sqrt(da * db / ((da + db) * g.degree(i)));
}

/// Norm of the per-vertex weights, sqrt(sum_i pair_weight(i)^2).
double pair_weight_norm(const WeightedGraph& g, Vertex a, Vertex b) {
  double sum = 0.0;
  for (Vertex i = 0; i < g.size(); ++i) {
    const double c = pair_weight(g, a, b, i);
    sum += c * c;
  }
  return std::sqrt(sum);
}

void check_sigma(const WeightedGraph& g, const SigmaVector& v) {
  if (v.first >= g.size() || v.second >= g.size()) throw IndexError("sigma index out of range");
  if (v.first == v.second) throw DomainError("sigma vector needs two distinct indices");
}

double strict_norm(const WeightedGraph& g, const SigmaVector& v, const NormParams& params,
                   RegisterFile* regs, RandomSource source, WorkMeter& meter) {
  const std::size_t n = g.size();
  Register<std::uint64_t> power(regs, "norm.k", params.power);
  Register<double> delta(regs, "norm.delta", params.delta);
  Register<double> zeta(regs, "norm.zeta", params.zeta);
  Register<std::uint64_t> trials(regs, "norm.r", meter.trials(params.walk_trials));
  // l1 carries the positive coefficient of v, l2 the negative one.
  Register<Vertex> l1(regs, "norm.l1", v.second);
  Register<Vertex> l2(regs, "norm.l2", v.first);
  Register<double> acc(regs, "norm.R", 0.0);

  EstimatorOptions est_opts;
  est_opts.mode = Mode::strict;
  est_opts.registers = regs;
  est_opts.meter = &meter;

  for (Register<Vertex> i(regs, "norm.i", 0); i < n; ++i) {
    Register<double> q(regs, "norm.Q", 0.0);
    for (Register<std::uint64_t> s(regs, "norm.s", 0); s <= power; ++s) {
      Register<double> a(
          regs, "norm.a",
          binomial_pmf_estimate(power, s, delta, zeta, source.child({kPmfStream, i, s}), est_opts)
              .value);
      Register<double> weight(regs, "norm.c", pair_weight(g, l1, l2, i));
      Register<std::uint64_t> hits(regs, "norm.S", 0);
      {
        const RandomSource walks = source.child({kWalkStream, i, s, 0});
        for (Register<std::uint64_t> t(regs, "norm.t", 0); t < trials; ++t) {
          TrialRng rng = walks.trial(t);
          Register<std::uint64_t> rng_state(regs, "norm.rng", rng.state());
          if (walk_k(g, l1, s, rng, regs) == i) ++hits;
          meter.charge(s + 1);
        }
      }
      q += a * (static_cast<double>(hits.get()) / static_cast<double>(trials.get())) * weight;
      hits = 0;
      {
        const RandomSource walks = source.child({kWalkStream, i, s, 1});
        for (Register<std::uint64_t> t(regs, "norm.t", 0); t < trials; ++t) {
          TrialRng rng = walks.trial(t);
          Register<std::uint64_t> rng_state(regs, "norm.rng", rng.state());
          if (walk_k(g, l2, s, rng, regs) == i) ++hits;
          meter.charge(s + 1);
        }
      }
      q -= a * (static_cast<double>(hits.get()) / static_cast<double>(trials.get())) * weight;
    }
    acc += q * q;
  }
  return std::sqrt(acc.get());
}

struct PracticalNorm {
  double value = 0.0;
  double radius = 0.0;
};

PracticalNorm practical_norm(const WeightedGraph& g, const AliasWalker& walker,
                             const SigmaVector& v, const NormParams& params, unsigned workers,
                             RandomSource source) {
  const std::size_t n = g.size();
  const std::uint64_t k = params.power;
  const std::uint64_t r = params.walk_samples;
  const Vertex l1 = v.second;
  const Vertex l2 = v.first;

  std::vector<double> weights(k + 1);
  double pmf_radius = 0.0;
  if (params.pmf_samples == 0) {
    for (std::uint64_t s = 0; s <= k; ++s) weights[s] = binomial_pmf_exact(k, s);
  } else {
    EstimatorOptions est_opts;
    est_opts.workers = workers;
    for (std::uint64_t s = 0; s <= k; ++s) {
      weights[s] = binomial_pmf_estimate_with(k, s, params.pmf_samples,
                                              source.child({kPmfStream, s}), est_opts)
                       .value;
    }
    pmf_radius = hoeffding_radius(static_cast<double>(params.pmf_samples), params.zeta);
  }

  const auto from_l1 = position_tallies(walker, l1, k, r, source.child({kWalkStream, 0}), workers);
  const auto from_l2 = position_tallies(walker, l2, k, r, source.child({kWalkStream, 1}), workers);

  const double inv_r = 1.0 / static_cast<double>(r);
  double sum = 0.0;
  for (Vertex i = 0; i < n; ++i) {
    double q = 0.0;
    for (std::uint64_t s = 0; s <= k; ++s) {
      const double diff = static_cast<double>(from_l1[s * n + i]) -
                          static_cast<double>(from_l2[s * n + i]);
      q += weights[s] * diff * inv_r;
    }
    q *= pair_weight(g, l1, l2, i);
    sum += q * q;
  }

  PracticalNorm out;
  out.value = std::sqrt(sum);
  // Each frequency is off by at most h; the weights sum to one, so each
  // entry of Q is off by at most 2 h c_i.
  const double h = hoeffding_radius(static_cast<double>(r), params.zeta);
  out.radius = 2.0 * (h + static_cast<double>(k + 1) * pmf_radius) * pair_weight_norm(g, l1, l2);
  return out;
}

struct NormContext {
  const WeightedGraph& g;
  const ExecutionOptions& exec;
  const AliasWalker* walker;  // practical only
  WorkMeter* meter;           // strict only
};

NormEstimate run_norm(const NormContext& ctx, std::uint64_t k, const SigmaVector& v,
                      double epsilon, double gamma, RandomSource source) {
  NormEstimate out;
  out.params = norm_params(ctx.g, k, epsilon, gamma, ctx.exec);
  if (ctx.exec.mode == Mode::strict) {
    out.value = strict_norm(ctx.g, v, out.params, ctx.exec.registers, source, *ctx.meter);
    out.truncated = ctx.meter->truncated();
  } else {
    const auto p = practical_norm(ctx.g, *ctx.walker, v, out.params, ctx.exec.workers, source);
    out.value = p.value;
    out.radius = p.radius;
  }
  return out;
}

void require_gap_input(const WeightedGraph& g) {
  if (g.size() < 4) throw TooSmallError("spectral gap estimation needs n >= 4");
  require_connected(g);
  require_no_isolated_vertex(g);
}

}  // namespace

std::vector<double> SigmaVector::dense(std::size_t n) const {
  std::vector<double> v(n, 0.0);
  v[first] = first_coeff;
  v[second] = second_coeff;
  return v;
}

SigmaVector sigma_vector(const WeightedGraph& g, Vertex first, Vertex second) {
  if (first >= g.size() || second >= g.size()) throw IndexError("sigma index out of range");
  if (first == second) throw DomainError("sigma vector needs two distinct indices");
  const double di = g.degree(first);
  const double dj = g.degree(second);
  if (!(di > 0.0) || !(dj > 0.0)) throw IsolatedVertexError("sigma vector on an isolated vertex");
  SigmaVector v;
  v.first = first;
  v.second = second;
  v.first_coeff = -1.0 / std::sqrt(1.0 + di / dj);
  v.second_coeff = 1.0 / std::sqrt(1.0 + dj / di);
  return v;
}

std::vector<SigmaVector> sigma_vectors(const WeightedGraph& g) {
  std::vector<SigmaVector> out;
  const std::size_t n = g.size();
  out.reserve(n * (n - (n > 0 ? 1 : 0)) / 2);
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) out.push_back(sigma_vector(g, i, j));
  }
  return out;
}

NormParams norm_params(const WeightedGraph& g, std::uint64_t k, double epsilon, double gamma,
                       const ExecutionOptions& exec) {
  if (k == 0) throw DomainError("power k must be positive");
  check_unit_interval(epsilon, "epsilon");
  check_unit_interval(gamma, "gamma");
  const double n = static_cast<double>(g.size());
  const double kk = static_cast<double>(k) + 1.0;
  NormParams p;
  p.power = k;
  p.epsilon = epsilon;
  p.gamma = gamma;
  p.mode = exec.mode;
  p.delta = epsilon * epsilon * std::sqrt(2.0) / (54.0 * kk * n * degree_ratio(g));
  p.zeta = gamma / (3.0 * n * kk);
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

NormEstimate estimate_norm(const WeightedGraph& g, std::uint64_t k, const SigmaVector& v,
                           double epsilon, double gamma, const ExecutionOptions& exec,
                           RandomSource source) {
  require_connected(g);
  require_no_isolated_vertex(g);
  check_sigma(g, v);
  WorkMeter meter(exec.limits);
  std::optional<AliasWalker> walker;
  if (exec.mode == Mode::practical) walker.emplace(g);
  const NormContext ctx{g, exec, walker ? &*walker : nullptr, &meter};
  return run_norm(ctx, k, v, epsilon, gamma, source);
}

GapParams gap_params(const WeightedGraph& g, double delta, double gamma, double lambda) {
  check_unit_interval(delta, "delta");
  check_unit_interval(gamma, "gamma");
  if (!(lambda > 0.0 && lambda <= 2.0)) throw DomainError("lambda must lie in (0, 2]");
  if (g.size() < 2) throw TooSmallError("spectral gap parameters need n >= 2");
  const double n = static_cast<double>(g.size());
  GapParams p;
  p.delta = delta;
  p.gamma = gamma;
  p.lambda = lambda;
  p.log_tau = -std::log(2.0) - (1.0 + 8.0 / delta) * std::log(std::sqrt(2.0) * n * degree_ratio(g));
  p.tau = std::exp(p.log_tau);
  p.epsilon = delta * lambda * p.tau / 12.0;
  p.zeta = (4.0 * gamma / (n * (n - 1.0))) / (1.0 - p.log_tau / lambda);
  return p;
}

GapResult lambda2_estimate(const WeightedGraph& g, const GapOptions& options,
                           RandomSource source) {
  require_gap_input(g);
  const double lambda = options.lambda ? *options.lambda : lambda2_lower_bound(g);
  GapResult result;
  result.params = gap_params(g, options.delta, options.gamma, lambda);
  const GapParams& gp = result.params;
  const ExecutionOptions& exec = options.exec;
  const std::size_t n = g.size();

  WorkMeter meter(exec.limits);
  std::optional<AliasWalker> walker;
  if (exec.mode == Mode::practical) walker.emplace(g);
  const NormContext ctx{g, exec, walker ? &*walker : nullptr, &meter};
  const double norm_epsilon = gp.epsilon;
  const double norm_gamma = gp.zeta;
  if (!(norm_epsilon > 0.0)) throw BudgetError("tau underflows double precision");

  RegisterFile* regs = exec.mode == Mode::strict ? exec.registers : nullptr;
  const double base_tau = gp.tau;
  Register<double> r_max(regs, "gap.Rmax", 0.0);
  for (Register<Vertex> i(regs, "gap.i", 0); i < n; ++i) {
    for (Register<Vertex> j(regs, "gap.j", i + 1); j < n; ++j) {
      const SigmaVector v = sigma_vector(g, i, j);
      double tau = base_tau;
      if (exec.mode == Mode::practical) {
        const double h = hoeffding_radius(static_cast<double>(exec.budget.walk_samples), gp.zeta);
        const double pmf =
            exec.budget.pmf_samples == 0
                ? 0.0
                : hoeffding_radius(static_cast<double>(exec.budget.pmf_samples), gp.zeta);
        // Three times the radius of the power-2 call. With exact weights the
        // radius does not depend on the power.
        tau = std::max(tau, 3.0 * 2.0 * (h + 3.0 * pmf) * pair_weight_norm(g, v.second, v.first));
      }
      Register<double> threshold(regs, "gap.tau", tau);
      Register<std::uint64_t> k_max(
          regs, "gap.kmax",
          static_cast<std::uint64_t>(std::ceil(-2.0 * std::log(tau) / gp.lambda)) + 1);
      result.threshold = std::max(result.threshold, tau);

      Register<std::uint64_t> k(regs, "gap.k", 1);
      const auto call = [&](std::uint64_t power) {
        ++result.norm_calls;
        const auto est =
            run_norm(ctx, power, v, norm_epsilon, norm_gamma, source.child({i, j, power}));
        result.truncated = result.truncated || est.truncated;
        return est.value;
      };
      Register<double> c1(regs, "gap.C1", call(1));
      Register<double> c2(regs, "gap.C2", call(2));
      while (c2 >= 1.5 * threshold) {
        if (c1 >= 1.5 * threshold && c2 / c1 > r_max) {
          r_max = c2 / c1;
          result.best = std::make_pair(i.get(), j.get());
        }
        if (k >= k_max) break;
        ++k;
        c1 = c2.get();
        c2 = call(k + 1);
      }
    }
  }
  result.ratio = r_max;
  result.value = 2.0 * (1.0 - r_max);
  return result;
}

PowerRatioBounds power_ratio_bounds(double lambda2, double delta, double zeta, std::uint64_t k,
                                    std::size_t n, double degree_ratio) {
  PowerRatioBounds b;
  b.lower = (1.0 - delta) * lambda2;
  b.upper = (1.0 + delta) * lambda2;
  b.premise_holds = zeta <= delta * lambda2 / 12.0;
  b.min_power = 3.0 * std::log(std::sqrt(2.0) * static_cast<double>(n) * degree_ratio) /
                    (delta * lambda2) -
                1.0;
  b.power_sufficient = static_cast<double>(k) >= b.min_power;
  return b;
}

}  // namespace logwalk

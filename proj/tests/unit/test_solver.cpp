#include <doctest.h>

#include <cmath>
#include <vector>

#include "corpus.hpp"
#include "logwalk/errors.hpp"
#include "logwalk/generators.hpp"
#include "logwalk/oracle.hpp"
#include "logwalk/registers.hpp"
#include "logwalk/solver.hpp"

using namespace logwalk;

namespace {

const double kHalfRoot = 1.0 / std::sqrt(2.0);

HitFrequencyProvider exact_provider(const WeightedGraph& g) {
  return [&g](Vertex start, std::uint64_t steps, std::vector<double>& freq) {
    const std::size_t n = g.size();
    freq.assign((steps + 1) * n, 0.0);
    std::vector<double> row(n, 0.0);
    row[start] = 1.0;
    for (std::uint64_t s = 0; s <= steps; ++s) {
      for (std::size_t v = 0; v < n; ++v) freq[s * n + v] = row[v];
      std::vector<double> next(n, 0.0);
      for (Vertex i = 0; i < n; ++i) {
        for (const auto& nb : g.neighbors(i)) next[nb.vertex] += row[i] * nb.weight / g.degree(i);
      }
      row.swap(next);
    }
  };
}

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("series parameters") {
    const auto a = series_params(0.1, 1.0);
    CHECK(a.horizon == 5);
    CHECK(a.grid == 300);
    CHECK(a.max_power == 30);
    const auto b = series_params(1.0, 2.0);
    CHECK(b.horizon == 1);
    CHECK(b.grid == 6);
    CHECK(b.max_power == 6);
    CHECK_THROWS_AS(series_params(0.1, 2.5), DomainError);
    CHECK_THROWS_AS(series_params(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(series_params(1.5, 1.0), DomainError);

    for (double lambda : {0.01, 0.3, 1.7}) {
      const auto p = series_params(0.07, lambda);
      CHECK(static_cast<double>(p.horizon) >= std::log(6.0 / (0.07 * lambda)) / lambda);
      CHECK(static_cast<double>(p.horizon) - 1.0 < std::log(6.0 / (0.07 * lambda)) / lambda);
      CHECK(static_cast<double>(p.grid) >= 6.0 * p.horizon / 0.07);
      CHECK(static_cast<double>(p.max_power) >= 6.0 * p.horizon);
    }
  }

  TEST_CASE("strict parameters follow the closed forms") {
    const auto k3 = complete_graph(3);
    ExecutionOptions exec;
    exec.mode = Mode::strict;
    const auto p = solver_params(k3, 2, 0.1, 0.1, 1.5, exec);
    const double t = static_cast<double>(p.series.horizon);
    const double k = static_cast<double>(p.series.max_power);
    CHECK(p.delta == doctest::Approx(1.0 / (6.0 * t * k * std::sqrt(3.0))));
    CHECK(p.zeta == doctest::Approx(0.1 / (static_cast<double>(p.series.grid) * k * 4.0)));
    CHECK(p.walk_trials == std::ceil(std::log(2.0 / p.zeta) / (2.0 * p.delta * p.delta)));

    const auto star = star_graph(3);
    const auto center = solver_params(star, 0, 0.1, 0.1, 0.1, exec);
    const auto leaf = solver_params(star, 1, 0.1, 0.1, 0.1, exec);
    // sum_l d_l / d_i is 2 at the center and 6 at a leaf.
    CHECK(center.delta / leaf.delta == doctest::Approx(std::sqrt(3.0)));
  }

  TEST_CASE("tightening epsilon never loosens strict parameters") {
    const auto g = path_graph(4);
    ExecutionOptions exec;
    exec.mode = Mode::strict;
    SolverParams last = solver_params(g, 1, 1.0, 0.1, 0.2, exec);
    for (double eps : {0.5, 0.2, 0.1, 0.05, 0.01}) {
      const auto p = solver_params(g, 1, eps, 0.1, 0.2, exec);
      CHECK(p.series.horizon >= last.series.horizon);
      CHECK(p.series.grid >= last.series.grid);
      CHECK(p.series.max_power >= last.series.max_power);
      CHECK(p.walk_trials >= last.walk_trials);
      last = p;
    }
  }

  TEST_CASE("series weights agree with the oracle weights") {
    for (double lambda : {0.5, 0.05, 0.004}) {
      const auto params = series_params(0.05, lambda);
      const auto fast = poisson_series_weights(params);
      const auto reference = series_weights(params);
      REQUIRE(fast.size() == reference.size());
      double total = 0.0;
      for (std::size_t k = 0; k < fast.size(); ++k) {
        CHECK(std::abs(fast[k] - reference[k]) <= 1e-12 * std::max(1.0, reference[k]));
        total += fast[k];
      }
      // Each Poisson law has almost all of its mass below K.
      CHECK(total == doctest::Approx(static_cast<double>(params.horizon)).epsilon(1e-6));
    }
  }

  TEST_CASE("exact hit probabilities reproduce the dense series") {
    auto graphs = testing::corpus();
    for (const auto& [name, g] : graphs) {
      if (g.size() > 12) continue;
      CAPTURE(name);
      const auto params = series_params(0.1, lambda2_lower_bound(g));
      const auto b = testing::random_image_vector(g, 3);
      const auto combined = combine_series(g, b, poisson_series_weights(params), exact_provider(g));
      const auto dense = series_eval(g, b, params);
      CHECK(testing::max_abs(combined, dense) <= 1e-12);
    }
  }

  TEST_CASE("K2 practical solve lands near the pseudo-inverse") {
    const auto k2 = complete_graph(2);
    const std::vector<double> b{kHalfRoot, -kHalfRoot};
    SolveOptions options;
    options.epsilon = 0.1;
    int close = 0;
    const int runs = 20;
    for (int seed = 0; seed < runs; ++seed) {
      const auto r = solve_entry(k2, b, 0, options, RandomSource(seed));
      if (std::abs(r.value - 0.5 * kHalfRoot) <= 0.05) ++close;
      CHECK(r.hit_radius > 0.0);
    }
    CHECK(close >= 18);
  }

  TEST_CASE("entry solve matches the vector solve bit for bit") {
    const auto c5 = cycle_graph(5);
    std::vector<double> b(5, 0.0);
    b[0] = kHalfRoot;
    b[1] = -kHalfRoot;
    SolveOptions options;
    options.epsilon = 0.2;
    options.exec.budget.walk_samples = 20000;
    const auto whole = solve(c5, b, options, NormTarget::entrywise, RandomSource(4));
    for (Vertex i = 0; i < 5; ++i) {
      CHECK(solve_entry(c5, b, i, options, RandomSource(4)).value == whole.x[i]);
    }
    options.exec.workers = 3;
    const auto threaded = solve(c5, b, options, NormTarget::entrywise, RandomSource(4));
    CHECK(threaded.x == whole.x);
  }

  TEST_CASE("input validation") {
    const auto k2 = complete_graph(2);
    const std::vector<double> parallel{kHalfRoot, kHalfRoot};
    SolveOptions options;
    CHECK_THROWS_AS(solve_entry(k2, parallel, 0, options, RandomSource(1)), NotInImageError);
    CHECK_THROWS_AS(solve(k2, parallel, options, NormTarget::entrywise, RandomSource(1)),
                    NotInImageError);
    options.auto_project = true;
    const auto projected = solve(k2, parallel, options, NormTarget::entrywise, RandomSource(1));
    CHECK(projected.x == std::vector<double>{0.0, 0.0});

    const std::vector<double> not_unit{1.0, -1.0};
    CHECK_THROWS_AS(solve_entry(k2, not_unit, 0, SolveOptions{}, RandomSource(1)), DomainError);
    const auto two = WeightedGraph::from_edges(4, std::vector<Edge>{{0, 1, 1.0}, {2, 3, 1.0}});
    CHECK_THROWS_AS(solve_entry(two, std::vector<double>{kHalfRoot, -kHalfRoot, 0, 0}, 0,
                                SolveOptions{}, RandomSource(1)),
                    DisconnectedError);
    SolveOptions bad;
    bad.lambda = 2.5;
    CHECK_THROWS_AS(solve_entry(k2, std::vector<double>{kHalfRoot, -kHalfRoot}, 0, bad,
                                RandomSource(1)),
                    DomainError);
  }

  TEST_CASE("zero right-hand side") {
    const auto r =
        solve(cycle_graph(6), std::vector<double>(6, 0.0), SolveOptions{}, NormTarget::entrywise,
              RandomSource(1));
    CHECK(r.x == std::vector<double>(6, 0.0));
  }

  TEST_CASE("disconnected graphs are solved per component") {
    const auto two = WeightedGraph::from_edges(4, std::vector<Edge>{{0, 1, 1.0}, {2, 3, 1.0}});
    const std::vector<double> b{0.5, -0.5, 0.5, -0.5};
    SolveOptions options;
    options.epsilon = 0.1;
    const auto r = solve(two, b, options, NormTarget::entrywise, RandomSource(2));
    CHECK(r.components == 2);
    // Each K2 block maps (1, -1)/2 to (1, -1)/4.
    for (Vertex i = 0; i < 4; ++i) CHECK(std::abs(r.x[i] - (i % 2 == 0 ? 0.25 : -0.25)) <= 0.05);

    const std::vector<double> left_only{kHalfRoot, -kHalfRoot, 0.0, 0.0};
    const auto l = solve(two, left_only, options, NormTarget::entrywise, RandomSource(2));
    CHECK(l.x[2] == 0.0);
    CHECK(l.x[3] == 0.0);

    const std::vector<double> unbalanced{1.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(solve(two, unbalanced, options, NormTarget::entrywise, RandomSource(2)),
                    NotInImageError);
  }

  TEST_CASE("euclidean target") {
    const auto k2 = complete_graph(2);
    SolveOptions options;
    options.epsilon = 0.1;
    const auto r = solve(k2, std::vector<double>{kHalfRoot, -kHalfRoot}, options,
                         NormTarget::euclidean, RandomSource(3));
    CHECK(r.entry_epsilon == doctest::Approx(0.1 / std::sqrt(2.0)));
    CHECK(r.entry_gamma == doctest::Approx(0.05));
    const std::vector<double> exact{0.5 * kHalfRoot, -0.5 * kHalfRoot};
    CHECK(testing::l2_distance(r.x, exact) <= 0.1);
  }

  TEST_CASE("sampled pmf weights") {
    const auto k2 = complete_graph(2);
    SolveOptions options;
    options.epsilon = 1.0;
    options.lambda = 2.0;
    options.exec.budget.pmf_samples = 4000;
    const auto r = solve_entry(k2, std::vector<double>{kHalfRoot, -kHalfRoot}, 0, options,
                               RandomSource(5));
    CHECK(r.pmf_radius > 0.0);
    CHECK(std::abs(r.value - 0.5 * kHalfRoot) <= 1.0);
  }

  TEST_CASE("strict mode") {
    const auto k2 = complete_graph(2);
    const std::vector<double> b{kHalfRoot, -kHalfRoot};
    SolveOptions options;
    options.epsilon = 1.0;
    options.lambda = 2.0;
    options.exec.mode = Mode::strict;
    options.exec.limits = StrictLimits{0, 100000};
    CHECK_THROWS_AS(solve_entry(k2, b, 0, options, RandomSource(1)), BudgetError);

    RegisterFile file;
    options.exec.limits = StrictLimits{16, 0};
    options.exec.registers = &file;
    const auto r = solve_entry(k2, b, 0, options, RandomSource(1));
    CHECK(r.truncated);
    CHECK(file.live() == 0);
    CHECK(file.high_water_mark() > 10);
    const auto again = solve_entry(k2, b, 0, options, RandomSource(1));
    CHECK(again.value == r.value);
  }
}

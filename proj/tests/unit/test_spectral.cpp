#include <doctest.h>

#include <cmath>
#include <vector>

#include "corpus.hpp"
#include "logwalk/errors.hpp"
#include "logwalk/generators.hpp"
#include "logwalk/oracle.hpp"
#include "logwalk/registers.hpp"
#include "logwalk/spectral.hpp"

using namespace logwalk;

TEST_SUITE("spectral") {
  TEST_CASE("sigma vectors") {
    const auto k2 = sigma_vectors(complete_graph(2));
    REQUIRE(k2.size() == 1);
    CHECK(k2[0].first_coeff == doctest::Approx(-1.0 / std::sqrt(2.0)));
    CHECK(k2[0].second_coeff == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(sigma_vectors(path_graph(3)).size() == 3);

    const auto star = sigma_vector(star_graph(3), 0, 1);
    CHECK(star.first_coeff == doctest::Approx(-0.5));
    CHECK(star.second_coeff == doctest::Approx(std::sqrt(0.75)));

    for (const auto& [name, g] : testing::corpus()) {
      CAPTURE(name);
      const auto all = sigma_vectors(g);
      CHECK(all.size() == g.size() * (g.size() - 1) / 2);
      for (const auto& v : all) {
        const auto d = v.dense(g.size());
        CHECK(std::abs(norm2(d) - 1.0) <= 1e-12);
        CHECK(kernel_component(g, d) <= 1e-12);
      }
    }
    CHECK_THROWS_AS(sigma_vector(complete_graph(3), 1, 1), DomainError);
  }

  TEST_CASE("norm parameters") {
    const auto g = star_graph(3);
    const auto p = norm_params(g, 2, 0.5, 0.3, ExecutionOptions{});
    CHECK(p.delta == doctest::Approx(0.25 * std::sqrt(2.0) / (54.0 * 3.0 * 4.0 * 3.0)));
    CHECK(p.zeta == doctest::Approx(0.3 / (3.0 * 4.0 * 3.0)));
    CHECK(p.walk_trials == std::ceil(std::log(2.0 / p.zeta) / (2.0 * p.delta * p.delta)));
    CHECK(p.walk_samples == 100000);
    CHECK_THROWS_AS(norm_params(g, 0, 0.5, 0.3, ExecutionOptions{}), DomainError);
  }

  TEST_CASE("gap parameters") {
    const auto p = gap_params(complete_graph(4), 1.0, 0.1, 1.0);
    CHECK(p.tau == doctest::Approx(8.43e-8).epsilon(1e-3));
    CHECK(p.tau == doctest::Approx(1.0 / (2.0 * std::pow(4.0 * std::sqrt(2.0), 9.0))));
    CHECK(p.epsilon < p.tau / 2.0);
    CHECK(p.zeta == doctest::Approx((4.0 * 0.1 / 12.0) / (1.0 + std::log(1.0 / p.tau))));
    double last = 1.0;
    for (double delta : {1.0, 0.8, 0.5, 0.3}) {
      const auto q = gap_params(cycle_graph(6), delta, 0.1, 0.3);
      CHECK(q.tau < last);
      CHECK(q.epsilon < q.tau / 2.0);
      last = q.tau;
    }
    const auto big = gap_params(cycle_graph(5000), 0.05, 0.1, 0.001);
    CHECK(big.tau == 0.0);
    CHECK(big.log_tau < -700.0);
    CHECK(big.zeta > 0.0);
    CHECK_THROWS_AS(gap_params(complete_graph(4), 0.0, 0.1, 1.0), DomainError);
    CHECK_THROWS_AS(gap_params(complete_graph(4), 0.2, 0.1, 3.0), DomainError);
  }

  TEST_CASE("estimate_norm examples") {
    ExecutionOptions exec;
    const auto k2 = complete_graph(2);
    for (int seed = 0; seed < 10; ++seed) {
      CHECK(estimate_norm(k2, 1, sigma_vector(k2, 0, 1), 0.1, 0.1, exec, RandomSource(seed)).value <=
            0.1);
    }
    const auto k3 = complete_graph(3);
    const auto v = sigma_vector(k3, 0, 1);
    const auto e = estimate_norm(k3, 1, v, 0.1, 0.1, exec, RandomSource(1));
    CHECK(std::abs(e.value - 0.25) <= 0.1);
    CHECK(e.radius > 0.0);

    const auto p3 = path_graph(3);
    const auto w = sigma_vector(p3, 0, 2);
    const double exact = norm2(dense_power_apply(p3, 2, w.dense(3)));
    CHECK(std::abs(estimate_norm(p3, 2, w, 0.1, 0.1, exec, RandomSource(2)).value - exact) <=
          0.1);
  }

  TEST_CASE("estimate_norm stays within [0, 1 + epsilon]") {
    ExecutionOptions exec;
    exec.budget.walk_samples = 2000;
    for (const auto& [name, g] : testing::corpus()) {
      if (g.size() > 8) continue;
      CAPTURE(name);
      const auto v = sigma_vector(g, 0, g.size() - 1);
      for (std::uint64_t k = 1; k <= 4; ++k) {
        const double value = estimate_norm(g, k, v, 0.1, 0.1, exec, RandomSource(k)).value;
        CHECK(value >= 0.0);
        CHECK(value <= 1.1);
      }
    }
  }

  TEST_CASE("estimate_norm is independent of the worker count") {
    const auto g = testing::corpus().back().graph;
    const auto v = sigma_vector(g, 1, 4);
    ExecutionOptions one;
    one.budget.walk_samples = 30000;
    ExecutionOptions three = one;
    three.workers = 3;
    CHECK(estimate_norm(g, 3, v, 0.1, 0.1, one, RandomSource(6)).value ==
          estimate_norm(g, 3, v, 0.1, 0.1, three, RandomSource(6)).value);
  }

  TEST_CASE("strict estimate_norm with registers") {
    RegisterFile file;
    ExecutionOptions exec;
    exec.mode = Mode::strict;
    exec.limits = StrictLimits{32, 0};
    exec.registers = &file;
    const auto g = complete_graph(3);
    const auto e = estimate_norm(g, 1, sigma_vector(g, 0, 1), 0.5, 0.5, exec, RandomSource(1));
    CHECK(e.truncated);
    CHECK(e.value >= 0.0);
    CHECK(file.live() == 0);
    CHECK(file.high_water_mark() > 0);
  }

  TEST_CASE("lambda2_estimate on K4") {
    GapOptions options;
    const auto r = lambda2_estimate(complete_graph(4), options, RandomSource(3));
    CHECK(std::abs(r.value - 4.0 / 3.0) <= 0.2 * 4.0 / 3.0);
    CHECK(r.best.has_value());
    CHECK(r.norm_calls >= 12);
    CHECK(r.threshold > r.params.tau);
    options.exec.workers = 2;
    CHECK(lambda2_estimate(complete_graph(4), options, RandomSource(3)).value == r.value);
  }

  TEST_CASE("lambda2_estimate preconditions") {
    CHECK_THROWS_AS(lambda2_estimate(complete_graph(3), GapOptions{}, RandomSource(1)),
                    TooSmallError);
    const auto two = WeightedGraph::from_edges(
        6, std::vector<Edge>{{0, 1, 1.0}, {1, 2, 1.0}, {3, 4, 1.0}, {4, 5, 1.0}});
    CHECK_THROWS_AS(lambda2_estimate(two, GapOptions{}, RandomSource(1)), DisconnectedError);
  }

  TEST_CASE("strict lambda2_estimate stops on the work limit") {
    RegisterFile file;
    GapOptions options;
    options.delta = 1.0;
    options.exec.mode = Mode::strict;
    options.exec.limits = StrictLimits{4, 50000};
    options.exec.registers = &file;
    CHECK_THROWS_AS(lambda2_estimate(cycle_graph(8), options, RandomSource(1)), BudgetError);
    CHECK(file.live() == 0);
  }

  TEST_CASE("power-method bounds with exact norms") {
    for (const auto& [name, g] : testing::corpus()) {
      if (g.size() < 4 || g.size() > 8) continue;
      CAPTURE(name);
      const auto spec = spectrum(g);
      const double l2 = lambda2_exact(spec);
      const double delta = 0.5;
      // Part (i): every v in Sigma, every k, exact ratios never undershoot.
      for (const auto& v : sigma_vectors(g)) {
        auto x = dense_power_apply(g, 1, v.dense(g.size()));
        for (std::uint64_t k = 1; k <= 10; ++k) {
          const auto y = dense_power_apply(g, 1, x);
          const double ratio = norm2(y) / norm2(x);
          const auto bounds = power_ratio_bounds(l2, delta, 0.0, k, g.size(), degree_ratio(g));
          CHECK(bounds.premise_holds);
          CHECK(2.0 * (1.0 - ratio) >= bounds.lower - 1e-12);
          x = y;
        }
      }
      // Part (ii): the best Sigma vector at the threshold power.
      const auto probe = power_ratio_bounds(l2, delta, 0.0, 0, g.size(), degree_ratio(g));
      const auto k = static_cast<std::uint64_t>(std::ceil(std::max(1.0, probe.min_power)));
      double best = 0.0;
      for (const auto& v : sigma_vectors(g)) {
        const auto x = dense_power_apply(g, k, v.dense(g.size()));
        const auto y = dense_power_apply(g, 1, x);
        best = std::max(best, norm2(y) / norm2(x));
      }
      const auto at = power_ratio_bounds(l2, delta, 0.0, k, g.size(), degree_ratio(g));
      CHECK(at.power_sufficient);
      CHECK(2.0 * (1.0 - best) <= at.upper + 1e-12);
    }
    CHECK_FALSE(power_ratio_bounds(1.0, 0.2, 0.1, 1, 4, 1.0).premise_holds);
  }

  TEST_CASE("norms decay below tau past the power bound") {
    for (const auto& [name, g] : testing::corpus()) {
      if (g.size() < 4 || g.size() > 10) continue;
      CAPTURE(name);
      const double l2 = lambda2_exact(g);
      const auto p = gap_params(g, 1.0, 0.1, l2);
      const auto k = static_cast<std::uint64_t>(std::floor(-2.0 * p.log_tau / l2)) + 1;
      CHECK(static_cast<double>(k) * std::log1p(-l2 / 2.0) <= p.log_tau);
      // Dense products cannot resolve norms below about 1e-16.
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto v = testing::random_image_vector(g, seed);
        CHECK(norm2(dense_power_apply(g, k, v)) < p.tau + 1e-15);
      }
    }
  }
}
